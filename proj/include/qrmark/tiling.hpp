#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrmark/image.hpp"

namespace qrmark {

enum class TileStrategy { random, random_grid, fixed };

TileStrategy parse_tile_strategy(const std::string& name);
std::string tile_strategy_name(TileStrategy s);

struct TileSpec {
    int size = 64;
    TileStrategy strategy = TileStrategy::random_grid; // the default strategy
    uint64_t seed = 0;
};

// Axis-aligned l x l window into a parent image. For random_grid the origin
// is a multiple of l on both axes.
struct TileRef {
    int x = 0;
    int y = 0;
    int size = 0;

    bool operator==(const TileRef&) const = default;
};

// Selects one tile. Deterministic in (spec.seed, draw_index); draw_index
// distinguishes images within a batch.
//   random      — uniform over all in-bounds origins
//   random_grid — uniform over complete cells of the regular l x l partition
//   fixed       — the top-left corner
TileRef select_tile(int width, int height, const TileSpec& spec, uint64_t draw_index = 0);
TileRef select_tile(const ImageBuffer& img, const TileSpec& spec, uint64_t draw_index = 0);

// All complete l x l cells in row-major order; partial border cells excluded.
std::vector<TileRef> grid_cells(int width, int height, int l);

// Contiguous copy of the tile contents (either pixel form).
ImageBuffer extract_tile(const ImageBuffer& img, const TileRef& tile);

} // namespace qrmark
