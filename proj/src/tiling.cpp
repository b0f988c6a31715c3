#include "qrmark/tiling.hpp"

#include "qrmark/rng.hpp"

namespace qrmark {

TileStrategy parse_tile_strategy(const std::string& name) {
    if (name == "random") return TileStrategy::random;
    if (name == "random_grid") return TileStrategy::random_grid;
    if (name == "fixed") return TileStrategy::fixed;
    throw InvalidInput("unknown tile strategy: " + name);
}

std::string tile_strategy_name(TileStrategy s) {
    switch (s) {
        case TileStrategy::random: return "random";
        case TileStrategy::random_grid: return "random_grid";
        case TileStrategy::fixed: return "fixed";
    }
    return "?";
}

TileRef select_tile(int width, int height, const TileSpec& spec, uint64_t draw_index) {
    if (spec.size <= 0 || spec.size > std::min(width, height))
        throw InvalidInput("tile size does not fit image");
    const int l = spec.size;
    switch (spec.strategy) {
        case TileStrategy::fixed:
            return {0, 0, l};
        case TileStrategy::random: {
            uint64_t nx = static_cast<uint64_t>(width - l) + 1;
            uint64_t ny = static_cast<uint64_t>(height - l) + 1;
            int x = static_cast<int>(rng_below(spec.seed, 2 * draw_index, 0, nx));
            int y = static_cast<int>(rng_below(spec.seed, 2 * draw_index + 1, 0, ny));
            return {x, y, l};
        }
        case TileStrategy::random_grid: {
            uint64_t cols = static_cast<uint64_t>(width / l);
            uint64_t rows = static_cast<uint64_t>(height / l);
            uint64_t cell = rng_below(spec.seed, draw_index, 0, cols * rows);
            int cx = static_cast<int>(cell % cols);
            int cy = static_cast<int>(cell / cols);
            return {cx * l, cy * l, l};
        }
    }
    throw InvalidInput("unhandled tile strategy");
}

TileRef select_tile(const ImageBuffer& img, const TileSpec& spec, uint64_t draw_index) {
    return select_tile(img.width, img.height, spec, draw_index);
}

std::vector<TileRef> grid_cells(int width, int height, int l) {
    if (l <= 0 || l > std::min(width, height)) throw InvalidInput("tile size does not fit image");
    std::vector<TileRef> cells;
    cells.reserve(static_cast<size_t>(width / l) * (height / l));
    for (int cy = 0; cy + l <= height; cy += l)
        for (int cx = 0; cx + l <= width; cx += l) cells.push_back({cx, cy, l});
    return cells;
}

ImageBuffer extract_tile(const ImageBuffer& img, const TileRef& tile) {
    if (tile.x < 0 || tile.y < 0 || tile.x + tile.size > img.width || tile.y + tile.size > img.height)
        throw InvalidInput("tile out of bounds");
    ImageBuffer out = img.form == PixelForm::byte
                          ? ImageBuffer::make_byte(tile.size, tile.size)
                          : ImageBuffer::make_normalized(tile.size, tile.size);
    for (int y = 0; y < tile.size; ++y)
        for (int x = 0; x < tile.size; ++x)
            for (int c = 0; c < 3; ++c) {
                if (img.form == PixelForm::byte)
                    out.at8(x, y, c) = img.at8(tile.x + x, tile.y + y, c);
                else
                    out.atf(x, y, c) = img.atf(tile.x + x, tile.y + y, c);
            }
    return out;
}

} // namespace qrmark
