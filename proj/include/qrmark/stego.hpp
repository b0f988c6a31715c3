#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qrmark/image.hpp"
#include "qrmark/rs.hpp"
#include "qrmark/tiling.hpp"

namespace qrmark {

// Key material for the reference codec: pattern seed, payload width, and the
// embedding strength alpha.
struct WatermarkKey {
    uint64_t seed = 1;
    int n_bits = 60;
    double alpha = 0.04;
};

// Pre-threshold per-bit extractor scores.
struct SoftBits {
    std::vector<double> values;
};

// bit = 1 iff score > 0 (ties to 0).
BitVec harden(const SoftBits& soft);

// Embed/extract contract. The reference implementation below is a
// deterministic spread-spectrum codec; a learned extractor can be slotted in
// behind the same interface.
class WatermarkCodec {
public:
    virtual ~WatermarkCodec() = default;
    virtual int tile_size() const = 0;
    virtual int payload_bits() const = 0;
    // tile must be in normalized form with matching dimensions.
    virtual ImageBuffer embed(const ImageBuffer& tile, const BitVec& bits) const = 0;
    virtual SoftBits extract(const ImageBuffer& tile) const = 0;
};

// Spread-spectrum reference codec. Bit i maps to a +-1 pattern P_i derived
// from (seed, i, pixel); embedding adds alpha * sum_i (2 b_i - 1) P_i and
// clamps to [-1, 1]; extraction is the per-pattern normalized correlation.
// Patterns are built once per (key, tile size) and are safe for concurrent
// readers.
class SpreadSpectrumCodec : public WatermarkCodec {
public:
    SpreadSpectrumCodec(const WatermarkKey& key, int tile_size);

    int tile_size() const override { return tile_size_; }
    int payload_bits() const override { return key_.n_bits; }
    const WatermarkKey& key() const { return key_; }

    ImageBuffer embed(const ImageBuffer& tile, const BitVec& bits) const override;
    SoftBits extract(const ImageBuffer& tile) const override;

    // Unclamped residual sum_i (2 b_i - 1) P_i over the tile samples.
    std::vector<float> residual(const BitVec& bits) const;

    // Normalized inner product of two patterns, for orthogonality checks.
    double pattern_correlation(int i, int j) const;

private:
    size_t samples() const { return static_cast<size_t>(tile_size_) * tile_size_ * 3; }
    const int8_t* pattern(int i) const { return patterns_.data() + static_cast<size_t>(i) * samples(); }

    WatermarkKey key_;
    int tile_size_;
    std::vector<int8_t> patterns_; // n_bits contiguous +-1 planes
};

// Embeds the same payload into every complete grid cell of a normalized
// image, so any cell selected at detection time carries the watermark.
void embed_image_grid(ImageBuffer& normalized_img, const SpreadSpectrumCodec& codec,
                      const BitVec& bits);

// Convenience single-call forms matching the batch-free surface.
ImageBuffer embed(const ImageBuffer& tile, const BitVec& bits, const WatermarkKey& key);
SoftBits extract(const ImageBuffer& tile, const WatermarkKey& key);

} // namespace qrmark
