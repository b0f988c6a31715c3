#include "qrmark/stego.hpp"

#include <algorithm>
#include <cmath>

#include "qrmark/rng.hpp"

namespace qrmark {

BitVec harden(const SoftBits& soft) {
    BitVec bits(soft.values.size());
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = soft.values[i] > 0.0 ? 1 : 0;
    return bits;
}

SpreadSpectrumCodec::SpreadSpectrumCodec(const WatermarkKey& key, int tile_size)
    : key_(key), tile_size_(tile_size) {
    if (key.n_bits <= 0) throw InvalidInput("payload width must be positive");
    if (key.alpha < 0.0) throw InvalidInput("alpha must be nonnegative");
    if (tile_size <= 0) throw InvalidInput("tile size must be positive");
    patterns_.resize(static_cast<size_t>(key.n_bits) * samples());
    for (int i = 0; i < key.n_bits; ++i) {
        int8_t* p = patterns_.data() + static_cast<size_t>(i) * samples();
        for (size_t px = 0; px < samples(); ++px)
            p[px] = (rng_word(key.seed, static_cast<uint64_t>(i), px) & 1) ? 1 : -1;
    }
}

std::vector<float> SpreadSpectrumCodec::residual(const BitVec& bits) const {
    if (static_cast<int>(bits.size()) != key_.n_bits) throw InvalidInput("payload bit-length mismatch");
    std::vector<float> delta(samples(), 0.0f);
    for (int i = 0; i < key_.n_bits; ++i) {
        const int8_t* p = pattern(i);
        float sign = bits[i] ? 1.0f : -1.0f;
        for (size_t px = 0; px < delta.size(); ++px) delta[px] += sign * p[px];
    }
    return delta;
}

ImageBuffer SpreadSpectrumCodec::embed(const ImageBuffer& tile, const BitVec& bits) const {
    if (tile.form != PixelForm::normalized) throw InvalidInput("embed expects normalized form");
    if (tile.width != tile_size_ || tile.height != tile_size_)
        throw InvalidInput("tile dimensions do not match codec");

    std::vector<float> delta = residual(bits);
    ImageBuffer out = tile;
    const float alpha = static_cast<float>(key_.alpha);
    for (size_t px = 0; px < delta.size(); ++px)
        out.values[px] = std::clamp(tile.values[px] + alpha * delta[px], -1.0f, 1.0f);
    return out;
}

SoftBits SpreadSpectrumCodec::extract(const ImageBuffer& tile) const {
    if (tile.form != PixelForm::normalized) throw InvalidInput("extract expects normalized form");
    if (tile.width != tile_size_ || tile.height != tile_size_)
        throw InvalidInput("tile dimensions do not match codec");
    SoftBits soft;
    soft.values.resize(key_.n_bits);
    const double inv_n = 1.0 / static_cast<double>(samples());
    for (int i = 0; i < key_.n_bits; ++i) {
        const int8_t* p = pattern(i);
        double acc = 0.0;
        for (size_t px = 0; px < samples(); ++px) acc += static_cast<double>(tile.values[px]) * p[px];
        soft.values[i] = acc * inv_n;
    }
    return soft;
}

double SpreadSpectrumCodec::pattern_correlation(int i, int j) const {
    const int8_t* a = pattern(i);
    const int8_t* b = pattern(j);
    double acc = 0.0;
    for (size_t px = 0; px < samples(); ++px) acc += static_cast<double>(a[px]) * b[px];
    return acc / static_cast<double>(samples());
}

void embed_image_grid(ImageBuffer& img, const SpreadSpectrumCodec& codec, const BitVec& bits) {
    if (img.form != PixelForm::normalized) throw InvalidInput("embed expects normalized form");
    const int l = codec.tile_size();
    std::vector<float> delta = codec.residual(bits);
    const float alpha = static_cast<float>(codec.key().alpha);

    for (const TileRef& cell : grid_cells(img.width, img.height, l)) {
        size_t px = 0;
        for (int y = 0; y < l; ++y)
            for (int x = 0; x < l; ++x)
                for (int c = 0; c < 3; ++c, ++px) {
                    float& v = img.atf(cell.x + x, cell.y + y, c);
                    v = std::clamp(v + alpha * delta[px], -1.0f, 1.0f);
                }
    }
}

ImageBuffer embed(const ImageBuffer& tile, const BitVec& bits, const WatermarkKey& key) {
    return SpreadSpectrumCodec(key, tile.width).embed(tile, bits);
}

SoftBits extract(const ImageBuffer& tile, const WatermarkKey& key) {
    return SpreadSpectrumCodec(key, tile.width).extract(tile);
}

} // namespace qrmark
