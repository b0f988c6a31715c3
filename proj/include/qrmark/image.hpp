#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "qrmark/errors.hpp"

namespace qrmark {

// RGB raster. Byte form holds 8-bit samples; normalized form holds reals in
// [-1, 1] (tensor form). Exactly one of the two stores is populated.
enum class PixelForm : uint8_t { byte, normalized };

struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 3;
    PixelForm form = PixelForm::byte;
    std::vector<uint8_t> bytes;
    std::vector<float> values;

    static ImageBuffer make_byte(int w, int h);
    static ImageBuffer make_normalized(int w, int h);

    size_t sample_count() const { return static_cast<size_t>(width) * height * channels; }

    size_t index(int x, int y, int c) const {
        return (static_cast<size_t>(y) * width + x) * channels + c;
    }
    uint8_t at8(int x, int y, int c) const { return bytes[index(x, y, c)]; }
    uint8_t& at8(int x, int y, int c) { return bytes[index(x, y, c)]; }
    float atf(int x, int y, int c) const { return values[index(x, y, c)]; }
    float& atf(int x, int y, int c) { return values[index(x, y, c)]; }
};

// v / 127.5 - 1, the VQGAN-range mapping.
ImageBuffer normalize(const ImageBuffer& img);
// Inverse mapping with round-half-up quantization and clamp to [0, 255].
ImageBuffer denormalize(const ImageBuffer& img);

// Bilinear resampling with half-pixel centers; byte in, byte out,
// round-half-up quantization.
ImageBuffer resize_bilinear(const ImageBuffer& img, int out_w, int out_h);

// Centered side x side window (byte or normalized form).
ImageBuffer center_crop(const ImageBuffer& img, int side_w, int side_h);

// Binary PPM (P6), maxval 255, byte-exact round trip.
ImageBuffer read_ppm(const std::filesystem::path& path);
void write_ppm(const ImageBuffer& img, const std::filesystem::path& path);

// Deterministic synthetic test image: a smooth low-frequency color field over
// a vertical luminance gradient (brighter sky-like top), with fine texture
// concentrated in the upper rows. Mimics the inhomogeneity of natural photos
// at desk scale.
ImageBuffer synthetic_image(uint64_t seed, int w, int h);

// 10*log10(MAX^2 / MSE) over byte images; +infinity when identical.
double psnr_db(const ImageBuffer& a, const ImageBuffer& b);

} // namespace qrmark
