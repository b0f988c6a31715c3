#include "qrmark/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qrmark {

namespace {

inline uint8_t quantize(double v) {
    double q = std::floor(v + 0.5);
    return static_cast<uint8_t>(std::clamp(q, 0.0, 255.0));
}

// Geometry of the preprocess chain for a given input size: optional upscale
// so the short side reaches the working size, then a centered window.
struct PreprocessGeometry {
    bool upscale = false;
    int scaled_w = 0, scaled_h = 0;
    int x_off = 0, y_off = 0;
};

PreprocessGeometry preprocess_geometry(int w, int h) {
    PreprocessGeometry g;
    if (std::min(w, h) < kWorkingSize) {
        double s = static_cast<double>(kWorkingSize) / std::min(w, h);
        g.upscale = true;
        g.scaled_w = std::max<int>(kWorkingSize, static_cast<int>(std::lround(w * s)));
        g.scaled_h = std::max<int>(kWorkingSize, static_cast<int>(std::lround(h * s)));
    } else {
        g.scaled_w = w;
        g.scaled_h = h;
    }
    g.x_off = (g.scaled_w - kWorkingSize) / 2;
    g.y_off = (g.scaled_h - kWorkingSize) / 2;
    return g;
}

} // namespace

ImageBuffer preprocess(const ImageBuffer& img) {
    if (img.form != PixelForm::byte) throw InvalidInput("preprocess expects byte form");
    PreprocessGeometry g = preprocess_geometry(img.width, img.height);
    ImageBuffer staged = g.upscale ? resize_bilinear(img, g.scaled_w, g.scaled_h) : img;
    return normalize(center_crop(staged, kWorkingSize, kWorkingSize));
}

ImageBuffer preprocess_fused(const ImageBuffer& img) {
    if (img.form != PixelForm::byte) throw InvalidInput("preprocess expects byte form");
    PreprocessGeometry g = preprocess_geometry(img.width, img.height);
    ImageBuffer out = ImageBuffer::make_normalized(kWorkingSize, kWorkingSize);

    const double sx = static_cast<double>(img.width) / g.scaled_w;
    const double sy = static_cast<double>(img.height) / g.scaled_h;
    for (int oy = 0; oy < kWorkingSize; ++oy) {
        int ry = oy + g.y_off; // row in the (virtual) resized image
        double fy = (ry + 0.5) * sy - 0.5;
        double y0d = std::floor(fy);
        double wy = fy - y0d;
        int y0 = std::clamp(static_cast<int>(y0d), 0, img.height - 1);
        int y1 = std::clamp(static_cast<int>(y0d) + 1, 0, img.height - 1);
        for (int ox = 0; ox < kWorkingSize; ++ox) {
            int rx = ox + g.x_off;
            double fx = (rx + 0.5) * sx - 0.5;
            double x0d = std::floor(fx);
            double wx = fx - x0d;
            int x0 = std::clamp(static_cast<int>(x0d), 0, img.width - 1);
            int x1 = std::clamp(static_cast<int>(x0d) + 1, 0, img.width - 1);
            for (int c = 0; c < 3; ++c) {
                uint8_t sample;
                if (g.upscale) {
                    double top = img.at8(x0, y0, c) * (1.0 - wx) + img.at8(x1, y0, c) * wx;
                    double bot = img.at8(x0, y1, c) * (1.0 - wx) + img.at8(x1, y1, c) * wx;
                    sample = quantize(top * (1.0 - wy) + bot * wy);
                } else {
                    sample = img.at8(rx, ry, c);
                }
                out.atf(ox, oy, c) = static_cast<float>(sample / 127.5 - 1.0);
            }
        }
    }
    return out;
}

TransformSpec TransformSpec::parse(const std::string& name, double param) {
    static const std::array<std::pair<const char*, TransformOp>, 12> table = {{
        {"centercrop", TransformOp::centercrop},
        {"resizeto", TransformOp::resizeto},
        {"normalize", TransformOp::normalize_op},
        {"crop", TransformOp::crop},
        {"resize", TransformOp::resize},
        {"brightness", TransformOp::brightness},
        {"contrast", TransformOp::contrast},
        {"saturation", TransformOp::saturation},
        {"sharpness", TransformOp::sharpness},
        {"blur", TransformOp::blur},
        {"overlay_text", TransformOp::overlay_text},
        {"jpeg_approx", TransformOp::jpeg_approx},
    }};
    for (const auto& [n, op] : table)
        if (name == n) return {op, param};
    throw InvalidInput("unknown transform op: " + name);
}

std::string TransformSpec::name() const {
    switch (op) {
        case TransformOp::centercrop: return "centercrop";
        case TransformOp::resizeto: return "resizeto";
        case TransformOp::normalize_op: return "normalize";
        case TransformOp::crop: return "crop";
        case TransformOp::resize: return "resize";
        case TransformOp::brightness: return "brightness";
        case TransformOp::contrast: return "contrast";
        case TransformOp::saturation: return "saturation";
        case TransformOp::sharpness: return "sharpness";
        case TransformOp::blur: return "blur";
        case TransformOp::overlay_text: return "overlay_text";
        case TransformOp::jpeg_approx: return "jpeg_approx";
    }
    return "?";
}

namespace {

double mean_luma(const ImageBuffer& img) {
    double acc = 0.0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            acc += 0.299 * img.at8(x, y, 0) + 0.587 * img.at8(x, y, 1) + 0.114 * img.at8(x, y, 2);
    return acc / (static_cast<double>(img.width) * img.height);
}

// x * v + (1 - x) * pivot; exact identity at x = 1.
inline double lever(double x, double v, double pivot) {
    return x * v + (1.0 - x) * pivot;
}

ImageBuffer gaussian3x3(const ImageBuffer& img) {
    // sigma = 1: weights exp(-d^2/2) over the 3x3 neighborhood.
    static const double kC = 1.0, kE = std::exp(-0.5), kD = std::exp(-1.0);
    static const double kSum = kC + 4.0 * kE + 4.0 * kD;
    ImageBuffer out = ImageBuffer::make_byte(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int dy = -1; dy <= 1; ++dy) {
                    int sy = std::clamp(y + dy, 0, img.height - 1);
                    for (int dx = -1; dx <= 1; ++dx) {
                        int sx = std::clamp(x + dx, 0, img.width - 1);
                        double wgt = (dx == 0 && dy == 0) ? kC : (dx != 0 && dy != 0) ? kD : kE;
                        acc += wgt * img.at8(sx, sy, c);
                    }
                }
                out.at8(x, y, c) = quantize(acc / kSum);
            }
        }
    }
    return out;
}

// 5x7 glyphs for the fixed overlay stamp.
struct Glyph {
    char ch;
    std::array<uint8_t, 7> rows; // 5 bits per row, msb = leftmost
};

constexpr std::array<Glyph, 6> kFont = {{
    {'Q', {0b01110, 0b10001, 0b10001, 0b10001, 0b10101, 0b10010, 0b01101}},
    {'R', {0b11110, 0b10001, 0b10001, 0b11110, 0b10100, 0b10010, 0b10001}},
    {'M', {0b10001, 0b11011, 0b10101, 0b10101, 0b10001, 0b10001, 0b10001}},
    {'A', {0b01110, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001}},
    {'K', {0b10001, 0b10010, 0b10100, 0b11000, 0b10100, 0b10010, 0b10001}},
    {' ', {0, 0, 0, 0, 0, 0, 0}},
}};

ImageBuffer overlay_text_stamp(const ImageBuffer& img) {
    static const char* kText = "QRMARK";
    constexpr int kScale = 3;
    constexpr int kOriginX = 8, kOriginY = 8;
    ImageBuffer out = img;
    int cursor = kOriginX;
    for (const char* p = kText; *p; ++p) {
        const Glyph* glyph = nullptr;
        for (const auto& g : kFont)
            if (g.ch == *p) glyph = &g;
        if (!glyph) continue;
        for (int gy = 0; gy < 7; ++gy) {
            for (int gx = 0; gx < 5; ++gx) {
                if (!((glyph->rows[gy] >> (4 - gx)) & 1)) continue;
                for (int sy = 0; sy < kScale; ++sy) {
                    for (int sx = 0; sx < kScale; ++sx) {
                        int px = cursor + gx * kScale + sx;
                        int py = kOriginY + gy * kScale + sy;
                        if (px < 0 || py < 0 || px >= out.width || py >= out.height) continue;
                        out.at8(px, py, 0) = 255;
                        out.at8(px, py, 1) = 255;
                        out.at8(px, py, 2) = 255;
                    }
                }
            }
        }
        cursor += 6 * kScale;
    }
    return out;
}

// Standard JPEG luminance quantization table, applied per channel.
constexpr std::array<int, 64> kJpegQuant = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99,
};

void dct8(const double in[8], double out[8], bool inverse) {
    constexpr double kPi = 3.14159265358979323846;
    if (!inverse) {
        for (int u = 0; u < 8; ++u) {
            double cu = (u == 0) ? std::sqrt(0.125) : 0.5;
            double acc = 0.0;
            for (int i = 0; i < 8; ++i) acc += in[i] * std::cos((2 * i + 1) * u * kPi / 16.0);
            out[u] = cu * acc;
        }
    } else {
        for (int i = 0; i < 8; ++i) {
            double acc = 0.0;
            for (int u = 0; u < 8; ++u) {
                double cu = (u == 0) ? std::sqrt(0.125) : 0.5;
                acc += cu * in[u] * std::cos((2 * i + 1) * u * kPi / 16.0);
            }
            out[i] = acc;
        }
    }
}

ImageBuffer jpeg_approx_attack(const ImageBuffer& img, double quality) {
    if (quality <= 0.0 || quality > 100.0) throw InvalidInput("jpeg_approx quality must be in (0, 100]");
    double scale = quality < 50.0 ? 5000.0 / quality : 200.0 - 2.0 * quality;
    std::array<double, 64> quant;
    for (int i = 0; i < 64; ++i)
        quant[i] = std::clamp(std::floor((kJpegQuant[i] * scale + 50.0) / 100.0), 1.0, 255.0);

    ImageBuffer out = img;
    for (int c = 0; c < 3; ++c) {
        for (int by = 0; by < img.height; by += 8) {
            for (int bx = 0; bx < img.width; bx += 8) {
                double block[8][8], tmp[8][8];
                for (int y = 0; y < 8; ++y)
                    for (int x = 0; x < 8; ++x) {
                        int sx = std::min(bx + x, img.width - 1);
                        int sy = std::min(by + y, img.height - 1);
                        block[y][x] = img.at8(sx, sy, c) - 128.0;
                    }
                // Separable forward DCT, quantize, inverse.
                for (int y = 0; y < 8; ++y) dct8(block[y], tmp[y], false);
                for (int x = 0; x < 8; ++x) {
                    double col[8], res[8];
                    for (int y = 0; y < 8; ++y) col[y] = tmp[y][x];
                    dct8(col, res, false);
                    for (int y = 0; y < 8; ++y) {
                        double q = quant[y * 8 + x];
                        tmp[y][x] = std::round(res[y] / q) * q;
                    }
                }
                for (int x = 0; x < 8; ++x) {
                    double col[8], res[8];
                    for (int y = 0; y < 8; ++y) col[y] = tmp[y][x];
                    dct8(col, res, true);
                    for (int y = 0; y < 8; ++y) tmp[y][x] = res[y];
                }
                for (int y = 0; y < 8; ++y) {
                    double row[8];
                    dct8(tmp[y], row, true);
                    for (int x = 0; x < 8; ++x) {
                        if (bx + x >= img.width || by + y >= img.height) continue;
                        out.at8(bx + x, by + y, c) = quantize(row[x] + 128.0);
                    }
                }
            }
        }
    }
    return out;
}

} // namespace

ImageBuffer apply_attack(const ImageBuffer& img, const TransformSpec& spec, uint64_t) {
    if (img.form != PixelForm::byte) throw InvalidInput("attacks expect byte form");
    switch (spec.op) {
        case TransformOp::centercrop: {
            int side = static_cast<int>(spec.param);
            if (side <= 0) throw InvalidInput("centercrop size must be positive");
            return center_crop(img, std::min(side, img.width), std::min(side, img.height));
        }
        case TransformOp::resizeto: {
            int side = static_cast<int>(spec.param);
            if (side <= 0) throw InvalidInput("resizeto size must be positive");
            return resize_bilinear(img, side, side);
        }
        case TransformOp::normalize_op:
            return normalize(img);
        case TransformOp::crop: {
            if (spec.param <= 0.0 || spec.param > 1.0) throw InvalidInput("crop fraction must be in (0, 1]");
            double side_factor = std::sqrt(spec.param);
            int cw = std::max(1, static_cast<int>(std::lround(img.width * side_factor)));
            int ch = std::max(1, static_cast<int>(std::lround(img.height * side_factor)));
            return center_crop(img, cw, ch);
        }
        case TransformOp::resize: {
            if (spec.param <= 0.0 || spec.param >= 1.0) {
                if (spec.param == 1.0) return img;
                throw InvalidInput("resize factor must be in (0, 1)");
            }
            int dw = std::max(1, static_cast<int>(std::lround(img.width * spec.param)));
            int dh = std::max(1, static_cast<int>(std::lround(img.height * spec.param)));
            return resize_bilinear(resize_bilinear(img, dw, dh), img.width, img.height);
        }
        case TransformOp::brightness: {
            if (spec.param < 0.0) throw InvalidInput("brightness factor must be nonnegative");
            if (spec.param == 1.0) return img;
            ImageBuffer out = img;
            for (auto& v : out.bytes) v = quantize(v * spec.param);
            return out;
        }
        case TransformOp::contrast: {
            if (spec.param < 0.0) throw InvalidInput("contrast factor must be nonnegative");
            double pivot = mean_luma(img);
            ImageBuffer out = img;
            for (auto& v : out.bytes) v = quantize(lever(spec.param, v, pivot));
            return out;
        }
        case TransformOp::saturation: {
            if (spec.param < 0.0) throw InvalidInput("saturation factor must be nonnegative");
            ImageBuffer out = img;
            for (int y = 0; y < img.height; ++y)
                for (int x = 0; x < img.width; ++x) {
                    double luma = 0.299 * img.at8(x, y, 0) + 0.587 * img.at8(x, y, 1) +
                                  0.114 * img.at8(x, y, 2);
                    for (int c = 0; c < 3; ++c)
                        out.at8(x, y, c) = quantize(lever(spec.param, img.at8(x, y, c), luma));
                }
            return out;
        }
        case TransformOp::sharpness: {
            if (spec.param < 0.0) throw InvalidInput("sharpness factor must be nonnegative");
            ImageBuffer smooth = gaussian3x3(img);
            ImageBuffer out = img;
            for (size_t i = 0; i < out.bytes.size(); ++i)
                out.bytes[i] = quantize(lever(spec.param, img.bytes[i], smooth.bytes[i]));
            return out;
        }
        case TransformOp::blur:
            return gaussian3x3(img);
        case TransformOp::overlay_text:
            return overlay_text_stamp(img);
        case TransformOp::jpeg_approx:
            return jpeg_approx_attack(img, spec.param);
    }
    throw InvalidInput("unhandled transform op");
}

std::vector<NamedAttack> attack_suite() {
    return {
        {"C-0.1", {TransformOp::crop, 0.1}},
        {"C-0.5", {TransformOp::crop, 0.5}},
        {"R-0.5", {TransformOp::resize, 0.5}},
        {"BL", {TransformOp::blur, 1.0}},
        {"BR-2", {TransformOp::brightness, 2.0}},
        {"CON-2", {TransformOp::contrast, 2.0}},
    };
}

} // namespace qrmark
