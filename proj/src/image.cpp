#include "qrmark/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "qrmark/rng.hpp"

namespace qrmark {

ImageBuffer ImageBuffer::make_byte(int w, int h) {
    if (w <= 0 || h <= 0) throw InvalidInput("image dimensions must be positive");
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.form = PixelForm::byte;
    img.bytes.assign(static_cast<size_t>(w) * h * 3, 0);
    return img;
}

ImageBuffer ImageBuffer::make_normalized(int w, int h) {
    if (w <= 0 || h <= 0) throw InvalidInput("image dimensions must be positive");
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.form = PixelForm::normalized;
    img.values.assign(static_cast<size_t>(w) * h * 3, 0.0f);
    return img;
}

ImageBuffer normalize(const ImageBuffer& img) {
    if (img.form != PixelForm::byte) throw InvalidInput("normalize expects byte form");
    ImageBuffer out = ImageBuffer::make_normalized(img.width, img.height);
    for (size_t i = 0; i < img.bytes.size(); ++i)
        out.values[i] = static_cast<float>(img.bytes[i] / 127.5 - 1.0);
    return out;
}

namespace {

inline uint8_t quantize(double v) {
    double q = std::floor(v + 0.5);
    return static_cast<uint8_t>(std::clamp(q, 0.0, 255.0));
}

} // namespace

ImageBuffer denormalize(const ImageBuffer& img) {
    if (img.form != PixelForm::normalized) throw InvalidInput("denormalize expects normalized form");
    ImageBuffer out = ImageBuffer::make_byte(img.width, img.height);
    for (size_t i = 0; i < img.values.size(); ++i)
        out.bytes[i] = quantize((static_cast<double>(img.values[i]) + 1.0) * 127.5);
    return out;
}

ImageBuffer resize_bilinear(const ImageBuffer& img, int out_w, int out_h) {
    if (img.form != PixelForm::byte) throw InvalidInput("resize expects byte form");
    if (out_w <= 0 || out_h <= 0) throw InvalidInput("resize target must be positive");
    if (out_w == img.width && out_h == img.height) return img;

    ImageBuffer out = ImageBuffer::make_byte(out_w, out_h);
    const double sx = static_cast<double>(img.width) / out_w;
    const double sy = static_cast<double>(img.height) / out_h;
    for (int oy = 0; oy < out_h; ++oy) {
        double fy = (oy + 0.5) * sy - 0.5;
        double y0d = std::floor(fy);
        double wy = fy - y0d;
        int y0 = std::clamp(static_cast<int>(y0d), 0, img.height - 1);
        int y1 = std::clamp(static_cast<int>(y0d) + 1, 0, img.height - 1);
        for (int ox = 0; ox < out_w; ++ox) {
            double fx = (ox + 0.5) * sx - 0.5;
            double x0d = std::floor(fx);
            double wx = fx - x0d;
            int x0 = std::clamp(static_cast<int>(x0d), 0, img.width - 1);
            int x1 = std::clamp(static_cast<int>(x0d) + 1, 0, img.width - 1);
            for (int c = 0; c < 3; ++c) {
                double top = img.at8(x0, y0, c) * (1.0 - wx) + img.at8(x1, y0, c) * wx;
                double bot = img.at8(x0, y1, c) * (1.0 - wx) + img.at8(x1, y1, c) * wx;
                out.at8(ox, oy, c) = quantize(top * (1.0 - wy) + bot * wy);
            }
        }
    }
    return out;
}

ImageBuffer center_crop(const ImageBuffer& img, int side_w, int side_h) {
    if (side_w > img.width || side_h > img.height)
        throw InvalidInput("crop window larger than image");
    int x_off = (img.width - side_w) / 2;
    int y_off = (img.height - side_h) / 2;
    ImageBuffer out = img.form == PixelForm::byte ? ImageBuffer::make_byte(side_w, side_h)
                                                  : ImageBuffer::make_normalized(side_w, side_h);
    for (int y = 0; y < side_h; ++y) {
        for (int x = 0; x < side_w; ++x) {
            for (int c = 0; c < 3; ++c) {
                if (img.form == PixelForm::byte)
                    out.at8(x, y, c) = img.at8(x + x_off, y + y_off, c);
                else
                    out.atf(x, y, c) = img.atf(x + x_off, y + y_off, c);
            }
        }
    }
    return out;
}

namespace {

int read_ppm_token(std::istream& in) {
    // Skips whitespace and '#' comments per the PPM grammar.
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value;
    if (!(in >> value)) throw InvalidInput("malformed PPM header");
    return value;
}

} // namespace

ImageBuffer read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    char magic[2];
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '6')
        throw InvalidInput(path.string() + ": not a P6 PPM");
    int w = read_ppm_token(in);
    int h = read_ppm_token(in);
    int maxval = read_ppm_token(in);
    if (maxval != 255) throw InvalidInput(path.string() + ": only maxval 255 supported");
    in.get(); // single whitespace before raster
    ImageBuffer img = ImageBuffer::make_byte(w, h);
    in.read(reinterpret_cast<char*>(img.bytes.data()), static_cast<std::streamsize>(img.bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.bytes.size()))
        throw InvalidInput(path.string() + ": truncated raster data");
    return img;
}

void write_ppm(const ImageBuffer& img, const std::filesystem::path& path) {
    if (img.form != PixelForm::byte) throw InvalidInput("write_ppm expects byte form");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.bytes.data()),
              static_cast<std::streamsize>(img.bytes.size()));
}

ImageBuffer synthetic_image(uint64_t seed, int w, int h) {
    ImageBuffer img = ImageBuffer::make_byte(w, h);
    constexpr double kTau = 6.283185307179586;

    // Three low-frequency plane waves per channel.
    double amp[3][3], fx[3][3], fy[3][3], phase[3][3];
    CounterRng rng(seed, /*stream=*/0x514e);
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < 3; ++i) {
            amp[c][i] = 10.0 + 14.0 * rng.unit();
            fx[c][i] = 1.0 + std::floor(rng.unit() * 4.0);
            fy[c][i] = 1.0 + std::floor(rng.unit() * 4.0);
            phase[c][i] = kTau * rng.unit();
        }
    }

    for (int y = 0; y < h; ++y) {
        // Brighter toward the top, as in sky-dominated photos.
        double gradient = 118.0 + 90.0 * ((h - 1.0 - y) / std::max(1, h - 1) - 0.5);
        double texture_amp = 34.0 * std::max(0.0, 1.0 - 2.0 * y / std::max(1, h));
        for (int x = 0; x < w; ++x) {
            uint64_t noise_ctr = static_cast<uint64_t>(y) * w + x;
            for (int c = 0; c < 3; ++c) {
                double v = gradient;
                for (int i = 0; i < 3; ++i)
                    v += amp[c][i] * std::cos(kTau * (fx[c][i] * x / w + fy[c][i] * y / h) + phase[c][i]);
                v += texture_amp * (2.0 * rng_unit(seed, 0x7e30 + c, noise_ctr) - 1.0);
                img.at8(x, y, c) = quantize(v);
            }
        }
    }
    return img;
}

double psnr_db(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width != b.width || a.height != b.height || a.form != b.form)
        throw InvalidInput("psnr inputs differ in shape or form");
    if (a.form != PixelForm::byte) throw InvalidInput("psnr expects byte form");
    double sse = 0.0;
    for (size_t i = 0; i < a.bytes.size(); ++i) {
        double d = static_cast<double>(a.bytes[i]) - b.bytes[i];
        sse += d * d;
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    double mse = sse / static_cast<double>(a.bytes.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

} // namespace qrmark
