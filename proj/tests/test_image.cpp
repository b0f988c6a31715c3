#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qrmark/rng.hpp"
#include "qrmark/transforms.hpp"

using namespace qrmark;
namespace fs = std::filesystem;

namespace {

ImageBuffer noise_image(uint64_t seed, int w, int h) {
    ImageBuffer img = ImageBuffer::make_byte(w, h);
    for (size_t i = 0; i < img.bytes.size(); ++i)
        img.bytes[i] = static_cast<uint8_t>(rng_word(seed, 0, i) & 0xff);
    return img;
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "qrmark-image-tests";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("ppm round trip is byte exact") {
    ImageBuffer img = noise_image(1, 37, 23);
    fs::path file = temp_dir() / "roundtrip.ppm";
    write_ppm(img, file);
    ImageBuffer back = read_ppm(file);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.bytes == img.bytes);
}

TEST_CASE("ppm rejects malformed input") {
    fs::path bad = temp_dir() / "bad.ppm";
    {
        std::ofstream out(bad, std::ios::binary);
        out << "P5\n2 2\n255\n";
    }
    CHECK_THROWS_AS(read_ppm(bad), InvalidInput);
    {
        std::ofstream out(bad, std::ios::binary);
        out << "P6\n4 4\n255\n";
        out << "xx"; // truncated raster
    }
    CHECK_THROWS_AS(read_ppm(bad), InvalidInput);
    CHECK_THROWS_AS(read_ppm(temp_dir() / "missing.ppm"), InvalidInput);
}

TEST_CASE("normalize maps 128 to about 0.0039") {
    ImageBuffer gray = ImageBuffer::make_byte(4, 4);
    std::fill(gray.bytes.begin(), gray.bytes.end(), 128);
    ImageBuffer norm = normalize(gray);
    for (float v : norm.values) CHECK(v == doctest::Approx(128.0 / 127.5 - 1.0).epsilon(1e-6));
    ImageBuffer back = denormalize(norm);
    CHECK(back.bytes == gray.bytes);
}

TEST_CASE("psnr closed forms") {
    ImageBuffer a = noise_image(2, 16, 16);
    CHECK(psnr_db(a, a) == std::numeric_limits<double>::infinity());

    auto offset_by = [&](int delta) {
        ImageBuffer b = a;
        for (auto& v : b.bytes) v = static_cast<uint8_t>(std::clamp(v + delta, 0, 255));
        return b;
    };
    // Keep samples away from the clamp boundary.
    for (auto& v : a.bytes) v = static_cast<uint8_t>(32 + (v % 128));

    ImageBuffer off1 = offset_by(1);
    ImageBuffer off8 = offset_by(8);
    CHECK(psnr_db(a, off1) == doctest::Approx(48.1308).epsilon(1e-4));
    CHECK(psnr_db(a, off8) == doctest::Approx(30.0670).epsilon(1e-4));
    CHECK(psnr_db(off1, a) == psnr_db(a, off1));
    CHECK(psnr_db(a, off1) > psnr_db(a, off8));

    CHECK_THROWS_AS(psnr_db(a, ImageBuffer::make_byte(4, 4)), InvalidInput);
}

TEST_CASE("preprocess geometry") {
    SUBCASE("512x512 keeps the central 256 window") {
        ImageBuffer big = noise_image(3, 512, 512);
        ImageBuffer out = preprocess(big);
        REQUIRE(out.width == 256);
        REQUIRE(out.height == 256);
        CHECK(out.form == PixelForm::normalized);
        // Spot-check the mapping back to source pixels (offset 128).
        for (int probe = 0; probe < 64; ++probe) {
            int x = probe * 4 + 1, y = probe * 3 + 2;
            float expected = static_cast<float>(big.at8(x + 128, y + 128, 1) / 127.5 - 1.0);
            CHECK(out.atf(x, y, 1) == expected);
        }
    }

    SUBCASE("256x256 passes through up to normalization") {
        ImageBuffer img = noise_image(4, 256, 256);
        ImageBuffer out = preprocess(img);
        for (int probe = 0; probe < 256; ++probe) {
            int x = probe, y = (probe * 7) % 256;
            CHECK(out.atf(x, y, 0) == static_cast<float>(img.at8(x, y, 0) / 127.5 - 1.0));
        }
    }

    SUBCASE("small images are upscaled, never errored") {
        for (auto [w, h] : {std::pair{1, 1}, {3, 200}, {100, 300}, {255, 255}}) {
            ImageBuffer out = preprocess(noise_image(5, w, h));
            CHECK(out.width == 256);
            CHECK(out.height == 256);
        }
    }

    SUBCASE("values stay in [-1, 1]") {
        ImageBuffer out = preprocess(noise_image(6, 123, 321));
        for (float v : out.values) {
            CHECK(v >= -1.0f);
            CHECK(v <= 1.0f);
        }
    }
}

TEST_CASE("fused preprocessing is bit-identical to the staged path") {
    CounterRng rng(31, 0);
    SUBCASE("degenerate 1x1") {
        ImageBuffer tiny = noise_image(7, 1, 1);
        CHECK(preprocess_fused(tiny).values == preprocess(tiny).values);
    }
    SUBCASE("random shapes") {
        for (int trial = 0; trial < 60; ++trial) {
            int w = 1 + static_cast<int>(rng.below(480));
            int h = 1 + static_cast<int>(rng.below(480));
            ImageBuffer img = noise_image(100 + trial, w, h);
            ImageBuffer staged = preprocess(img);
            ImageBuffer fused = preprocess_fused(img);
            REQUIRE(staged.values.size() == fused.values.size());
            CHECK(staged.values == fused.values);
        }
    }
}

TEST_CASE("identity attack parameters are no-ops") {
    ImageBuffer img = noise_image(8, 64, 48);
    for (TransformOp op : {TransformOp::brightness, TransformOp::contrast, TransformOp::saturation,
                           TransformOp::sharpness, TransformOp::resize}) {
        ImageBuffer out = apply_attack(img, {op, 1.0});
        CHECK(out.bytes == img.bytes);
    }
}

TEST_CASE("crop keeps the centered area fraction") {
    ImageBuffer img = noise_image(9, 256, 256);
    ImageBuffer out = apply_attack(img, {TransformOp::crop, 0.25});
    REQUIRE(out.width == 128);
    REQUIRE(out.height == 128);
    for (int probe = 0; probe < 32; ++probe)
        CHECK(out.at8(probe, probe * 2, 2) == img.at8(probe + 64, probe * 2 + 64, 2));
}

TEST_CASE("attack parameter validation") {
    ImageBuffer img = noise_image(10, 32, 32);
    CHECK_THROWS_AS(apply_attack(img, {TransformOp::crop, 1.5}), InvalidInput);
    CHECK_THROWS_AS(apply_attack(img, {TransformOp::crop, 0.0}), InvalidInput);
    CHECK_THROWS_AS(apply_attack(img, {TransformOp::resize, 1.4}), InvalidInput);
    CHECK_THROWS_AS(apply_attack(img, {TransformOp::brightness, -1.0}), InvalidInput);
    CHECK_THROWS_AS(apply_attack(img, {TransformOp::jpeg_approx, 0.0}), InvalidInput);
    CHECK_THROWS_AS(TransformSpec::parse("warp", 1.0), InvalidInput);
}

TEST_CASE("attack suite matches the robustness table columns") {
    auto suite = attack_suite();
    REQUIRE(suite.size() == 6);
    CHECK(suite[0].label == "C-0.1");
    CHECK(suite[1].label == "C-0.5");
    CHECK(suite[2].label == "R-0.5");
    CHECK(suite[3].label == "BL");
    CHECK(suite[4].label == "BR-2");
    CHECK(suite[5].label == "CON-2");
    CHECK(suite[2].spec.op == TransformOp::resize);
    CHECK(suite[4].spec.param == 2.0);
}

TEST_CASE("photometric attacks behave directionally") {
    ImageBuffer img = noise_image(11, 64, 64);
    for (auto& v : img.bytes) v = static_cast<uint8_t>(40 + v % 100);

    ImageBuffer brighter = apply_attack(img, {TransformOp::brightness, 1.5});
    double sum_in = 0, sum_out = 0;
    for (size_t i = 0; i < img.bytes.size(); ++i) {
        sum_in += img.bytes[i];
        sum_out += brighter.bytes[i];
    }
    CHECK(sum_out > sum_in * 1.4);

    ImageBuffer blurred = apply_attack(img, {TransformOp::blur, 1.0});
    CHECK(psnr_db(img, blurred) < 40.0);
    CHECK(blurred.bytes != img.bytes);

    ImageBuffer stamped = apply_attack(img, {TransformOp::overlay_text, 1.0});
    CHECK(stamped.bytes != img.bytes);
    CHECK(stamped.at8(9, 9, 0) == 255); // glyph block origin

    ImageBuffer jpeg = apply_attack(img, {TransformOp::jpeg_approx, 90});
    CHECK(psnr_db(img, jpeg) > 25.0);
}

TEST_CASE("synthetic images are deterministic and shaped") {
    ImageBuffer a = synthetic_image(42, 256, 256);
    ImageBuffer b = synthetic_image(42, 256, 256);
    ImageBuffer c = synthetic_image(43, 256, 256);
    CHECK(a.bytes == b.bytes);
    CHECK(a.bytes != c.bytes);

    // Top rows are brighter than bottom rows on average.
    double top = 0, bottom = 0;
    for (int x = 0; x < 256; ++x)
        for (int ch = 0; ch < 3; ++ch) {
            top += a.at8(x, 8, ch);
            bottom += a.at8(x, 248, ch);
        }
    CHECK(top > bottom);
}
