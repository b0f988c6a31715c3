#pragma once

#include <string>
#include <vector>

#include "qrmark/image.hpp"

namespace qrmark {

// Working size of the detection pipeline.
inline constexpr int kWorkingSize = 256;

// Staged preprocessing: upscale inputs smaller than the working size, crop
// the central 256x256 window, map intensities to [-1, 1].
ImageBuffer preprocess(const ImageBuffer& img);

// Single-pass equivalent of preprocess: composed affine index mapping plus
// scale-bias intensity, no intermediate buffers. Output is bit-identical to
// the staged path.
ImageBuffer preprocess_fused(const ImageBuffer& img);

enum class TransformOp {
    centercrop,
    resizeto,
    normalize_op,
    crop,
    resize,
    brightness,
    contrast,
    saturation,
    sharpness,
    blur,
    overlay_text,
    jpeg_approx,
};

struct TransformSpec {
    TransformOp op;
    double param = 1.0;

    static TransformSpec parse(const std::string& name, double param);
    std::string name() const;
};

// Evaluation-time attack transforms. crop keeps the centered fraction
// `param` of the area (the output is smaller); resize scales by `param` and
// back; the photometric ops scale their quantity about the relevant pivot.
ImageBuffer apply_attack(const ImageBuffer& img, const TransformSpec& spec, uint64_t rng_seed = 0);

// The robustness-table attack suite: crop 0.1, crop 0.5, resize 0.5, blur,
// brightness 2, contrast 2.
struct NamedAttack {
    std::string label;
    TransformSpec spec;
};
std::vector<NamedAttack> attack_suite();

} // namespace qrmark
