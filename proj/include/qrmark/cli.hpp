#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qrmark/image.hpp"

namespace qrmark::cli {

struct IngestResult {
    std::vector<ImageBuffer> images;
    std::vector<std::string> names;  // lexicographic order, part of the contract
    std::vector<std::string> errors; // unreadable/corrupt entries, run continues
};

// Loads a single file or every .ppm in a directory (lexicographic order).
IngestResult ingest(const std::filesystem::path& path);

// The payload a key seed implies when no explicit message is given; embedder
// and detector agree on it by construction.
std::vector<uint8_t> default_message(uint64_t key_seed, int n_bits);

// Full command-line entry point (argv without the program name).
// Exit codes: 0 success, 1 per-item failures, 2 configuration errors.
int run(const std::vector<std::string>& args);

} // namespace qrmark::cli
