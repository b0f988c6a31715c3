#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrmark/rs.hpp"
#include "qrmark/sched.hpp"
#include "qrmark/stego.hpp"
#include "qrmark/tiling.hpp"
#include "qrmark/transforms.hpp"

namespace qrmark {

struct CacheConfig {
    bool enabled = true;
    size_t capacity = 4096;
    uint64_t stale_after = 1u << 20; // images since last access before eviction
};

struct DetectionConfig {
    CodeParams code;
    TileSpec tile;
    WatermarkKey key;
    BitVec key_message; // ground-truth information bits g
    int rs_workers = 32;
    double fpr_target = 1e-6;
    CacheConfig cache;

    // Fills key.n_bits from the code profile and validates the pieces fit.
    static DetectionConfig make(const CodeParams& code, const TileSpec& tile, uint64_t key_seed,
                                double alpha, BitVec key_message);
};

struct StageLatencies {
    int64_t preprocess_ns = 0;
    int64_t extract_ns = 0;
    int64_t correct_ns = 0;
};

struct DetectionRecord {
    size_t image_index = 0;
    BitVec raw_bits;                  // hardened extractor output m'
    std::optional<BitVec> corrected;  // RS-corrected information bits c_s
    int errors_corrected = 0;
    double bit_acc = 0.0;             // raw bits vs the key codeword
    bool verified = false;
    bool cache_hit = false;
    StageLatencies stage_ns;
    std::string error;                // per-image failure, batch never aborts
};

// Equality over the semantic fields; latencies and cache_hit are
// observability and depend on scheduling.
bool semantic_equal(const DetectionRecord& a, const DetectionRecord& b);

// Smallest tau with sum_{j >= tau} C(N, j) 2^-N <= fpr (exact integer tail
// for N <= 64, long-double log-gamma tail above). Returns N + 1 when even an
// exact match cannot meet the target.
int verify_threshold(int n_bits, double fpr_target);

// True iff the number of matching bits reaches the threshold for
// (a.size(), fpr_target).
bool verify(const BitVec& a, const BitVec& b, double fpr_target);

// Codebook from raw bitstrings to their corrected outputs (failures are
// memoized too). Every call advances the image counter; entries unused for
// longer than stale_after are dropped, and the capacity backstop evicts
// oldest-staleness first. Safe for concurrent use.
class CorrectionCache {
public:
    explicit CorrectionCache(const CacheConfig& cfg) : cfg_(cfg) {}

    // (decode outcome, cache_hit)
    std::pair<std::optional<DecodeResult>, bool> correct(const BitVec& raw, const CodeParams& params);

    size_t size() const;
    uint64_t hits() const { return hits_; }
    uint64_t lookups() const { return lookups_; }

private:
    struct Entry {
        std::optional<DecodeResult> result;
        uint64_t last_access = 0;
    };
    void evict_locked();

    CacheConfig cfg_;
    mutable std::mutex mu_;
    std::unordered_map<std::string, Entry> map_;
    uint64_t tick_ = 0;
    uint64_t hits_ = 0;
    uint64_t lookups_ = 0;
};

// Shared state for a detection run: codec patterns, thresholds, cache.
class DetectionContext {
public:
    explicit DetectionContext(const DetectionConfig& cfg);

    const DetectionConfig& config() const { return cfg_; }
    const SpreadSpectrumCodec& codec() const { return codec_; }
    const BitVec& key_codeword() const { return key_codeword_; }
    CorrectionCache& cache() { return cache_; }

    DetectionRecord detect_one(const ImageBuffer& img, uint64_t draw_index);

private:
    DetectionConfig cfg_;
    SpreadSpectrumCodec codec_;
    BitVec key_codeword_;
    int tau_message_;
    int tau_raw_;
    CorrectionCache cache_;
};

// Single-image convenience entry (fresh context per call).
DetectionRecord detect_one(const ImageBuffer& img, const DetectionConfig& cfg);

// Synthetic per-item stage delay, for scheduling experiments where stage
// costs stand in for device latencies. Realized as timed waits so worker
// overlap behaves like concurrent streams.
struct SyntheticStageLoad {
    int64_t preprocess_ns = 0;
    int64_t extract_ns = 0;
    int64_t correct_ns = 0;
};

// Wall-clock accounting of a batch run.
struct DeskReport {
    int64_t wall_ns = 0;
    std::array<int64_t, 3> stage_busy_ns{0, 0, 0};
    std::array<int, 3> stage_workers{1, 1, 1};
    size_t items = 0;
};

// Pipelined batch detection: preprocess -> tile+extract -> RS-correct,
// stages connected by bounded queues, RS correction on a worker pool. Output
// order matches input order and the records match a sequential run
// regardless of worker counts (cache and latency fields aside).
std::vector<DetectionRecord> detect_batch(std::span<const ImageBuffer> images,
                                          const DetectionConfig& cfg,
                                          const StreamPlan* plan = nullptr,
                                          const SyntheticStageLoad* load = nullptr,
                                          DeskReport* report = nullptr);

} // namespace qrmark
