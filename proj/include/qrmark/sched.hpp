#pragma once

#include <span>
#include <string>
#include <vector>

#include "qrmark/image.hpp"

namespace qrmark {

// Warm-up measurements: per-stage baseline time t[k] at baseline batch b0,
// per-sample memory u[k], and an optional CPU preparation share of each
// stage's time (used by the interleaving simulation).
struct StageProfile {
    double b0 = 1.0;
    std::vector<double> time;
    std::vector<double> memory;
    std::vector<double> prep;
    std::vector<std::string> names;

    int stages() const { return static_cast<int>(time.size()); }
    double prep_of(int k) const { return k < static_cast<int>(prep.size()) ? prep[k] : 0.0; }
    void validate() const;
};

// Output of the stream allocation: streams and mini-batches per stage plus
// the predicted bottleneck step time.
struct StreamPlan {
    std::vector<int> streams;
    std::vector<int> minibatch;
    double bottleneck = 0.0;

    int total_streams() const;
};

// TIME(k, s, m) = t[k] * (m / b0) / s — linear in mini-batch, inverse in
// streams.
double stage_time(const StageProfile& profile, int k, int s_k, int m_k);

// sum_k s[k] * m[k] * u[k] <= m_cap
bool mem_ok(std::span<const int> s, std::span<const int> m, std::span<const double> u, double m_cap);

// Adaptive stream allocation: start from one stream per stage and the
// largest uniform mini-batch that fits memory, then greedily add the single
// stream with the largest bottleneck reduction while the gain exceeds
// epsilon, subject to the memory cap and the global stream budget P. Ends
// with one mini-batch leveling pass that doubles the mini-batch of stages
// running at less than half the bottleneck, up to m_unit = max(1, B / sum s).
StreamPlan allocate_streams(const StageProfile& profile, int global_batch, int stream_budget,
                            double m_cap, double epsilon, int stall_cap);

// Per-image work unit. `units` is the divisible quantum count used by
// sharding; latency and memory split proportionally.
struct Task {
    int id = 0;
    int tile_size = 0;
    double latency = 0.0;
    double memory = 0.0;
    int units = 1;
    int mb = 0; // uniform mini-batch assigned by the scheduler
};

struct StreamSchedule {
    std::vector<std::vector<Task>> streams;
    std::vector<double> loads;
    int m_unit = 1;

    double makespan() const;
    double total_latency() const;
};

// Tile-size oracle interface; the learned predictor lives behind this.
class TileSizePredictor {
public:
    virtual ~TileSizePredictor() = default;
    virtual int select_tile_size(const ImageBuffer& img) const = 0;
};

class ConstantTilePredictor : public TileSizePredictor {
public:
    explicit ConstantTilePredictor(int size) : size_(size) {}
    int select_tile_size(const ImageBuffer&) const override { return size_; }

private:
    int size_;
};

enum class PipelineMode { detect, embed };

// Warm-up statistics at a reference tile size; predictions scale with tile
// area.
struct WarmupStats {
    int reference_tile = 64;
    double detect_latency = 0.0;
    double detect_memory = 0.0;
    double embed_latency = 0.0;
    double embed_memory = 0.0;

    double latency_for(PipelineMode mode, int tile) const;
    double memory_for(PipelineMode mode, int tile) const;
};

std::vector<Task> build_tasks(std::span<const ImageBuffer> images, const TileSizePredictor& predictor,
                              const WarmupStats& stats, double b0, PipelineMode mode);

// LPT with balance slack lambda: place the longest pending task on the
// least-loaded stream when the balance and memory checks pass, otherwise
// shard off a b_min-unit piece, place it there, and return the remainder to
// the pool. Ties break to the lowest index everywhere.
StreamSchedule lpt_schedule(std::vector<Task> tasks, int stream_count, double lambda, double m_cap,
                            int b_min, int global_batch);

} // namespace qrmark
