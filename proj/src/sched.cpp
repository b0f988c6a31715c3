#include "qrmark/sched.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "qrmark/errors.hpp"

namespace qrmark {

void StageProfile::validate() const {
    if (time.empty()) throw InvalidInput("profile has no stages");
    if (memory.size() != time.size()) throw InvalidInput("profile time/memory length mismatch");
    if (b0 < 1.0) throw InvalidInput("baseline batch must be >= 1");
    for (double t : time)
        if (t <= 0.0) throw InvalidInput("stage times must be positive");
    for (double u : memory)
        if (u < 0.0) throw InvalidInput("per-sample memory must be nonnegative");
}

int StreamPlan::total_streams() const {
    return std::accumulate(streams.begin(), streams.end(), 0);
}

double stage_time(const StageProfile& profile, int k, int s_k, int m_k) {
    if (s_k < 1) throw InvalidInput("stream count must be >= 1");
    return profile.time[k] * (static_cast<double>(m_k) / profile.b0) / static_cast<double>(s_k);
}

bool mem_ok(std::span<const int> s, std::span<const int> m, std::span<const double> u, double m_cap) {
    if (s.size() != m.size() || s.size() != u.size()) throw InvalidInput("mem_ok length mismatch");
    double total = 0.0;
    for (size_t k = 0; k < s.size(); ++k)
        total += static_cast<double>(s[k]) * static_cast<double>(m[k]) * u[k];
    return total <= m_cap;
}

namespace {

double bottleneck_of(const StageProfile& profile, const std::vector<int>& s, const std::vector<int>& m) {
    double worst = 0.0;
    for (int k = 0; k < profile.stages(); ++k) worst = std::max(worst, stage_time(profile, k, s[k], m[k]));
    return worst;
}

} // namespace

StreamPlan allocate_streams(const StageProfile& profile, int global_batch, int stream_budget,
                            double m_cap, double epsilon, int stall_cap) {
    profile.validate();
    const int stage_count = profile.stages();
    if (stream_budget < stage_count) throw InvalidInput("stream budget below stage count");
    if (global_batch < 1) throw InvalidInput("global batch must be >= 1");

    // Step 1: one stream per stage, largest uniform mini-batch under the cap
    // (bounded by the global batch when memory is unconstrained).
    std::vector<int> streams(stage_count, 1);
    double per_unit = std::accumulate(profile.memory.begin(), profile.memory.end(), 0.0);
    int uniform = global_batch;
    if (per_unit > 0.0) uniform = std::min<int>(uniform, static_cast<int>(std::floor(m_cap / per_unit)));
    if (uniform < 1) throw InfeasibleConfig("memory cap cannot fit one sample per stage");
    std::vector<int> minibatch(stage_count, uniform);

    double bottleneck = bottleneck_of(profile, streams, minibatch);

    // Step 2: adaptive search. Each accepted move adds one stream somewhere
    // and strictly reduces the bottleneck by more than epsilon.
    int stall = 0;
    while (stall < stall_cap) {
        double gain = 0.0;
        int best_stage = -1;
        for (int k = 0; k < stage_count; ++k) {
            streams[k] += 1;
            bool feasible = std::accumulate(streams.begin(), streams.end(), 0) <= stream_budget &&
                            mem_ok(streams, minibatch, profile.memory, m_cap);
            if (feasible) {
                double candidate = bottleneck_of(profile, streams, minibatch);
                double delta = bottleneck - candidate;
                if (delta > gain) {
                    gain = delta;
                    best_stage = k;
                }
            }
            streams[k] -= 1;
        }
        if (gain > epsilon && best_stage >= 0) {
            streams[best_stage] += 1;
            bottleneck = bottleneck_of(profile, streams, minibatch);
            stall = 0;
        } else {
            ++stall;
        }
    }

    // Step 3: mini-batch leveling, one pass as specified.
    int total = std::accumulate(streams.begin(), streams.end(), 0);
    int m_unit = std::max(1, global_batch / total);
    for (int k = 0; k < stage_count; ++k) {
        if (stage_time(profile, k, streams[k], minibatch[k]) < bottleneck / 2.0) {
            int doubled = std::min(m_unit, 2 * minibatch[k]);
            int saved = minibatch[k];
            minibatch[k] = doubled;
            if (!mem_ok(streams, minibatch, profile.memory, m_cap)) minibatch[k] = saved;
        }
    }

    StreamPlan plan;
    plan.streams = std::move(streams);
    plan.minibatch = std::move(minibatch);
    plan.bottleneck = bottleneck_of(profile, plan.streams, plan.minibatch);
    return plan;
}

double StreamSchedule::makespan() const {
    double worst = 0.0;
    for (double l : loads) worst = std::max(worst, l);
    return worst;
}

double StreamSchedule::total_latency() const {
    return std::accumulate(loads.begin(), loads.end(), 0.0);
}

double WarmupStats::latency_for(PipelineMode mode, int tile) const {
    double base = mode == PipelineMode::detect ? detect_latency : embed_latency;
    double ratio = static_cast<double>(tile) / reference_tile;
    return base * ratio * ratio;
}

double WarmupStats::memory_for(PipelineMode mode, int tile) const {
    double base = mode == PipelineMode::detect ? detect_memory : embed_memory;
    double ratio = static_cast<double>(tile) / reference_tile;
    return base * ratio * ratio;
}

std::vector<Task> build_tasks(std::span<const ImageBuffer> images, const TileSizePredictor& predictor,
                              const WarmupStats& stats, double /*b0*/, PipelineMode mode) {
    if (stats.reference_tile <= 0) throw InvalidInput("warm-up stats missing reference tile");
    std::vector<Task> tasks;
    tasks.reserve(images.size());
    for (size_t i = 0; i < images.size(); ++i) {
        int tile = predictor.select_tile_size(images[i]);
        if (tile <= 0) throw InvalidInput("predictor returned invalid tile size");
        Task task;
        task.id = static_cast<int>(i);
        task.tile_size = tile;
        task.latency = stats.latency_for(mode, tile);
        task.memory = stats.memory_for(mode, tile);
        if (task.latency <= 0.0) throw InvalidInput("warm-up stats predict nonpositive latency");
        tasks.push_back(task);
    }
    return tasks;
}

namespace {

// Splits `b_min` units off the front of a task; remainder latency/memory are
// exact complements so totals are conserved.
std::pair<Task, std::optional<Task>> shard_task(const Task& task, int b_min) {
    if (task.units <= b_min) return {task, std::nullopt};
    double frac = static_cast<double>(b_min) / task.units;
    Task head = task;
    head.units = b_min;
    head.latency = task.latency * frac;
    head.memory = task.memory * frac;
    Task tail = task;
    tail.units = task.units - b_min;
    tail.latency = task.latency - head.latency;
    tail.memory = task.memory - head.memory;
    return {head, tail};
}

} // namespace

StreamSchedule lpt_schedule(std::vector<Task> tasks, int stream_count, double lambda, double m_cap,
                            int b_min, int global_batch) {
    if (stream_count < 1) throw InvalidInput("need at least one stream");
    if (b_min < 1) throw InvalidInput("minimum mini-batch must be >= 1");
    for (const Task& t : tasks)
        if (t.latency <= 0.0 || t.units < 1) throw InvalidInput("tasks must have positive latency and units");

    StreamSchedule sched;
    sched.streams.resize(stream_count);
    sched.loads.assign(stream_count, 0.0);

    // Pool ordered by (latency desc, id asc); pop_back yields the max.
    auto pool_order = [](const Task& a, const Task& b) {
        if (a.latency != b.latency) return a.latency < b.latency;
        return a.id > b.id;
    };
    std::sort(tasks.begin(), tasks.end(), pool_order);

    double placed_memory = 0.0;
    size_t placed_count = 0;
    while (!tasks.empty()) {
        Task task = tasks.back();
        tasks.pop_back();

        int target = 0;
        for (int p = 1; p < stream_count; ++p)
            if (sched.loads[p] < sched.loads[target]) target = p;
        double min_load = sched.loads[target];

        bool balanced = std::isinf(lambda) ||
                        sched.loads[target] + task.latency <= (1.0 + lambda) * min_load;
        bool memory_fits = placed_memory + task.memory <= m_cap;
        if (balanced && memory_fits) {
            sched.streams[target].push_back(task);
            sched.loads[target] += task.latency;
            placed_memory += task.memory;
            ++placed_count;
            continue;
        }

        auto [head, rest] = shard_task(task, b_min);
        if (placed_memory + head.memory > m_cap)
            throw InfeasibleConfig("memory cap violated even at minimum shard size");
        sched.streams[target].push_back(head);
        sched.loads[target] += head.latency;
        placed_memory += head.memory;
        ++placed_count;
        if (rest) {
            // Reinsert keeping the pool ordered.
            auto it = std::lower_bound(tasks.begin(), tasks.end(), *rest, pool_order);
            tasks.insert(it, *rest);
        }
    }

    sched.m_unit = std::max<int>(b_min, placed_count ? global_batch / static_cast<int>(placed_count) : b_min);
    for (auto& stream : sched.streams)
        for (Task& t : stream) t.mb = sched.m_unit;
    return sched;
}

} // namespace qrmark
