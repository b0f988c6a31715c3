#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "qrmark/detect.hpp"
#include "qrmark/sched.hpp"

namespace qrmark {

// Simulated clock: integer ticks so traces carry no float drift. One profile
// time unit is 1e6 ticks.
using SimTime = int64_t;
inline constexpr double kTicksPerUnit = 1e6;

inline SimTime to_ticks(double units) {
    return static_cast<SimTime>(std::llround(units * kTicksPerUnit));
}

enum class EventKind : uint8_t { start, end };

struct SimEvent {
    SimTime time = 0;
    int stream = 0; // global stream lane id
    int stage = 0;
    int batch = 0;
    EventKind kind = EventKind::start;
};

// CPU preparation and device kernel portions of one batch.
struct BatchRegion {
    double prep_time = 0.0;
    double kernel_time = 0.0;
};

struct SimReport {
    SimTime makespan = 0;
    std::vector<double> stream_utilization; // busy / makespan per lane
    std::vector<SimTime> stage_busy;
    std::vector<SimTime> stage_idle; // lane-seconds of bubble per stage
    std::vector<SimEvent> events;

    double makespan_units() const { return static_cast<double>(makespan) / kTicksPerUnit; }
};

struct SimOptions {
    bool interleave = false;
    // Fixed cost added to every mini-batch, in profile time units (models
    // kernel-launch overhead; 0 by default).
    double launch_overhead = 0.0;
    // When > 0, every stage executes in mini-batches of this size (capped by
    // the plan's m[k]); when 0, each stage splits the batch evenly across its
    // streams.
    int exec_minibatch = 0;
};

// Event-driven execution of a stream plan over one global batch. Stage k runs
// its mini-batches on s[k] parallel streams; a mini-batch becomes ready when
// the previous stage has finished every sample it covers. With interleave on,
// each stream prepares mini-batch j+1 on its CPU lane while kernel j runs.
SimReport simulate(const StreamPlan& plan, const StageProfile& profile, int global_batch,
                   const SimOptions& opts = {});

// Execution of an LPT schedule: each stream runs its task list serially.
SimReport simulate(const StreamSchedule& schedule, const SimOptions& opts = {});

// Two-lane prep/kernel pipeline over a batch sequence. Without interleaving
// the lanes run strictly serially; with it, preparation of batch k+1 overlaps
// the kernel of batch k.
SimReport simulate_regions(std::span<const BatchRegion> batches, bool interleave);

// One benchmarkable stage for warm-up profiling.
struct StageBench {
    std::string name;
    std::function<void()> run_batch;   // processes one baseline batch
    double mem_per_sample = 0.0;       // bytes
    double prep_share = 0.0;           // fraction of the stage time that is CPU prep
};

// Medians of w timed runs per stage; the clock is injectable for tests.
StageProfile measure_stages(std::span<StageBench> stages, int warmup_iters, double baseline_batch,
                            const std::function<int64_t()>& now_ns);

// Runs the real detection stages on a baseline batch drawn from `images` and
// returns their measured profile (times in milliseconds, memory in bytes).
StageProfile warmup_profile(std::span<const ImageBuffer> images, int warmup_iters,
                            const DetectionConfig& cfg);

// Desk-scale execution of a plan: the detect pipeline with one worker pool
// per stage sized by the plan's stream counts.
std::pair<std::vector<DetectionRecord>, DeskReport> run_desk(const StreamPlan& plan,
                                                             std::span<const ImageBuffer> images,
                                                             const DetectionConfig& cfg,
                                                             const SyntheticStageLoad* load = nullptr);

} // namespace qrmark
