#include "qrmark/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace qrmark {

namespace {

struct MiniBatch {
    int stage = 0;
    int index = 0;
    int first_sample = 0;
    int sample_count = 0;
    SimTime prep = 0;
    SimTime kernel = 0; // includes launch overhead
};

struct Lane {
    SimTime prep_free = 0;   // CPU side of the stream
    SimTime kernel_free = 0; // device side
    SimTime last_kernel_start = 0;
    SimTime busy = 0;
};

} // namespace

SimReport simulate(const StreamPlan& plan, const StageProfile& profile, int global_batch,
                   const SimOptions& opts) {
    profile.validate();
    const int stage_count = profile.stages();
    if (static_cast<int>(plan.streams.size()) != stage_count ||
        static_cast<int>(plan.minibatch.size()) != stage_count)
        throw InvalidInput("plan and profile stage counts differ");
    if (global_batch < 1) throw InvalidInput("global batch must be >= 1");
    for (int k = 0; k < stage_count; ++k) {
        if (plan.streams[k] < 1 || plan.minibatch[k] < 1)
            throw InfeasibleConfig("plan has an empty stage");
        if (profile.prep_of(k) > profile.time[k])
            throw InvalidInput("prep share exceeds stage time");
    }

    SimReport report;
    report.stage_busy.assign(stage_count, 0);
    report.stage_idle.assign(stage_count, 0);

    // Completion time per sample in the upstream stage.
    std::vector<SimTime> upstream_done(global_batch, 0);
    std::vector<SimTime> current_done(global_batch, 0);

    std::vector<Lane> lanes;
    std::vector<int> lane_base(stage_count, 0);
    int total_lanes = 0;
    for (int k = 0; k < stage_count; ++k) {
        lane_base[k] = total_lanes;
        total_lanes += plan.streams[k];
    }
    lanes.resize(total_lanes);

    for (int k = 0; k < stage_count; ++k) {
        int chunk = opts.exec_minibatch > 0
                        ? std::min(plan.minibatch[k], opts.exec_minibatch)
                        : std::min(plan.minibatch[k],
                                   (global_batch + plan.streams[k] - 1) / plan.streams[k]);
        chunk = std::max(1, chunk);

        std::vector<MiniBatch> batches;
        for (int first = 0, index = 0; first < global_batch; first += chunk, ++index) {
            MiniBatch mb;
            mb.stage = k;
            mb.index = index;
            mb.first_sample = first;
            mb.sample_count = std::min(chunk, global_batch - first);
            double span = static_cast<double>(mb.sample_count) / profile.b0;
            double prep_units = profile.prep_of(k) * span;
            double total_units = profile.time[k] * span + opts.launch_overhead;
            mb.prep = to_ticks(prep_units);
            mb.kernel = to_ticks(total_units) - mb.prep;
            batches.push_back(mb);
        }

        auto* stage_lanes = lanes.data() + lane_base[k];
        const int lane_count = plan.streams[k];
        for (const MiniBatch& mb : batches) {
            SimTime ready = 0;
            if (k > 0) {
                for (int s = mb.first_sample; s < mb.first_sample + mb.sample_count; ++s)
                    ready = std::max(ready, upstream_done[s]);
            }
            // Earliest-free device lane, lowest index on ties.
            int lane = 0;
            for (int c = 1; c < lane_count; ++c)
                if (stage_lanes[c].kernel_free < stage_lanes[lane].kernel_free) lane = c;
            Lane& ln = stage_lanes[lane];

            SimTime start, finish;
            if (opts.interleave && mb.prep > 0) {
                // Double-buffered: prep may begin once the lane's previous
                // kernel has been issued.
                SimTime prep_start = std::max(ready, std::max(ln.prep_free, ln.last_kernel_start));
                SimTime prep_end = prep_start + mb.prep;
                start = prep_start;
                SimTime kernel_start = std::max(prep_end, ln.kernel_free);
                finish = kernel_start + mb.kernel;
                ln.prep_free = prep_end;
                ln.last_kernel_start = kernel_start;
                ln.kernel_free = finish;
            } else {
                start = std::max(ready, ln.kernel_free);
                finish = start + mb.prep + mb.kernel;
                ln.last_kernel_start = start + mb.prep;
                ln.prep_free = start + mb.prep;
                ln.kernel_free = finish;
            }
            ln.busy += mb.prep + mb.kernel;
            report.stage_busy[k] += mb.prep + mb.kernel;

            int global_lane = lane_base[k] + lane;
            report.events.push_back({start, global_lane, k, mb.index, EventKind::start});
            report.events.push_back({finish, global_lane, k, mb.index, EventKind::end});
            for (int s = mb.first_sample; s < mb.first_sample + mb.sample_count; ++s)
                current_done[s] = finish;
            report.makespan = std::max(report.makespan, finish);
        }
        std::swap(upstream_done, current_done);
    }

    report.stream_utilization.resize(total_lanes);
    for (int i = 0; i < total_lanes; ++i)
        report.stream_utilization[i] =
            report.makespan > 0 ? static_cast<double>(lanes[i].busy) / report.makespan : 0.0;
    for (int k = 0; k < stage_count; ++k)
        report.stage_idle[k] = static_cast<SimTime>(plan.streams[k]) * report.makespan -
                               report.stage_busy[k];
    std::sort(report.events.begin(), report.events.end(), [](const SimEvent& a, const SimEvent& b) {
        return std::tie(a.time, a.stream, a.batch, a.kind) < std::tie(b.time, b.stream, b.batch, b.kind);
    });
    return report;
}

SimReport simulate(const StreamSchedule& schedule, const SimOptions& opts) {
    SimReport report;
    const int streams = static_cast<int>(schedule.streams.size());
    report.stage_busy.assign(1, 0);
    report.stage_idle.assign(1, 0);
    report.stream_utilization.assign(streams, 0.0);

    std::vector<SimTime> busy(streams, 0);
    for (int p = 0; p < streams; ++p) {
        SimTime clock = 0;
        int index = 0;
        for (const Task& task : schedule.streams[p]) {
            SimTime dur = to_ticks(task.latency + opts.launch_overhead);
            report.events.push_back({clock, p, 0, index, EventKind::start});
            clock += dur;
            report.events.push_back({clock, p, 0, index, EventKind::end});
            busy[p] += dur;
            ++index;
        }
        report.makespan = std::max(report.makespan, clock);
        report.stage_busy[0] += busy[p];
    }
    for (int p = 0; p < streams; ++p)
        report.stream_utilization[p] =
            report.makespan > 0 ? static_cast<double>(busy[p]) / report.makespan : 0.0;
    report.stage_idle[0] = static_cast<SimTime>(streams) * report.makespan - report.stage_busy[0];
    return report;
}

SimReport simulate_regions(std::span<const BatchRegion> batches, bool interleave) {
    SimReport report;
    report.stage_busy.assign(2, 0); // prep lane, kernel lane
    report.stage_idle.assign(2, 0);

    SimTime prep_end = 0, kernel_end = 0, last_kernel_start = 0;
    int index = 0;
    for (const BatchRegion& b : batches) {
        if (b.prep_time < 0.0 || b.kernel_time < 0.0)
            throw InvalidInput("batch regions must be nonnegative");
        SimTime prep = to_ticks(b.prep_time);
        SimTime kernel = to_ticks(b.kernel_time);
        SimTime prep_start;
        if (interleave) {
            prep_start = std::max(prep_end, last_kernel_start);
        } else {
            prep_start = kernel_end;
        }
        prep_end = prep_start + prep;
        SimTime kernel_start = std::max(prep_end, kernel_end);
        last_kernel_start = kernel_start;
        kernel_end = kernel_start + kernel;

        report.events.push_back({prep_start, 0, 0, index, EventKind::start});
        report.events.push_back({prep_end, 0, 0, index, EventKind::end});
        report.events.push_back({kernel_start, 1, 1, index, EventKind::start});
        report.events.push_back({kernel_end, 1, 1, index, EventKind::end});
        report.stage_busy[0] += prep;
        report.stage_busy[1] += kernel;
        ++index;
    }
    report.makespan = kernel_end;
    report.stream_utilization.assign(2, 0.0);
    if (report.makespan > 0) {
        report.stream_utilization[0] = static_cast<double>(report.stage_busy[0]) / report.makespan;
        report.stream_utilization[1] = static_cast<double>(report.stage_busy[1]) / report.makespan;
    }
    report.stage_idle[0] = report.makespan - report.stage_busy[0];
    report.stage_idle[1] = report.makespan - report.stage_busy[1];
    return report;
}

StageProfile measure_stages(std::span<StageBench> stages, int warmup_iters, double baseline_batch,
                            const std::function<int64_t()>& now_ns) {
    if (warmup_iters < 1) throw InvalidInput("need at least one warm-up iteration");
    if (stages.empty()) throw InvalidInput("no stages to measure");

    StageProfile profile;
    profile.b0 = baseline_batch;
    for (StageBench& stage : stages) {
        std::vector<double> samples;
        samples.reserve(warmup_iters);
        for (int i = 0; i < warmup_iters; ++i) {
            int64_t begin = now_ns();
            stage.run_batch();
            samples.push_back(static_cast<double>(now_ns() - begin) / 1e6); // ms
        }
        std::sort(samples.begin(), samples.end());
        double median = samples[samples.size() / 2];
        if (samples.size() % 2 == 0) median = 0.5 * (median + samples[samples.size() / 2 - 1]);
        profile.time.push_back(std::max(median, 1e-6));
        profile.memory.push_back(stage.mem_per_sample);
        profile.prep.push_back(std::max(median, 1e-6) * stage.prep_share);
        profile.names.push_back(stage.name);
    }
    return profile;
}

StageProfile warmup_profile(std::span<const ImageBuffer> images, int warmup_iters,
                            const DetectionConfig& cfg) {
    if (images.empty()) throw InvalidInput("warm-up needs at least one image");
    const size_t b0 = std::min<size_t>(images.size(), 16);
    DetectionContext ctx(cfg);

    // Stage state threaded through the benches.
    std::vector<ImageBuffer> normalized(b0);
    std::vector<BitVec> raws(b0);

    size_t max_input_bytes = 0;
    for (size_t i = 0; i < b0; ++i)
        max_input_bytes = std::max(max_input_bytes, images[i].sample_count());

    const int l = cfg.tile.size;
    const double pre_mem = static_cast<double>(max_input_bytes) +
                           static_cast<double>(kWorkingSize) * kWorkingSize * 3 * sizeof(float);
    const double ext_mem = static_cast<double>(l) * l * 3 * sizeof(float) +
                           static_cast<double>(cfg.code.codeword_bits()) * sizeof(double);
    const double cor_mem =
        static_cast<double>(cfg.code.n) * (2 * cfg.code.t + cfg.code.k + 1) * sizeof(uint16_t);

    std::vector<StageBench> benches;
    benches.push_back({"preprocess",
                       [&] {
                           for (size_t i = 0; i < b0; ++i) normalized[i] = preprocess(images[i]);
                       },
                       pre_mem, 0.0});
    benches.push_back({"extract",
                       [&] {
                           for (size_t i = 0; i < b0; ++i) {
                               TileRef tile = select_tile(normalized[i], cfg.tile, i);
                               raws[i] = harden(ctx.codec().extract(extract_tile(normalized[i], tile)));
                           }
                       },
                       ext_mem, 0.0});
    benches.push_back({"correct",
                       [&] {
                           for (size_t i = 0; i < b0; ++i) bw_decode(raws[i], cfg.code);
                       },
                       cor_mem, 0.0});

    auto clock = [] {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(
                   std::chrono::steady_clock::now().time_since_epoch())
            .count();
    };
    return measure_stages(benches, warmup_iters, static_cast<double>(b0), clock);
}

std::pair<std::vector<DetectionRecord>, DeskReport> run_desk(const StreamPlan& plan,
                                                             std::span<const ImageBuffer> images,
                                                             const DetectionConfig& cfg,
                                                             const SyntheticStageLoad* load) {
    DeskReport report;
    std::vector<DetectionRecord> records = detect_batch(images, cfg, &plan, load, &report);
    return {std::move(records), report};
}

} // namespace qrmark
