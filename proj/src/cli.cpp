#include "qrmark/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qrmark/detect.hpp"
#include "qrmark/json_io.hpp"
#include "qrmark/rng.hpp"
#include "qrmark/sim.hpp"

namespace qrmark::cli {

namespace fs = std::filesystem;
using nlohmann::json;

IngestResult ingest(const fs::path& path) {
    IngestResult result;
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file() && entry.path().extension() == ".ppm")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
    } else if (fs::is_regular_file(path)) {
        files.push_back(path);
    } else {
        result.errors.push_back(path.string() + ": no such file or directory");
        return result;
    }
    for (const fs::path& file : files) {
        try {
            result.images.push_back(read_ppm(file));
            result.names.push_back(file.filename().string());
        } catch (const std::exception& e) {
            result.errors.push_back(e.what());
        }
    }
    return result;
}

BitVec default_message(uint64_t key_seed, int n_bits) {
    BitVec bits(n_bits);
    for (int i = 0; i < n_bits; ++i) bits[i] = rng_word(key_seed, 0x6d73, i) & 1;
    return bits;
}

namespace {

struct CommonDetectFlags {
    std::string input;
    std::string profile = "gf16-15-12";
    int payload_bits = 48;
    uint64_t key_seed = 1;
    std::string msg_hex;
    double alpha = 0.04;
    int tile_size = 64;
    std::string tile_strategy = "random_grid";
    uint64_t seed = 0;
};

void add_code_flags(CLI::App* cmd, CommonDetectFlags& f) {
    cmd->add_option("--profile", f.profile, "code profile (gf16-15-12 | gf256-dynamic)");
    cmd->add_option("--payload-bits", f.payload_bits, "payload width for gf256-dynamic");
    cmd->add_option("--key-seed", f.key_seed, "watermark key seed");
    cmd->add_option("--msg", f.msg_hex, "payload hex (defaults to the key-seed message)");
    cmd->add_option("--alpha", f.alpha, "embedding strength");
    cmd->add_option("--tile-size", f.tile_size, "tile side length");
    cmd->add_option("--tile-strategy", f.tile_strategy, "random | random_grid | fixed");
    cmd->add_option("--seed", f.seed, "run seed for tile selection");
}

BitVec resolve_message(const CommonDetectFlags& f, const CodeParams& code) {
    if (f.msg_hex.empty()) return default_message(f.key_seed, code.message_bits());
    return hex_to_bits(f.msg_hex, code.message_bits());
}

DetectionConfig build_config(const CommonDetectFlags& f) {
    CodeParams code = resolve_profile(f.profile, f.payload_bits);
    TileSpec tile{f.tile_size, parse_tile_strategy(f.tile_strategy), f.seed};
    return DetectionConfig::make(code, tile, f.key_seed, f.alpha, resolve_message(f, code));
}

json config_to_json(const DetectionConfig& cfg, const CommonDetectFlags& f) {
    return {
        {"profile", f.profile},
        {"payload_bits", f.payload_bits},
        {"key_seed", f.key_seed},
        {"msg_hex", bits_to_hex(cfg.key_message)},
        {"alpha", cfg.key.alpha},
        {"tile_size", cfg.tile.size},
        {"tile_strategy", tile_strategy_name(cfg.tile.strategy)},
        {"seed", cfg.tile.seed},
        {"fpr_target", cfg.fpr_target},
        {"rs_workers", cfg.rs_workers},
        {"cache", cfg.cache.enabled},
    };
}

// Log2 microsecond buckets for the stage latency histogram.
json latency_histogram(const std::vector<DetectionRecord>& records) {
    constexpr int kBuckets = 24;
    auto bucket_of = [](int64_t ns) {
        int64_t us = ns / 1000;
        int b = 0;
        while (us > 0 && b < kBuckets - 1) {
            us >>= 1;
            ++b;
        }
        return b;
    };
    std::array<std::array<int64_t, kBuckets>, 3> counts{};
    for (const auto& rec : records) {
        counts[0][bucket_of(rec.stage_ns.preprocess_ns)] += 1;
        counts[1][bucket_of(rec.stage_ns.extract_ns)] += 1;
        counts[2][bucket_of(rec.stage_ns.correct_ns)] += 1;
    }
    json j;
    j["bucket_lower_us"] = json::array();
    for (int b = 0; b < kBuckets; ++b) j["bucket_lower_us"].push_back(b == 0 ? 0 : (1LL << (b - 1)));
    j["preprocess"] = counts[0];
    j["extract"] = counts[1];
    j["correct"] = counts[2];
    return j;
}

json latency_summary(const std::vector<DetectionRecord>& records) {
    auto summarize = [&](auto field) {
        std::vector<int64_t> v;
        v.reserve(records.size());
        for (const auto& r : records) v.push_back(field(r));
        if (v.empty()) return json{{"mean_ns", 0}, {"p50_ns", 0}, {"p95_ns", 0}, {"max_ns", 0}};
        std::sort(v.begin(), v.end());
        int64_t sum = 0;
        for (int64_t x : v) sum += x;
        return json{{"mean_ns", sum / static_cast<int64_t>(v.size())},
                    {"p50_ns", v[v.size() / 2]},
                    {"p95_ns", v[std::min(v.size() - 1, v.size() * 95 / 100)]},
                    {"max_ns", v.back()}};
    };
    return {
        {"preprocess", summarize([](const auto& r) { return r.stage_ns.preprocess_ns; })},
        {"extract", summarize([](const auto& r) { return r.stage_ns.extract_ns; })},
        {"correct", summarize([](const auto& r) { return r.stage_ns.correct_ns; })},
    };
}

int cmd_rs_encode(const CommonDetectFlags& f, const std::string& msg_hex) {
    CodeParams code = resolve_profile(f.profile, f.payload_bits);
    BitVec msg = hex_to_bits(msg_hex, code.message_bits());
    BitVec word = rs_encode(msg, code);
    std::cout << bits_to_hex(word) << "\n";
    return 0;
}

int cmd_rs_decode(const CommonDetectFlags& f, const std::string& word_hex) {
    CodeParams code = resolve_profile(f.profile, f.payload_bits);
    BitVec word = hex_to_bits(word_hex, code.codeword_bits());
    auto result = bw_decode(word, code);
    if (!result) {
        std::cout << "decode-failure\n";
        return 1;
    }
    std::cout << bits_to_hex(result->message) << " errors_corrected=" << result->errors_corrected
              << "\n";
    return 0;
}

int cmd_embed(const CommonDetectFlags& f, const std::string& out_dir) {
    IngestResult in = ingest(f.input);
    for (const auto& err : in.errors) std::cerr << "warning: " << err << "\n";
    if (in.images.empty()) {
        std::cerr << "warning: no images ingested\n";
        return in.errors.empty() ? 0 : 1;
    }
    CodeParams code = resolve_profile(f.profile, f.payload_bits);
    BitVec msg = resolve_message(f, code);
    BitVec word = rs_encode(msg, code);
    WatermarkKey key{f.key_seed, code.codeword_bits(), f.alpha};
    SpreadSpectrumCodec codec(key, f.tile_size);

    fs::create_directories(out_dir);
    double psnr_sum = 0.0;
    size_t psnr_count = 0;
    for (size_t i = 0; i < in.images.size(); ++i) {
        ImageBuffer norm = normalize(in.images[i]);
        embed_image_grid(norm, codec, word);
        ImageBuffer marked = denormalize(norm);
        double db = psnr_db(in.images[i], marked);
        if (std::isfinite(db)) {
            psnr_sum += db;
            ++psnr_count;
        }
        fs::path out = fs::path(out_dir) / in.names[i];
        write_ppm(marked, out);
    }
    std::cout << "embedded " << in.images.size() << " images, codeword " << bits_to_hex(word);
    if (psnr_count) std::cout << ", mean psnr " << psnr_sum / psnr_count << " dB";
    std::cout << "\n";
    return in.errors.empty() ? 0 : 1;
}

int cmd_attack(const std::string& input, const std::string& out_dir, const std::string& op,
               double param, uint64_t seed) {
    IngestResult in = ingest(input);
    for (const auto& err : in.errors) std::cerr << "warning: " << err << "\n";
    TransformSpec spec = TransformSpec::parse(op, param);
    fs::create_directories(out_dir);
    for (size_t i = 0; i < in.images.size(); ++i) {
        ImageBuffer attacked = apply_attack(in.images[i], spec, seed);
        write_ppm(attacked, fs::path(out_dir) / in.names[i]);
    }
    std::cout << "attacked " << in.images.size() << " images with " << spec.name() << "("
              << param << ")\n";
    return in.errors.empty() ? 0 : 1;
}

int cmd_detect(CommonDetectFlags& f, const std::string& report_path, double fpr, int rs_workers,
               const std::string& cache_mode, bool deterministic, const std::string& psnr_ref) {
    IngestResult in = ingest(f.input);
    for (const auto& err : in.errors) std::cerr << "warning: " << err << "\n";

    DetectionConfig cfg = build_config(f);
    cfg.fpr_target = fpr;
    cfg.rs_workers = rs_workers;
    if (const char* env = std::getenv("QRMARK_THREADS")) cfg.rs_workers = std::max(1, std::atoi(env));
    cfg.cache.enabled = cache_mode != "off";

    std::vector<DetectionRecord> records = detect_batch(in.images, cfg);

    BitVec key_word = rs_encode(cfg.key_message, cfg.code);
    size_t verified = 0, words = 0, cache_hits = 0;
    double bit_acc_sum = 0.0;
    for (const auto& rec : records) {
        verified += rec.verified;
        bit_acc_sum += rec.bit_acc;
        cache_hits += rec.cache_hit;
        if (rec.corrected && *rec.corrected == cfg.key_message) ++words;
    }

    json aggregate = {
        {"images", records.size()},
        {"bit_acc_mean", records.empty() ? 0.0 : bit_acc_sum / records.size()},
        {"word_acc", records.empty() ? 0.0 : static_cast<double>(words) / records.size()},
        {"tpr", records.empty() ? 0.0 : static_cast<double>(verified) / records.size()},
        {"cache_hits", cache_hits},
        {"stage_latency", deterministic ? json{} : latency_summary(records)},
        {"stage_latency_histogram", deterministic ? json{} : latency_histogram(records)},
    };

    if (!psnr_ref.empty()) {
        IngestResult ref = ingest(psnr_ref);
        double sum = 0.0;
        size_t n = 0;
        for (size_t i = 0; i < std::min(ref.images.size(), in.images.size()); ++i) {
            double db = psnr_db(ref.images[i], in.images[i]);
            if (std::isfinite(db)) {
                sum += db;
                ++n;
            }
        }
        aggregate["mean_psnr_db"] = n ? json(sum / n) : json(nullptr);
    } else {
        aggregate["mean_psnr_db"] = nullptr;
    }

    json report = {{"schema", kReportSchema},
                   {"config", config_to_json(cfg, f)},
                   {"aggregate", aggregate}};
    if (!deterministic)
        report["generated_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::system_clock::now().time_since_epoch())
                                          .count();
    json recs = json::array();
    for (const auto& rec : records) recs.push_back(record_to_json(rec, deterministic));
    report["records"] = recs;
    if (!in.errors.empty()) report["ingest_errors"] = in.errors;

    if (!report_path.empty())
        save_json(report, report_path);
    else
        std::cout << report["aggregate"].dump(2) << "\n";
    return in.errors.empty() ? 0 : 1;
}

int cmd_profile(CommonDetectFlags& f, int iters, const std::string& out_path) {
    IngestResult in = ingest(f.input);
    for (const auto& err : in.errors) std::cerr << "warning: " << err << "\n";
    if (in.images.empty()) throw InvalidInput("profiling needs at least one image");
    DetectionConfig cfg = build_config(f);
    StageProfile profile = warmup_profile(in.images, iters, cfg);
    json j = profile_to_json(profile);
    if (!out_path.empty())
        save_json(j, out_path);
    else
        std::cout << j.dump(2) << "\n";
    return in.errors.empty() ? 0 : 1;
}

struct ScheduleFlags {
    std::string profile_json;
    int batch = 256;
    int streams = 8;
    double mem_cap = 1e18;
    double epsilon = 0.0;
    int stall_cap = 3;
    std::string latencies; // comma list switches to LPT mode
    double lambda = std::numeric_limits<double>::infinity();
    int b_min = 1;
    std::string out;
};

int cmd_schedule(const ScheduleFlags& f) {
    if (!f.latencies.empty()) {
        std::vector<Task> tasks;
        std::stringstream ss(f.latencies);
        std::string item;
        int id = 0;
        while (std::getline(ss, item, ',')) {
            Task t;
            t.id = id++;
            t.latency = std::stod(item);
            t.units = std::max(1, f.b_min);
            tasks.push_back(t);
        }
        StreamSchedule sched = lpt_schedule(tasks, f.streams, f.lambda, f.mem_cap, f.b_min, f.batch);
        json j = schedule_to_json(sched);
        if (!f.out.empty())
            save_json(j, f.out);
        else
            std::cout << j.dump(2) << "\n";
        return 0;
    }
    StageProfile profile = profile_from_json(load_json(f.profile_json));
    StreamPlan plan = allocate_streams(profile, f.batch, f.streams, f.mem_cap, f.epsilon, f.stall_cap);
    json j = plan_to_json(plan);
    if (!f.out.empty())
        save_json(j, f.out);
    else
        std::cout << j.dump(2) << "\n";
    return 0;
}

struct SimulateFlags {
    std::string plan_json;
    std::string schedule_json;
    std::string profile_json;
    int batch = 256;
    bool interleave = false;
    double launch_overhead = 0.0;
    int exec_minibatch = 0;
    std::string out;
    std::string trace;
};

int cmd_simulate(const SimulateFlags& f) {
    SimOptions opts;
    opts.interleave = f.interleave;
    opts.launch_overhead = f.launch_overhead;
    opts.exec_minibatch = f.exec_minibatch;

    SimReport report;
    if (!f.schedule_json.empty()) {
        report = simulate(schedule_from_json(load_json(f.schedule_json)), opts);
    } else {
        StreamPlan plan = plan_from_json(load_json(f.plan_json));
        StageProfile profile = profile_from_json(load_json(f.profile_json));
        report = simulate(plan, profile, f.batch, opts);
    }
    json j = sim_report_to_json(report);
    if (!f.out.empty())
        save_json(j, f.out);
    else
        std::cout << j.dump(2) << "\n";
    if (!f.trace.empty()) write_trace_csv(report, f.trace);
    return 0;
}

struct BenchFlags {
    int images = 128;
    std::string batches = "16,64,128";
    double load_pre_ms = 1.0;
    double load_extract_ms = 1.0;
    double load_correct_ms = 14.0;
    int stream_budget = 16;
    uint64_t key_seed = 1;
    std::string out;
};

int cmd_bench(const BenchFlags& f) {
    CommonDetectFlags flags;
    flags.key_seed = f.key_seed;
    CodeParams code = resolve_profile(flags.profile, flags.payload_bits);
    BitVec msg = default_message(f.key_seed, code.message_bits());
    BitVec word = rs_encode(msg, code);
    WatermarkKey key{f.key_seed, code.codeword_bits(), flags.alpha};
    SpreadSpectrumCodec codec(key, flags.tile_size);

    std::vector<ImageBuffer> corpus;
    corpus.reserve(f.images);
    for (int i = 0; i < f.images; ++i) {
        ImageBuffer img = synthetic_image(1000 + i, kWorkingSize, kWorkingSize);
        ImageBuffer norm = normalize(img);
        embed_image_grid(norm, codec, word);
        corpus.push_back(denormalize(norm));
    }

    DetectionConfig cfg = DetectionConfig::make(code, TileSpec{flags.tile_size,
                                                               TileStrategy::random_grid, 0},
                                                f.key_seed, flags.alpha, msg);
    SyntheticStageLoad load{static_cast<int64_t>(f.load_pre_ms * 1e6),
                            static_cast<int64_t>(f.load_extract_ms * 1e6),
                            static_cast<int64_t>(f.load_correct_ms * 1e6)};

    // Profile the synthetic workload and let the allocator size the pools.
    StageProfile profile = warmup_profile(corpus, 1, cfg);
    profile.time[0] += f.load_pre_ms * profile.b0;
    profile.time[1] += f.load_extract_ms * profile.b0;
    profile.time[2] += f.load_correct_ms * profile.b0;

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!f.out.empty()) {
        file.open(f.out);
        if (!file) throw InvalidInput("cannot write " + f.out);
        os = &file;
    }
    *os << "config,batch,images,wall_ms,images_per_s,latency_ms_per_image\n";

    std::stringstream ss(f.batches);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int batch = std::stoi(item);
        size_t count = std::min<size_t>(corpus.size(), batch);
        std::span<const ImageBuffer> span(corpus.data(), count);

        StreamPlan baseline{{1, 1, 1}, {batch, batch, batch}, 0.0};
        auto [rec_base, rep_base] = run_desk(baseline, span, cfg, &load);

        StreamPlan plan = allocate_streams(profile, batch, f.stream_budget, 1e18, 0.0, 2);
        auto [rec_plan, rep_plan] = run_desk(plan, span, cfg, &load);

        auto emit = [&](const char* name, const DeskReport& rep) {
            double ms = static_cast<double>(rep.wall_ns) / 1e6;
            *os << name << "," << batch << "," << rep.items << "," << ms << ","
                << (ms > 0 ? rep.items / (ms / 1e3) : 0.0) << ","
                << (rep.items ? ms / rep.items : 0.0) << "\n";
        };
        emit("single", rep_base);
        std::string plan_name = "plan-" + std::to_string(plan.streams[0]) + "-" +
                                std::to_string(plan.streams[1]) + "-" +
                                std::to_string(plan.streams[2]);
        emit(plan_name.c_str(), rep_plan);
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"qrmark: tile-based watermark detection with Reed-Solomon correction"};
    app.require_subcommand(1);

    // rs encode/decode
    CommonDetectFlags rs_flags;
    std::string rs_msg, rs_word;
    CLI::App* rs = app.add_subcommand("rs", "Reed-Solomon encode/decode");
    rs->require_subcommand(1);
    CLI::App* rs_enc = rs->add_subcommand("encode", "message hex -> codeword hex");
    rs_enc->add_option("--profile", rs_flags.profile);
    rs_enc->add_option("--payload-bits", rs_flags.payload_bits);
    rs_enc->add_option("--msg", rs_msg)->required();
    CLI::App* rs_dec = rs->add_subcommand("decode", "codeword hex -> message hex");
    rs_dec->add_option("--profile", rs_flags.profile);
    rs_dec->add_option("--payload-bits", rs_flags.payload_bits);
    rs_dec->add_option("--word", rs_word)->required();

    // embed
    CommonDetectFlags embed_flags;
    std::string embed_out = "embedded";
    CLI::App* embed_cmd = app.add_subcommand("embed", "embed a watermark into images");
    embed_cmd->add_option("--input", embed_flags.input)->required();
    embed_cmd->add_option("--out", embed_out);
    add_code_flags(embed_cmd, embed_flags);

    // attack
    std::string attack_input, attack_out = "attacked", attack_op;
    double attack_param = 1.0;
    uint64_t attack_seed = 0;
    CLI::App* attack_cmd = app.add_subcommand("attack", "apply an evaluation transform");
    attack_cmd->add_option("--input", attack_input)->required();
    attack_cmd->add_option("--out", attack_out);
    attack_cmd->add_option("--op", attack_op)->required();
    attack_cmd->add_option("--param", attack_param);
    attack_cmd->add_option("--seed", attack_seed);

    // detect
    CommonDetectFlags detect_flags;
    std::string report_path, cache_mode = "on", psnr_ref;
    double fpr = 1e-6;
    int rs_workers = 32;
    bool deterministic = false;
    CLI::App* detect_cmd = app.add_subcommand("detect", "run the detection pipeline");
    detect_cmd->add_option("--input", detect_flags.input)->required();
    detect_cmd->add_option("--report", report_path);
    detect_cmd->add_option("--fpr", fpr);
    detect_cmd->add_option("--rs-workers", rs_workers);
    detect_cmd->add_option("--cache", cache_mode)->check(CLI::IsMember({"on", "off"}));
    detect_cmd->add_flag("--deterministic", deterministic);
    detect_cmd->add_option("--psnr-ref", psnr_ref, "originals for PSNR aggregation");
    add_code_flags(detect_cmd, detect_flags);

    // profile
    CommonDetectFlags profile_flags;
    int profile_iters = 3;
    std::string profile_out;
    CLI::App* profile_cmd = app.add_subcommand("profile", "warm-up stage profiling");
    profile_cmd->add_option("--input", profile_flags.input)->required();
    profile_cmd->add_option("--iters", profile_iters);
    profile_cmd->add_option("--out", profile_out);
    add_code_flags(profile_cmd, profile_flags);

    // schedule
    ScheduleFlags sched_flags;
    CLI::App* sched_cmd = app.add_subcommand("schedule", "stream allocation / LPT scheduling");
    sched_cmd->add_option("--profile-json", sched_flags.profile_json);
    sched_cmd->add_option("--batch", sched_flags.batch);
    sched_cmd->add_option("--streams", sched_flags.streams);
    sched_cmd->add_option("--mem-cap", sched_flags.mem_cap);
    sched_cmd->add_option("--epsilon", sched_flags.epsilon);
    sched_cmd->add_option("--stall-cap", sched_flags.stall_cap);
    sched_cmd->add_option("--latencies", sched_flags.latencies, "comma list, switches to LPT mode");
    sched_cmd->add_option("--lambda", sched_flags.lambda);
    sched_cmd->add_option("--b-min", sched_flags.b_min);
    sched_cmd->add_option("--out", sched_flags.out);

    // simulate
    SimulateFlags sim_flags;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "discrete-event execution of a plan");
    sim_cmd->add_option("--plan", sim_flags.plan_json);
    sim_cmd->add_option("--schedule", sim_flags.schedule_json);
    sim_cmd->add_option("--profile-json", sim_flags.profile_json);
    sim_cmd->add_option("--batch", sim_flags.batch);
    sim_cmd->add_flag("--interleave", sim_flags.interleave);
    sim_cmd->add_option("--launch-overhead", sim_flags.launch_overhead);
    sim_cmd->add_option("--exec-minibatch", sim_flags.exec_minibatch);
    sim_cmd->add_option("--out", sim_flags.out);
    sim_cmd->add_option("--trace", sim_flags.trace);

    // bench
    BenchFlags bench_flags;
    CLI::App* bench_cmd = app.add_subcommand("bench", "desk executor throughput table");
    bench_cmd->add_option("--images", bench_flags.images);
    bench_cmd->add_option("--batches", bench_flags.batches);
    bench_cmd->add_option("--load-pre-ms", bench_flags.load_pre_ms);
    bench_cmd->add_option("--load-extract-ms", bench_flags.load_extract_ms);
    bench_cmd->add_option("--load-correct-ms", bench_flags.load_correct_ms);
    bench_cmd->add_option("--stream-budget", bench_flags.stream_budget);
    bench_cmd->add_option("--key-seed", bench_flags.key_seed);
    bench_cmd->add_option("--out", bench_flags.out);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rs_enc->parsed()) return cmd_rs_encode(rs_flags, rs_msg);
        if (rs_dec->parsed()) return cmd_rs_decode(rs_flags, rs_word);
        if (embed_cmd->parsed()) return cmd_embed(embed_flags, embed_out);
        if (attack_cmd->parsed())
            return cmd_attack(attack_input, attack_out, attack_op, attack_param, attack_seed);
        if (detect_cmd->parsed())
            return cmd_detect(detect_flags, report_path, fpr, rs_workers, cache_mode, deterministic,
                              psnr_ref);
        if (profile_cmd->parsed()) return cmd_profile(profile_flags, profile_iters, profile_out);
        if (sched_cmd->parsed()) return cmd_schedule(sched_flags);
        if (sim_cmd->parsed()) return cmd_simulate(sim_flags);
        if (bench_cmd->parsed()) return cmd_bench(bench_flags);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace qrmark::cli
