#include "qrmark/json_io.hpp"

#include <fstream>

namespace qrmark {

using nlohmann::json;

json profile_to_json(const StageProfile& profile) {
    json stages = json::array();
    for (int k = 0; k < profile.stages(); ++k) {
        stages.push_back({
            {"name", k < static_cast<int>(profile.names.size()) ? profile.names[k]
                                                                : "stage" + std::to_string(k)},
            {"time", profile.time[k]},
            {"memory", profile.memory[k]},
            {"prep", profile.prep_of(k)},
        });
    }
    return {{"schema", kReportSchema}, {"b0", profile.b0}, {"stages", stages}};
}

StageProfile profile_from_json(const json& j) {
    StageProfile profile;
    profile.b0 = j.at("b0").get<double>();
    for (const json& s : j.at("stages")) {
        profile.names.push_back(s.value("name", ""));
        profile.time.push_back(s.at("time").get<double>());
        profile.memory.push_back(s.at("memory").get<double>());
        profile.prep.push_back(s.value("prep", 0.0));
    }
    profile.validate();
    return profile;
}

json plan_to_json(const StreamPlan& plan) {
    return {{"schema", kReportSchema},
            {"streams", plan.streams},
            {"minibatch", plan.minibatch},
            {"bottleneck", plan.bottleneck}};
}

StreamPlan plan_from_json(const json& j) {
    StreamPlan plan;
    plan.streams = j.at("streams").get<std::vector<int>>();
    plan.minibatch = j.at("minibatch").get<std::vector<int>>();
    plan.bottleneck = j.value("bottleneck", 0.0);
    if (plan.streams.size() != plan.minibatch.size())
        throw InvalidInput("plan streams/minibatch length mismatch");
    return plan;
}

namespace {

json task_to_json(const Task& t) {
    return {{"id", t.id},       {"tile_size", t.tile_size}, {"latency", t.latency},
            {"memory", t.memory}, {"units", t.units},        {"mb", t.mb}};
}

Task task_from_json(const json& j) {
    Task t;
    t.id = j.at("id").get<int>();
    t.tile_size = j.value("tile_size", 0);
    t.latency = j.at("latency").get<double>();
    t.memory = j.value("memory", 0.0);
    t.units = j.value("units", 1);
    t.mb = j.value("mb", 0);
    return t;
}

} // namespace

json schedule_to_json(const StreamSchedule& schedule) {
    json streams = json::array();
    for (const auto& stream : schedule.streams) {
        json tasks = json::array();
        for (const Task& t : stream) tasks.push_back(task_to_json(t));
        streams.push_back(tasks);
    }
    return {{"schema", kReportSchema},
            {"m_unit", schedule.m_unit},
            {"loads", schedule.loads},
            {"streams", streams}};
}

StreamSchedule schedule_from_json(const json& j) {
    StreamSchedule schedule;
    schedule.m_unit = j.at("m_unit").get<int>();
    schedule.loads = j.at("loads").get<std::vector<double>>();
    for (const json& stream : j.at("streams")) {
        std::vector<Task> tasks;
        for (const json& t : stream) tasks.push_back(task_from_json(t));
        schedule.streams.push_back(std::move(tasks));
    }
    return schedule;
}

json record_to_json(const DetectionRecord& rec, bool deterministic) {
    json j = {
        {"index", rec.image_index},
        {"raw_hex", rec.raw_bits.size() % 4 == 0 ? bits_to_hex(rec.raw_bits) : ""},
        {"errors_corrected", rec.errors_corrected},
        {"bit_acc", rec.bit_acc},
        {"verified", rec.verified},
        {"cache_hit", rec.cache_hit},
    };
    if (rec.corrected)
        j["corrected_hex"] = rec.corrected->size() % 4 == 0 ? bits_to_hex(*rec.corrected) : "";
    else
        j["corrected_hex"] = nullptr;
    if (!rec.error.empty()) j["error"] = rec.error;
    if (deterministic) {
        j["stage_ns"] = {{"preprocess", 0}, {"extract", 0}, {"correct", 0}};
    } else {
        j["stage_ns"] = {{"preprocess", rec.stage_ns.preprocess_ns},
                         {"extract", rec.stage_ns.extract_ns},
                         {"correct", rec.stage_ns.correct_ns}};
    }
    return j;
}

json sim_report_to_json(const SimReport& report) {
    return {{"schema", kReportSchema},
            {"makespan_ticks", report.makespan},
            {"makespan_units", report.makespan_units()},
            {"stream_utilization", report.stream_utilization},
            {"stage_busy_ticks", report.stage_busy},
            {"stage_idle_ticks", report.stage_idle},
            {"events", report.events.size()}};
}

void write_trace_csv(const SimReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << "time,stream,stage,batch,kind\n";
    for (const SimEvent& e : report.events)
        out << e.time << ',' << e.stream << ',' << e.stage << ',' << e.batch << ','
            << (e.kind == EventKind::start ? "start" : "end") << '\n';
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

void save_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace qrmark
