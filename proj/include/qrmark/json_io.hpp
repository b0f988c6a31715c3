#pragma once

#include <filesystem>

#include <json.hpp>

#include "qrmark/detect.hpp"
#include "qrmark/sched.hpp"
#include "qrmark/sim.hpp"

namespace qrmark {

// All emitted documents carry {"schema": 1}.
inline constexpr int kReportSchema = 1;

nlohmann::json profile_to_json(const StageProfile& profile);
StageProfile profile_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const StreamPlan& plan);
StreamPlan plan_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const StreamSchedule& schedule);
StreamSchedule schedule_from_json(const nlohmann::json& j);

// `deterministic` zeroes wall-clock latency fields so reports are
// byte-identical across runs.
nlohmann::json record_to_json(const DetectionRecord& rec, bool deterministic);

nlohmann::json sim_report_to_json(const SimReport& report);

void write_trace_csv(const SimReport& report, const std::filesystem::path& path);

nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const nlohmann::json& j, const std::filesystem::path& path);

} // namespace qrmark
