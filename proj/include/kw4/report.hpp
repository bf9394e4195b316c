#pragma once

#include <string>

#include <json.hpp>

#include "kw4/runner.hpp"

namespace kw4 {

inline constexpr const char* kReportSchema = "kw4-report/1";

nlohmann::ordered_json report_json(const RunResult& r, bool include_wall_time = true);

// Two-space indented JSON with a trailing newline.
std::string report_text(const RunResult& r, bool include_wall_time = true);

void write_report(const RunResult& r, const std::string& path);

}  // namespace kw4
