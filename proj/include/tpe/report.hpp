// Copyright 2026 The tpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpe/sweep.hpp"

namespace tpe {

enum class ReportFormat { Csv, Json, Svg };

/// Parses a comma-separated list such as "csv,json". Throws ConfigError for unknown names.
std::set<ReportFormat> parse_formats(const std::string& list);

void write_csv(const SweepResult& result, std::ostream& out);
std::string to_csv(const SweepResult& result);

nlohmann::json to_json(const SweepResult& result);
SweepResult result_from_json(const nlohmann::json& j);

/// Line plot for one swept dimension, heatmap for two. An empty column picks the
/// first concurrence (or spectrum) column. Returns an empty string when there is no axis.
std::string to_svg(const SweepResult& result, const std::string& column = "");

/// Writes <dir>/<name>.<ext> for each format and returns the paths written.
std::vector<std::filesystem::path> emit_report(const SweepResult& result, const std::filesystem::path& dir,
                                               const std::set<ReportFormat>& formats);

}  // namespace tpe
