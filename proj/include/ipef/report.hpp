// Copyright (c) 2026 The ipef Authors
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

#ifndef IPEF_REPORT_HPP
#define IPEF_REPORT_HPP

#include "ipef/montecarlo.hpp"
#include "ipef/stats.hpp"

#include <string>
#include <vector>

namespace ipef {

std::string test_report_to_json(const TestReport& report);
TestReport test_report_from_json(const std::string& text);

std::string power_table_to_json(const PowerTable& table);

// CSV mirroring the study tables: rows are alternatives, columns the
// statistic orders; percentages rounded half-up to integers.
std::string power_table_to_csv(const PowerTable& table);

// Full-precision CSV (no rounding), for downstream numeric use.
std::string power_table_to_csv_raw(const PowerTable& table);

std::string changepoint_to_csv(const ChangePointResult& result);
std::string changepoint_to_json(const ChangePointResult& result);

std::string rate_points_to_csv(const std::vector<RatePoint>& points);
std::string lil_to_csv(const LilDiagnostic& diag);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace ipef

#endif // IPEF_REPORT_HPP
