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

#include "ipef/report.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ipef {

using nlohmann::json;

std::string test_report_to_json(const TestReport& report) {
    json j;
    j["statistic_name"] = report.statistic_name;
    j["statistic"] = report.statistic;
    j["p"] = report.p;
    j["alpha"] = report.alpha;
    j["critical_value"] = report.critical_value;
    j["p_value"] = report.p_value;
    j["reject"] = report.reject;
    j["method"] = method_name(report.method);
    j["seed"] = report.seed;
    j["n_replications"] = report.n_replications;
    j["dist"] = report.dist_label;
    return j.dump(2) + "\n";
}

TestReport test_report_from_json(const std::string& text) {
    json j = json::parse(text);
    TestReport report;
    report.statistic_name = j.at("statistic_name").get<std::string>();
    report.statistic = j.at("statistic").get<double>();
    report.p = j.at("p").get<int>();
    report.alpha = j.at("alpha").get<double>();
    report.critical_value = j.at("critical_value").get<double>();
    report.p_value = j.at("p_value").get<double>();
    report.reject = j.at("reject").get<bool>();
    report.method = method_from_name(j.at("method").get<std::string>());
    report.seed = j.at("seed").get<std::uint64_t>();
    report.n_replications = j.at("n_replications").get<long>();
    report.dist_label = j.at("dist").get<std::string>();
    return report;
}

namespace {

json power_table_meta(const PowerTable& table) {
    json meta;
    meta["n"] = table.config.n;
    meta["alpha"] = table.config.alpha;
    meta["M_null"] = table.config.M_null;
    meta["M_power"] = table.config.M_power;
    meta["seed"] = table.config.seed;
    meta["statistic"] = table.config.stat == StatKind::ks
                            ? "S"
                            : (table.config.stat == StatKind::cvm ? "T" : "omega");
    meta["critical_values"] = table.critical_values;
    return meta;
}

} // namespace

std::string power_table_to_json(const PowerTable& table) {
    json j;
    j["meta"] = power_table_meta(table);
    j["p_list"] = table.p_list;
    json rows = json::array();
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        json row;
        row["alternative"] = table.row_labels[r];
        row["power_percent"] = table.rates[r];
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

namespace {

std::string csv_header(const PowerTable& table) {
    std::ostringstream out;
    out << "alternative";
    for (int p : table.p_list) out << ",S(" << p << ")";
    out << "\n";
    return out.str();
}

} // namespace

std::string power_table_to_csv(const PowerTable& table) {
    std::ostringstream out;
    out << csv_header(table);
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out << table.row_labels[r];
        for (double v : table.rates[r]) {
            out << ',' << static_cast<long>(std::floor(v + 0.5));
        }
        out << "\n";
    }
    return out.str();
}

std::string power_table_to_csv_raw(const PowerTable& table) {
    std::ostringstream out;
    out.precision(10);
    out << csv_header(table);
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out << table.row_labels[r];
        for (double v : table.rates[r]) out << ',' << v;
        out << "\n";
    }
    return out.str();
}

std::string changepoint_to_csv(const ChangePointResult& result) {
    std::ostringstream out;
    out.precision(12);
    out << "k,t,value\n";
    for (const auto& pt : result.profile) {
        out << pt.k << ',' << pt.t << ',' << pt.value << "\n";
    }
    return out.str();
}

std::string changepoint_to_json(const ChangePointResult& result) {
    json j;
    j["statistic"] = result.statistic;
    j["argmax_k"] = result.argmax_k;
    j["argmax_t"] = result.argmax_t;
    j["weighted"] = result.weighted;
    return j.dump(2) + "\n";
}

std::string rate_points_to_csv(const std::vector<RatePoint>& points) {
    std::ostringstream out;
    out.precision(10);
    out << "n,ks_distance\n";
    for (const auto& pt : points) out << pt.n << ',' << pt.ks_distance << "\n";
    return out.str();
}

std::string lil_to_csv(const LilDiagnostic& diag) {
    std::ostringstream out;
    out.precision(10);
    out << "path,n,normalized_sup,reference_constant\n";
    for (std::size_t path = 0; path < diag.trajectories.size(); ++path) {
        for (std::size_t i = 0; i < diag.n_list.size(); ++i) {
            out << path << ',' << diag.n_list[i] << ',' << diag.trajectories[path][i]
                << ',' << diag.reference_constant << "\n";
        }
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace ipef
