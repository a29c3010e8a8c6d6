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

#include "ipef/sample.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ipef {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("Sample: at least one observation required");
    }
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

long Sample::count_le(double t) const {
    return static_cast<long>(std::upper_bound(sorted_.begin(), sorted_.end(), t) -
                             sorted_.begin());
}

long Sample::count_lt(double t) const {
    return static_cast<long>(std::lower_bound(sorted_.begin(), sorted_.end(), t) -
                             sorted_.begin());
}

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& tok, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::runtime_error("unparsable number '" + tok + "' in " + where);
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(strip(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

Sample read_sample_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        values.push_back(parse_double(line, path));
    }
    if (values.empty()) throw std::runtime_error("no observations in " + path);
    return Sample(std::move(values));
}

Sample read_sample_csv(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV file: " + path);
    auto header = split_csv_line(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == column) { col = i; break; }
    }
    if (col == header.size()) {
        throw std::runtime_error("column '" + column + "' not found in " + path);
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (col >= fields.size()) {
            throw std::runtime_error("short CSV row in " + path);
        }
        values.push_back(parse_double(fields[col], path));
    }
    if (values.empty()) throw std::runtime_error("no observations in " + path);
    return Sample(std::move(values));
}

Sample read_sample(const std::string& path, const std::string& csv_column) {
    bool is_csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
    if (is_csv) {
        if (csv_column.empty()) {
            throw std::runtime_error("CSV input requires a column name: " + path);
        }
        return read_sample_csv(path, csv_column);
    }
    return read_sample_text(path);
}

} // namespace ipef
