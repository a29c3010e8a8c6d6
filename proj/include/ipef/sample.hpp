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

#ifndef IPEF_SAMPLE_HPP
#define IPEF_SAMPLE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace ipef {

// A batch of real observations with cached order statistics. Ties are
// allowed: counts are taken with multiplicity.
class Sample {
public:
    Sample() = default;
    explicit Sample(std::vector<double> values);

    std::size_t size() const { return sorted_.size(); }
    bool empty() const { return sorted_.empty(); }

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& sorted() const { return sorted_; }

    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }

    // #{i : X_i <= t} and #{i : X_i < t}.
    long count_le(double t) const;
    long count_lt(double t) const;

private:
    std::vector<double> values_; // insertion order (change-point scans need it)
    std::vector<double> sorted_;
};

// One decimal per line; blank lines and '#' comments ignored. Parsing is
// locale independent ('.' radix).
Sample read_sample_text(const std::string& path);

// CSV with a header row; extracts the named column.
Sample read_sample_csv(const std::string& path, const std::string& column);

// Dispatch on extension: ".csv" requires a column name, anything else is
// treated as plain text.
Sample read_sample(const std::string& path, const std::string& csv_column = "");

} // namespace ipef

#endif // IPEF_SAMPLE_HPP
