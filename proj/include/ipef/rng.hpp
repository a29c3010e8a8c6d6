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

#ifndef IPEF_RNG_HPP
#define IPEF_RNG_HPP

#include <cmath>
#include <cstdint>

namespace ipef {

// SplitMix64 output function (Steele, Lea & Flood 2014; Vigna 2015).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

// Counter-based stream: the i-th output is a pure function of (key, i), so a
// stream can be replayed or split without touching shared state. Substreams
// are derived by hashing the parent key with the child index; replicate-level
// parallelism forks one substream per replicate index and is therefore
// independent of the thread schedule.
class RngStream {
public:
    RngStream() : key_(0) {}
    explicit RngStream(std::uint64_t key) : key_(key) {}

    static RngStream seeded(std::uint64_t seed) {
        return RngStream(mix64(seed + UINT64_C(0x9E3779B97F4A7C15)));
    }

    // Child stream for a draw/replicate index; deterministic and collision
    // resistant for practical Monte Carlo sizes.
    RngStream fork(std::uint64_t index) const {
        std::uint64_t k = key_ ^ mix64(index + UINT64_C(0xD1B54A32D192ED03));
        return RngStream(mix64(k + UINT64_C(0x8BB84B93962EACC9)));
    }

    RngStream fork(std::uint64_t a, std::uint64_t b) const { return fork(a).fork(b); }
    RngStream fork(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        return fork(a).fork(b).fork(c);
    }

    std::uint64_t next_u64() {
        counter_ += UINT64_C(0x9E3779B97F4A7C15);
        return mix64(key_ + counter_);
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1]; safe as the argument of log().
    double uniform01_open_left() { return 1.0 - uniform01(); }

    // Standard normal via Box-Muller; the spare deviate is cached so one call
    // consumes either zero or two uniforms, keeping streams sequential.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform01_open_left()));
        double theta = 6.283185307179586476925286766559 * uniform01();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ipef

#endif // IPEF_RNG_HPP
