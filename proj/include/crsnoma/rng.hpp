// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace crsnoma {

// Counter-based stream generator.
//
// Output i of a stream is splitmix64_mix(key + (i + 1) * kGamma), where the key
// is derived from (seed, stream_index) by two rounds of the same finalizer.
// Every stream is therefore a pure function of (seed, stream_index, counter):
// Monte-Carlo chunk c always sees the same numbers no matter which worker runs
// it. The algorithm is fixed for the 1.x releases; changing it changes every
// golden file.
class CounterRng {
public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream_index)
        : key_(mix(mix(seed) ^ (stream_index * 0xd1b54a32d192ed03ULL + kGamma))) {}

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        ++counter_;
        return mix(key_ + counter_ * kGamma);
    }

    [[nodiscard]] constexpr std::uint64_t counter() const { return counter_; }

    /// Uniform on (0, 1] with 53 random bits.
    double uniform_open_closed() {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    /// Exponential with the given mean. An exact zero (u == 1) is rejected and
    /// redrawn so that Q / lambda stays finite.
    double exponential(double mean) {
        for (;;) {
            const double e = -std::log(uniform_open_closed());
            if (e > 0.0) {
                return mean * e;
            }
        }
    }

    friend constexpr bool operator==(const CounterRng&, const CounterRng&) = default;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace crsnoma
