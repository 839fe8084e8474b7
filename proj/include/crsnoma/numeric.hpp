// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crsnoma {

/// Largest supported receive-antenna count at the relay and at the SU receiver.
/// Alternating binomial sums lose too many digits past this.
inline constexpr int kMaxAntennas = 16;

inline constexpr double kLog2e = std::numbers::log2e;

inline void require_domain(bool ok, const std::string& what) {
    if (!ok) {
        throw std::domain_error(what);
    }
}

/// Neumaier-compensated accumulator used for every alternating binomial sum.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;

    constexpr void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    constexpr CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }

    [[nodiscard]] constexpr double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

namespace detail {

constexpr auto make_binomial_table() {
    std::array<std::array<std::int64_t, kMaxAntennas + 1>, kMaxAntennas + 1> t{};
    for (int n = 0; n <= kMaxAntennas; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
    }
    return t;
}

inline constexpr auto kBinomial = make_binomial_table();

}  // namespace detail

/// Exact binomial coefficient C(n, k) for 0 <= k <= n <= kMaxAntennas.
constexpr std::int64_t binomial(int n, int k) {
    if (n < 0 || n > kMaxAntennas || k < 0 || k > n) {
        throw std::domain_error("binomial: arguments out of range");
    }
    return detail::kBinomial[n][k];
}

/// (-1)^k as a double.
constexpr double alternating_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) {
    require_domain(linear > 0.0, "linear_to_db: argument must be positive");
    return 10.0 * std::log10(linear);
}

/// True when a and b agree to within `rel_tol` relative to the larger magnitude.
inline bool nearly_equal(double a, double b, double rel_tol) {
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace crsnoma
