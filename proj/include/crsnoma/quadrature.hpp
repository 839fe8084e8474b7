// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------

#pragma once

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace crsnoma::quadrature {

/// Relative tolerance handed to the double-exponential rule. The integrands
/// here are O(1), so this keeps the absolute error well under 1e-9.
inline constexpr double kRelTolerance = 1e-12;

namespace detail {

inline boost::math::quadrature::tanh_sinh<double>& engine() {
    // Abscissa tables are built lazily per thread; the object is not shared.
    thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    return rule;
}

}  // namespace detail

struct Result {
    double value;
    double error_estimate;
};

/// Integral of f over [a, b]; b may be +infinity. Endpoint singularities of
/// logarithmic type are handled by the tanh-sinh change of variables.
template <typename F>
Result integrate(F&& f, double a, double b) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = detail::engine().integrate(f, a, b, kRelTolerance, &err, &l1);
    if (!std::isfinite(v)) {
        throw std::runtime_error("quadrature: non-finite integral");
    }
    return {v, err};
}

/// Integral of f over [0, +infinity).
template <typename F>
double integrate_half_line(F&& f) {
    return integrate(std::forward<F>(f), 0.0, std::numeric_limits<double>::infinity()).value;
}

}  // namespace crsnoma::quadrature
