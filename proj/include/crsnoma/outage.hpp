// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------

#pragma once

#include "crsnoma/channels.hpp"
#include "crsnoma/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crsnoma {

/// Target rates and the thresholds they induce for one (q, split) pair.
///
/// eps_i = 2^(2 r_i) - 1 is the SINR needed to carry r_i over half the time.
/// In the ratio domain (gain / interference-link gain), s1 is decodable iff the
/// ratio is at least theta1 = eps1 / (q (a1 - eps1 a2)), and s2 at the relay
/// iff it is at least theta2 = eps2 / (a2 q). When a1 <= eps1 a2 the s1 SINR
/// ceiling a1 / a2 is below eps1: s1 is never decodable and theta1 is +inf.
struct OutageTargets {
    double r1 = 0.0;
    double r2 = 0.0;
    double q = 0.0;
    double a2 = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta = 0.0;
    bool feasible = false;

    [[nodiscard]] bool always_outage() const { return !feasible; }
};

inline double rate_to_sinr_threshold(double r) { return std::exp2(2.0 * r) - 1.0; }

inline OutageTargets make_targets(double r1, double r2, double q, const PowerSplit& split) {
    require_domain(r1 > 0.0 && std::isfinite(r1), "make_targets: r1 must be positive");
    require_domain(r2 > 0.0 && std::isfinite(r2), "make_targets: r2 must be positive");
    require_domain(q > 0.0 && std::isfinite(q), "make_targets: q must be positive");
    OutageTargets t;
    t.r1 = r1;
    t.r2 = r2;
    t.q = q;
    t.a2 = split.a2();
    t.eps1 = rate_to_sinr_threshold(r1);
    t.eps2 = rate_to_sinr_threshold(r2);
    const double margin = split.a1() - t.eps1 * split.a2();
    t.feasible = margin > 0.0;
    t.theta1 = t.feasible ? t.eps1 / (q * margin) : std::numeric_limits<double>::infinity();
    t.theta2 = t.eps2 / (split.a2() * q);
    t.theta = std::max(t.theta1, t.theta2);
    return t;
}

namespace detail {

inline void require_matching_split(const OutageTargets& t, const PowerSplit& split) {
    if (t.a2 != split.a2()) {
        throw std::invalid_argument("outage: targets were built for a different power split");
    }
}

/// Clamp a probability assembled from floating-point pieces; anything further
/// than 1e-12 outside [0, 1] is a bug, not roundoff.
inline double checked_probability(double p) {
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
        throw std::logic_error("outage: probability outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace detail

/// Pr(s1 fails at the relay or at the SU receiver) = Pr(X < theta1), with X the
/// (selection-combined) min-over-interference ratio.
inline double outage_s1(const OutageTargets& t, const ChannelProfile& p, const PowerSplit& split,
                        const AntennaConfig& antennas) {
    detail::require_matching_split(t, split);
    if (t.always_outage()) {
        return 1.0;
    }
    const DerivedRateParams params(p);
    const double v = antennas.is_single() ? cdf_min_over_exp_ratio(t.theta1, params.phi(), p.omega_sp())
                                          : cdf_sc_min_over_exp_ratio(t.theta1, antennas, params, p.omega_sp());
    return detail::checked_probability(v);
}

/// Pr(s2 outage) = F_sr(theta) + F_rd(eps2 / q) - F_sr(theta) F_rd(eps2 / q), where
/// F_sr is the CDF of delta_sr / lambda_sp and F_rd that of delta_rd / lambda_rp.
/// The three disjoint failure events (s1 at relay, s2 at relay, s2 at SU
/// receiver) collapse to this form through theta = max(theta1, theta2).
inline double outage_s2(const OutageTargets& t, const ChannelProfile& p, const PowerSplit& split,
                        const AntennaConfig& antennas) {
    detail::require_matching_split(t, split);
    if (t.always_outage()) {
        return 1.0;
    }
    const double x_rd = t.eps2 / t.q;
    double f_sr = 0.0;
    double f_rd = 0.0;
    if (antennas.is_single()) {
        f_sr = cdf_scaled_exp_ratio(t.theta, 1.0, p.omega_sr(), p.omega_sp());
        f_rd = cdf_scaled_exp_ratio(x_rd, 1.0, p.omega_rd(), p.omega_rp());
    } else {
        f_sr = cdf_sc_scaled_exp_ratio(t.theta, antennas.n_r(), 1.0, p.omega_sr(), p.omega_sp());
        f_rd = cdf_sc_scaled_exp_ratio(x_rd, antennas.n_d(), 1.0, p.omega_rd(), p.omega_rp());
    }
    return detail::checked_probability(f_sr + f_rd - f_sr * f_rd);
}

}  // namespace crsnoma
