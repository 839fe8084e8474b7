// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------
//
// Average achievable rates of the two superposed symbols under the optimal
// peak-interference power policy P* = Q / lambda, for single-antenna nodes and
// for selection combining at the relay and the SU receiver.
//
// s1 is decoded at both the relay and the SU receiver while treating s2 as
// noise; s2 is decoded at the relay after SIC and forwarded in the second slot.
// Rates are in bits/s/Hz and carry the factor 1/2 of the two-slot protocol.

#pragma once

#include "crsnoma/channels.hpp"
#include "crsnoma/numeric.hpp"
#include "crsnoma/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string_view>

namespace crsnoma {

/// NOMA power-allocation pair with a1 + a2 = 1 and a1 > a2 > 0.
class PowerSplit {
public:
    PowerSplit(double a1, double a2) : a1_(a1), a2_(a2) {
        if (!(a2 > 0.0 && a1 > a2 && std::isfinite(a1))) {
            throw std::invalid_argument("PowerSplit: require a1 > a2 > 0");
        }
        if (std::abs(a1 + a2 - 1.0) > 1e-12) {
            throw std::invalid_argument("PowerSplit: a1 + a2 must equal 1");
        }
    }

    static PowerSplit from_a2(double a2) { return {1.0 - a2, a2}; }

    [[nodiscard]] double a1() const { return a1_; }
    [[nodiscard]] double a2() const { return a2_; }

    friend bool operator==(const PowerSplit&, const PowerSplit&) = default;

private:
    double a1_;
    double a2_;
};

enum class RateMethod { closed_form, quadrature_fallback };

constexpr std::string_view to_string(RateMethod m) {
    return m == RateMethod::closed_form ? "closed_form" : "quadrature_fallback";
}

struct RateValue {
    double bits;
    RateMethod method;
};

struct RateReport {
    double rate_s1;
    double rate_s2;
    double rate_sum;
    RateMethod method_s1;
    RateMethod method_s2;
};

/// Relative distance below which a closed-form denominator counts as zero.
inline constexpr double kDegenerateRelTol = 1e-8;

/// u * log2(u / v) / (u - v), continuous through u == v where it equals log2(e).
inline double log_ratio_kernel(double u, double v) {
    require_domain(u > 0.0 && v > 0.0 && std::isfinite(u) && std::isfinite(v),
                   "log_ratio_kernel: arguments must be positive and finite");
    const double diff = u - v;
    if (std::abs(diff) <= 1e-8 * std::max(u, v)) {
        const double t = diff / v;
        return kLog2e * (1.0 + t / 2.0 - t * t / 6.0);
    }
    const double t = diff / v;
    const double log_ratio = std::abs(t) < 0.5 ? std::log1p(t) : std::log(u / v);
    return u * kLog2e * log_ratio / diff;
}

namespace detail {

inline void require_interference_budget(double q, const char* fn) {
    require_domain(q > 0.0 && std::isfinite(q), std::string(fn) + ": q must be positive and finite");
}

}  // namespace detail

// --- integral forms ------------------------------------------------------------
//
// Direct numerical evaluation of the defining integrals. These back the
// degenerate-parameter fallback and serve as the cross-check for every closed
// form.

/// 0.5 * int_0^inf [log2(1 + q x) - log2(1 + a2 q x)] f(x) dx with f the density
/// of min(delta_sr, delta_sd) / lambda_sp.
inline double rate_s1_integral(double q, const ChannelProfile& p, const PowerSplit& split,
                               const AntennaConfig& antennas) {
    detail::require_interference_budget(q, "rate_s1_integral");
    const DerivedRateParams params(p);
    const double a2q = split.a2() * q;
    const auto integrand = [&](double x) {
        const double f = antennas.is_single() ? pdf_min_over_exp_ratio(x, params.phi(), p.omega_sp())
                                              : pdf_sc_min_over_exp_ratio(x, antennas, params, p.omega_sp());
        return (std::log1p(q * x) - std::log1p(a2q * x)) * f;
    };
    return 0.5 * kLog2e * quadrature::integrate_half_line(integrand);
}

/// 0.5 * log2(e) * q * int_0^inf S(x) / (1 + q x) dx with S the survival of
/// min(a2 delta_sr / lambda_sp, delta_rd / lambda_rp).
inline double rate_s2_integral(double q, const ChannelProfile& p, const PowerSplit& split,
                               const AntennaConfig& antennas) {
    detail::require_interference_budget(q, "rate_s2_integral");
    const auto integrand = [&](double x) {
        const double s = antennas.is_single() ? survival_Y(x, split.a2(), p) : survival_sc_Y(x, split.a2(), antennas, p);
        return s / (1.0 + q * x);
    };
    return 0.5 * kLog2e * q * quadrature::integrate_half_line(integrand);
}

// --- closed forms ----------------------------------------------------------------

/// Average rate of s1 with single antennas:
/// 0.5 [g(q, phi omega_sp) - g(a2 q, phi omega_sp)], g = log_ratio_kernel.
inline double rate_s1(double q, const ChannelProfile& p, const PowerSplit& split) {
    detail::require_interference_budget(q, "rate_s1");
    const double c = DerivedRateParams(p).phi() * p.omega_sp();
    return std::max(0.0, 0.5 * (log_ratio_kernel(q, c) - log_ratio_kernel(split.a2() * q, c)));
}

/// Average rate of s2 with single antennas, from the partial-fraction solution
/// of the survival integral. Falls back to quadrature when one of the three
/// denominators vanishes.
inline RateValue rate_s2(double q, const ChannelProfile& p, const PowerSplit& split) {
    detail::require_interference_budget(q, "rate_s2");
    const double a2 = split.a2();
    const double sr = p.omega_sr();
    const double sp = p.omega_sp();
    const double rd = p.omega_rd();
    const double rp = p.omega_rp();

    if (nearly_equal(rd * sp, a2 * rp * sr, kDegenerateRelTol) || nearly_equal(rd * q, rp, kDegenerateRelTol) ||
        nearly_equal(sp, a2 * sr * q, kDegenerateRelTol)) {
        return {rate_s2_integral(q, p, split, AntennaConfig::single()), RateMethod::quadrature_fallback};
    }

    const double scale = 0.5 * a2 * rd * sr * q / ((rd * sp - a2 * rp * sr) * (rd * q - rp) * (sp - a2 * sr * q));
    CompensatedSum bracket;
    bracket += rp * sp * std::log2(a2 * rp * sr / (rd * sp));
    bracket += a2 * rp * sr * q * std::log2(rd * q / rp);
    bracket += -rd * sp * q * std::log2(a2 * sr * q / sp);
    return {std::max(0.0, scale * bracket.value()), RateMethod::closed_form};
}

/// Average rate of s1 with selection combining over n_r relay and n_d SU-receiver
/// antennas: the kernel difference of rate_s1 summed over the order-statistic
/// expansion with weights (-1)^(k+j) C(n_r,k) C(n_d,j) and xi_kj in place of phi.
inline double rate_s1_sc(double q, const ChannelProfile& p, const PowerSplit& split, const AntennaConfig& antennas) {
    detail::require_interference_budget(q, "rate_s1_sc");
    const DerivedRateParams params(p);
    const double a2q = split.a2() * q;
    CompensatedSum s;
    for (int k = 1; k <= antennas.n_r(); ++k) {
        for (int j = 1; j <= antennas.n_d(); ++j) {
            const double w =
                alternating_sign(k + j) * static_cast<double>(binomial(antennas.n_r(), k) * binomial(antennas.n_d(), j));
            const double c = params.xi(k, j) * p.omega_sp();
            s += w * log_ratio_kernel(q, c);
            s += -w * log_ratio_kernel(a2q, c);
        }
    }
    return std::max(0.0, 0.5 * s.value());
}

/// Average rate of s2 with selection combining. Assembled from the three
/// partial-fraction families (relay ratio, relay-destination ratio, and their
/// cross terms); the divergent 1/(1+qx) pieces cancel through
/// selection_binomial_identity. Falls back to quadrature when any
/// k omega_rd omega_sp = j a2 omega_rp omega_sr, a2 omega_sr q = k omega_sp or
/// omega_rd q = j omega_rp.
inline RateValue rate_s2_sc(double q, const ChannelProfile& p, const PowerSplit& split,
                            const AntennaConfig& antennas) {
    detail::require_interference_budget(q, "rate_s2_sc");
    const double a2 = split.a2();
    const double sr = p.omega_sr();
    const double sp = p.omega_sp();
    const double rd = p.omega_rd();
    const double rp = p.omega_rp();
    const int nr = antennas.n_r();
    const int nd = antennas.n_d();

    bool degenerate = false;
    for (int k = 1; k <= nr && !degenerate; ++k) {
        degenerate = nearly_equal(a2 * sr * q, k * sp, kDegenerateRelTol);
        for (int j = 1; j <= nd && !degenerate; ++j) {
            degenerate = nearly_equal(k * rd * sp, j * a2 * rp * sr, kDegenerateRelTol);
        }
    }
    for (int j = 1; j <= nd && !degenerate; ++j) {
        degenerate = nearly_equal(rd * q, j * rp, kDegenerateRelTol);
    }
    if (degenerate) {
        return {rate_s2_integral(q, p, split, antennas), RateMethod::quadrature_fallback};
    }

    CompensatedSum s;
    for (int k = 1; k <= nr; ++k) {
        s += alternating_sign(k - 1) * static_cast<double>(binomial(nr, k)) * log_ratio_kernel(a2 * sr * q, k * sp);
    }
    for (int j = 1; j <= nd; ++j) {
        s += alternating_sign(j - 1) * static_cast<double>(binomial(nd, j)) * log_ratio_kernel(rd * q, j * rp);
    }
    for (int k = 1; k <= nr; ++k) {
        for (int j = 1; j <= nd; ++j) {
            const double w = alternating_sign(k + j) * static_cast<double>(binomial(nr, k) * binomial(nd, j));
            const double cross = k * rd * sp - j * a2 * rp * sr;
            const double relay_term =
                k * rd * rd * sp * std::log2(j * rp / (q * rd)) / (cross * (q * rd - j * rp));
            const double source_term =
                j * a2 * a2 * rp * sr * sr * std::log2(a2 * q * sr / (k * sp)) / (cross * (a2 * q * sr - k * sp));
            s += w * q * relay_term;
            s += w * q * source_term;
        }
    }
    return {std::max(0.0, 0.5 * s.value()), RateMethod::closed_form};
}

/// Sum rate of the two symbols. Single-antenna configurations use the
/// single-antenna forms; anything else uses the selection-combining forms.
inline RateReport sum_rate(double q, const ChannelProfile& p, const PowerSplit& split, const AntennaConfig& antennas) {
    double s1 = 0.0;
    RateValue s2{};
    if (antennas.is_single()) {
        s1 = rate_s1(q, p, split);
        s2 = rate_s2(q, p, split);
    } else {
        s1 = rate_s1_sc(q, p, split, antennas);
        s2 = rate_s2_sc(q, p, split, antennas);
    }
    return {s1, s2.bits, s1 + s2.bits, RateMethod::closed_form, s2.method};
}

}  // namespace crsnoma
