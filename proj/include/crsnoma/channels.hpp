// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------
//
// Fading statistics of the five Rayleigh links: the parameter records, joint
// sampling of one channel realization, and the densities / distribution
// functions of the ratio variables that drive the rate and outage analysis.
//
// Links: s = SU transmitter, r = relay, d = SU receiver, p = PU receiver.
// All powers are linear and normalized to unit noise variance.

#pragma once

#include "crsnoma/numeric.hpp"
#include "crsnoma/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace crsnoma {

/// Mean-square gains of the five links.
class ChannelProfile {
public:
    ChannelProfile(double omega_sr, double omega_sd, double omega_rd, double omega_sp, double omega_rp)
        : omega_sr_(omega_sr), omega_sd_(omega_sd), omega_rd_(omega_rd), omega_sp_(omega_sp), omega_rp_(omega_rp) {
        check("omega_sr", omega_sr);
        check("omega_sd", omega_sd);
        check("omega_rd", omega_rd);
        check("omega_sp", omega_sp);
        check("omega_rp", omega_rp);
        if (!(omega_sd < omega_sr)) {
            throw std::invalid_argument("ChannelProfile: omega_sd must be smaller than omega_sr");
        }
    }

    /// The evaluation scenario: weak direct link, strong relay links.
    static ChannelProfile reference_scenario() { return {10.0, 1.0, 10.0, 5.5, 5.5}; }

    [[nodiscard]] double omega_sr() const { return omega_sr_; }
    [[nodiscard]] double omega_sd() const { return omega_sd_; }
    [[nodiscard]] double omega_rd() const { return omega_rd_; }
    [[nodiscard]] double omega_sp() const { return omega_sp_; }
    [[nodiscard]] double omega_rp() const { return omega_rp_; }

    friend bool operator==(const ChannelProfile&, const ChannelProfile&) = default;

private:
    static void check(const char* name, double v) {
        if (!(std::isfinite(v) && v > 0.0)) {
            throw std::invalid_argument(std::string("ChannelProfile: ") + name + " must be positive and finite");
        }
    }

    double omega_sr_;
    double omega_sd_;
    double omega_rd_;
    double omega_sp_;
    double omega_rp_;
};

/// Receive-antenna counts at the relay (n_r) and at the SU receiver (n_d).
class AntennaConfig {
public:
    AntennaConfig(int n_r, int n_d) : n_r_(n_r), n_d_(n_d) {
        if (n_r < 1 || n_r > kMaxAntennas || n_d < 1 || n_d > kMaxAntennas) {
            throw std::invalid_argument("AntennaConfig: antenna counts must lie in [1, " +
                                        std::to_string(kMaxAntennas) + "]");
        }
    }

    static AntennaConfig single() { return {1, 1}; }

    [[nodiscard]] int n_r() const { return n_r_; }
    [[nodiscard]] int n_d() const { return n_d_; }
    [[nodiscard]] bool is_single() const { return n_r_ == 1 && n_d_ == 1; }

    friend bool operator==(const AntennaConfig&, const AntennaConfig&) = default;

private:
    int n_r_;
    int n_d_;
};

/// Fixed-capacity vector of per-antenna fading powers.
class GainVector {
public:
    GainVector() = default;

    void push_back(double v) {
        if (size_ == kMaxAntennas) {
            throw std::length_error("GainVector: capacity exceeded");
        }
        values_[size_++] = v;
    }

    [[nodiscard]] int size() const { return size_; }
    [[nodiscard]] double operator[](int i) const { return values_[i]; }
    [[nodiscard]] std::span<const double> view() const { return {values_.data(), static_cast<std::size_t>(size_)}; }
    [[nodiscard]] double max() const {
        const auto v = view();
        return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    }

private:
    std::array<double, kMaxAntennas> values_{};
    int size_ = 0;
};

/// One joint realization of all fading powers |h|^2. The delta fields are the
/// selection-combining maxima of the corresponding antenna vectors; for a
/// single antenna they coincide with the lone entry.
struct ChannelDraw {
    GainVector lambda_sr;
    GainVector lambda_sd;
    GainVector lambda_rd;
    double lambda_sp = 0.0;
    double lambda_rp = 0.0;
    double delta_sr = 0.0;
    double delta_sd = 0.0;
    double delta_rd = 0.0;
};

/// phi = 1/omega_sr + 1/omega_sd and its antenna-indexed generalization
/// xi(k, j) = k/omega_sr + j/omega_sd.
class DerivedRateParams {
public:
    explicit DerivedRateParams(const ChannelProfile& p)
        : inv_sr_(1.0 / p.omega_sr()), inv_sd_(1.0 / p.omega_sd()) {}

    [[nodiscard]] double phi() const { return xi(1, 1); }
    [[nodiscard]] double xi(int k, int j) const { return k * inv_sr_ + j * inv_sd_; }

private:
    double inv_sr_;
    double inv_sd_;
};

/// Samples every link independently from an exponential law with the link's
/// mean. Draw order is fixed: sr antennas, sd antennas, rd antennas, sp, rp.
inline ChannelDraw draw_channels(const ChannelProfile& profile, const AntennaConfig& antennas, CounterRng& rng) {
    ChannelDraw d;
    for (int i = 0; i < antennas.n_r(); ++i) {
        d.lambda_sr.push_back(rng.exponential(profile.omega_sr()));
    }
    for (int j = 0; j < antennas.n_d(); ++j) {
        d.lambda_sd.push_back(rng.exponential(profile.omega_sd()));
    }
    for (int j = 0; j < antennas.n_d(); ++j) {
        d.lambda_rd.push_back(rng.exponential(profile.omega_rd()));
    }
    d.lambda_sp = rng.exponential(profile.omega_sp());
    d.lambda_rp = rng.exponential(profile.omega_rp());
    d.delta_sr = d.lambda_sr.max();
    d.delta_sd = d.lambda_sd.max();
    d.delta_rd = d.lambda_rd.max();
    return d;
}

namespace detail {

inline void require_nonnegative_x(double x, const char* fn) {
    require_domain(x >= 0.0 && !std::isnan(x), std::string(fn) + ": x must be nonnegative");
}

inline void require_power_weight(double a2, const char* fn) {
    require_domain(a2 > 0.0 && a2 < 1.0, std::string(fn) + ": a2 must lie in (0, 1)");
}

inline void require_antennas(int n, const char* fn) {
    require_domain(n >= 1 && n <= kMaxAntennas,
                   std::string(fn) + ": antenna count must lie in [1, " + std::to_string(kMaxAntennas) + "]");
}

inline double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace detail

// --- single-antenna ratio laws ------------------------------------------------

/// Density of min(lambda_sr, lambda_sd) / lambda_sp:
/// phi * omega_sp / (1 + phi * omega_sp * x)^2.
inline double pdf_min_over_exp_ratio(double x, double phi, double omega_sp) {
    detail::require_nonnegative_x(x, "pdf_min_over_exp_ratio");
    const double c = phi * omega_sp;
    const double den = 1.0 + c * x;
    return c / (den * den);
}

inline double cdf_min_over_exp_ratio(double x, double phi, double omega_sp) {
    detail::require_nonnegative_x(x, "cdf_min_over_exp_ratio");
    if (std::isinf(x)) {
        return 1.0;
    }
    const double cx = phi * omega_sp * x;
    return cx / (1.0 + cx);
}

/// CDF of scale * lambda_num / lambda_den for independent exponentials with
/// means omega_num and omega_den. scale = 1 gives the plain ratio law.
inline double cdf_scaled_exp_ratio(double x, double scale, double omega_num, double omega_den) {
    detail::require_nonnegative_x(x, "cdf_scaled_exp_ratio");
    require_domain(scale > 0.0 && scale <= 1.0, "cdf_scaled_exp_ratio: scale must lie in (0, 1]");
    if (std::isinf(x)) {
        return 1.0;
    }
    const double t = omega_den * x;
    return t / (scale * omega_num + t);
}

/// Pr(min(a2 lambda_sr / lambda_sp, lambda_rd / lambda_rp) > x).
inline double survival_Y(double x, double a2, const ChannelProfile& p) {
    detail::require_nonnegative_x(x, "survival_Y");
    detail::require_power_weight(a2, "survival_Y");
    if (std::isinf(x)) {
        return 0.0;
    }
    const double a = a2 * p.omega_sr();
    return (a * p.omega_rd()) / ((a + p.omega_sp() * x) * (p.omega_rd() + p.omega_rp() * x));
}

// --- selection combining ------------------------------------------------------

/// CDF of the maximum of n i.i.d. exponentials with mean omega, evaluated with
/// the alternating binomial expansion 1 - sum_k (-1)^(k-1) C(n,k) e^(-k x / omega).
inline double cdf_sc_max(double x, int n, double omega) {
    detail::require_nonnegative_x(x, "cdf_sc_max");
    detail::require_antennas(n, "cdf_sc_max");
    if (std::isinf(x)) {
        return 1.0;
    }
    CompensatedSum s;
    s += 1.0;
    for (int k = 1; k <= n; ++k) {
        s += -alternating_sign(k - 1) * static_cast<double>(binomial(n, k)) * std::exp(-k * x / omega);
    }
    return detail::clamp_probability(s.value());
}

/// Density of min(delta_sr, delta_sd) / lambda_sp with n_r and n_d antennas:
/// sum_{k,j} (-1)^(k+j) C(n_r,k) C(n_d,j) xi_kj omega_sp / (1 + xi_kj omega_sp x)^2.
inline double pdf_sc_min_over_exp_ratio(double x, const AntennaConfig& antennas, const DerivedRateParams& params,
                                        double omega_sp) {
    detail::require_nonnegative_x(x, "pdf_sc_min_over_exp_ratio");
    CompensatedSum s;
    for (int k = 1; k <= antennas.n_r(); ++k) {
        for (int j = 1; j <= antennas.n_d(); ++j) {
            const double c = params.xi(k, j) * omega_sp;
            const double den = 1.0 + c * x;
            s += alternating_sign(k + j) * static_cast<double>(binomial(antennas.n_r(), k) * binomial(antennas.n_d(), j)) *
                 c / (den * den);
        }
    }
    return std::max(0.0, s.value());
}

/// CDF matching pdf_sc_min_over_exp_ratio; the s1 outage under selection combining.
inline double cdf_sc_min_over_exp_ratio(double x, const AntennaConfig& antennas, const DerivedRateParams& params,
                                        double omega_sp) {
    detail::require_nonnegative_x(x, "cdf_sc_min_over_exp_ratio");
    if (std::isinf(x)) {
        return 1.0;
    }
    CompensatedSum s;
    for (int k = 1; k <= antennas.n_r(); ++k) {
        for (int j = 1; j <= antennas.n_d(); ++j) {
            const double cx = params.xi(k, j) * omega_sp * x;
            s += alternating_sign(k + j) *
                 static_cast<double>(binomial(antennas.n_r(), k) * binomial(antennas.n_d(), j)) * cx / (1.0 + cx);
        }
    }
    return detail::clamp_probability(s.value());
}

/// Survival of scale * delta / lambda_den where delta is the maximum of n
/// exponentials with mean omega_num:
/// sum_k (-1)^(k-1) C(n,k) scale omega_num / (scale omega_num + k omega_den x).
inline double survival_sc_scaled_exp_ratio(double x, int n, double scale, double omega_num, double omega_den) {
    detail::require_nonnegative_x(x, "survival_sc_scaled_exp_ratio");
    detail::require_antennas(n, "survival_sc_scaled_exp_ratio");
    require_domain(scale > 0.0 && scale <= 1.0, "survival_sc_scaled_exp_ratio: scale must lie in (0, 1]");
    if (std::isinf(x)) {
        return 0.0;
    }
    const double a = scale * omega_num;
    CompensatedSum s;
    for (int k = 1; k <= n; ++k) {
        s += alternating_sign(k - 1) * static_cast<double>(binomial(n, k)) * a / (a + k * omega_den * x);
    }
    return detail::clamp_probability(s.value());
}

/// CDF of scale * delta / lambda_den:
/// sum_k (-1)^(k-1) C(n,k) k omega_den x / (scale omega_num + k omega_den x).
inline double cdf_sc_scaled_exp_ratio(double x, int n, double scale, double omega_num, double omega_den) {
    detail::require_nonnegative_x(x, "cdf_sc_scaled_exp_ratio");
    detail::require_antennas(n, "cdf_sc_scaled_exp_ratio");
    require_domain(scale > 0.0 && scale <= 1.0, "cdf_sc_scaled_exp_ratio: scale must lie in (0, 1]");
    if (std::isinf(x)) {
        return 1.0;
    }
    const double a = scale * omega_num;
    CompensatedSum s;
    for (int k = 1; k <= n; ++k) {
        const double t = k * omega_den * x;
        s += alternating_sign(k - 1) * static_cast<double>(binomial(n, k)) * t / (a + t);
    }
    return detail::clamp_probability(s.value());
}

/// Pr(min(a2 delta_sr / lambda_sp, delta_rd / lambda_rp) > x). The two ratios
/// are independent, so this is the product of their survival functions, which
/// expands to 1 - F1 - F2 + F1 F2.
inline double survival_sc_Y(double x, double a2, const AntennaConfig& antennas, const ChannelProfile& p) {
    detail::require_nonnegative_x(x, "survival_sc_Y");
    detail::require_power_weight(a2, "survival_sc_Y");
    return survival_sc_scaled_exp_ratio(x, antennas.n_r(), a2, p.omega_sr(), p.omega_sp()) *
           survival_sc_scaled_exp_ratio(x, antennas.n_d(), 1.0, p.omega_rd(), p.omega_rp());
}

/// The bracketed coefficient
/// 1 - sum_k (-1)^(k-1) C(N_r,k) - sum_j (-1)^(j-1) C(N_d,j) + sum_{k,j} (-1)^(k+j) C(N_r,k) C(N_d,j)
/// in exact integer arithmetic. It vanishes for every valid antenna pair, which
/// is what lets the divergent 1/(1+Qx) integrals cancel in the s2 rate.
inline std::int64_t selection_binomial_identity(int n_r, int n_d) {
    detail::require_antennas(n_r, "selection_binomial_identity");
    detail::require_antennas(n_d, "selection_binomial_identity");
    std::int64_t sum_r = 0;
    std::int64_t sum_d = 0;
    std::int64_t sum_rd = 0;
    for (int k = 1; k <= n_r; ++k) {
        sum_r += ((k - 1) % 2 == 0 ? 1 : -1) * binomial(n_r, k);
    }
    for (int j = 1; j <= n_d; ++j) {
        sum_d += ((j - 1) % 2 == 0 ? 1 : -1) * binomial(n_d, j);
    }
    for (int k = 1; k <= n_r; ++k) {
        for (int j = 1; j <= n_d; ++j) {
            sum_rd += ((k + j) % 2 == 0 ? 1 : -1) * binomial(n_r, k) * binomial(n_d, j);
        }
    }
    return 1 - sum_r - sum_d + sum_rd;
}

}  // namespace crsnoma
