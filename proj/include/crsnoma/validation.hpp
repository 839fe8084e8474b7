// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------

#pragma once

#include "crsnoma/closed_form.hpp"
#include "crsnoma/montecarlo.hpp"
#include "crsnoma/outage.hpp"
#include "crsnoma/sweep.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace crsnoma {

/// One analytic-vs-reference comparison.
struct Check {
    std::string name;
    int n_r = 1;
    int n_d = 1;
    double q_db = 0.0;
    double analytic = 0.0;
    double reference = 0.0;
    /// Allowed |analytic - reference|.
    double tolerance = 0.0;

    [[nodiscard]] bool passed() const { return std::abs(analytic - reference) <= tolerance; }
};

/// Monte-Carlo z-score bound used for every statistical check.
inline constexpr double kSigmaBound = 3.0;
/// Closed form vs direct quadrature of the defining integral.
inline constexpr double kQuadratureTolerance = 1e-6;

/// Cross-checks every closed form in `spec` against (a) quadrature of its
/// defining integral and (b) the Monte-Carlo estimate. Rates use the estimate's
/// standard error; outages use the binomial error sqrt(p (1 - p) / N) of the
/// analytic p.
inline std::vector<Check> cross_validate(const SweepSpec& spec) {
    spec.validate();
    std::vector<Check> checks;
    const double n = static_cast<double>(spec.sim.n_samples);
    for (const AntennaConfig& a : spec.antenna_list) {
        for (const QPoint& q : spec.q_grid) {
            const auto add = [&](const char* name, double analytic, double reference, double tol) {
                checks.push_back({name, a.n_r(), a.n_d(), q.db, analytic, reference, tol});
            };
            const RateReport cf = sum_rate(q.linear, spec.profile, spec.split, a);
            add("rate_s1 vs quadrature", cf.rate_s1, rate_s1_integral(q.linear, spec.profile, spec.split, a),
                kQuadratureTolerance);
            add("rate_s2 vs quadrature", cf.rate_s2, rate_s2_integral(q.linear, spec.profile, spec.split, a),
                kQuadratureTolerance);

            const OutageTargets t = make_targets(spec.r1, spec.r2, q.linear, spec.split);
            const PointEstimates mc = mc_point(t, spec.profile, spec.split, a, spec.sim);
            add("rate_s1 vs monte-carlo", cf.rate_s1, mc.noma.s1.mean, kSigmaBound * mc.noma.s1.std_error);
            add("rate_s2 vs monte-carlo", cf.rate_s2, mc.noma.s2.mean, kSigmaBound * mc.noma.s2.std_error);

            const double p1 = outage_s1(t, spec.profile, spec.split, a);
            const double p2 = outage_s2(t, spec.profile, spec.split, a);
            add("outage_s1 vs monte-carlo", p1, mc.outage.s1.mean, kSigmaBound * std::sqrt(p1 * (1.0 - p1) / n));
            add("outage_s2 vs monte-carlo", p2, mc.outage.s2.mean, kSigmaBound * std::sqrt(p2 * (1.0 - p2) / n));
        }
    }
    return checks;
}

}  // namespace crsnoma
