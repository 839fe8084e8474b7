// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------
//
// Draw-by-draw simulation of the two-slot protocol: optimal peak-interference
// power policies, instantaneous SINRs, the SIC chain at the relay and MRC at
// the SU receiver for the OMA baseline. Estimates are sample means of the
// per-draw integrands with their standard errors.
//
// Work is split into chunks of `chunk_size` draws. Chunk c always consumes the
// stream CounterRng(seed, c), and partial statistics are merged in chunk
// order, so results do not depend on the number of worker threads.

#pragma once

#include "crsnoma/channels.hpp"
#include "crsnoma/closed_form.hpp"
#include "crsnoma/outage.hpp"
#include "crsnoma/rng.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace crsnoma {

struct SimConfig {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t chunk_size = 1u << 16;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    static constexpr std::uint64_t kMinSamples = 1000;

    void validate() const {
        if (n_samples < kMinSamples) {
            throw std::invalid_argument("SimConfig: n_samples must be at least 1000");
        }
        if (chunk_size == 0) {
            throw std::invalid_argument("SimConfig: chunk_size must be positive");
        }
    }
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;

    friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// Streaming mean / second central moment with pairwise merge.
class RunningStats {
public:
    void push(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    void merge(const RunningStats& o) {
        if (o.n_ == 0) {
            return;
        }
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(n_ + o.n_);
        const double d = o.mean_ - mean_;
        mean_ += d * static_cast<double>(o.n_) / n;
        m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
        n_ += o.n_;
    }

    [[nodiscard]] Estimate estimate() const {
        const double var = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
        return {mean_, n_ > 0 ? std::sqrt(var / static_cast<double>(n_)) : 0.0, n_};
    }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Runs `per_draw(rng) -> std::array<double, K>` sim.n_samples times over
/// deterministic chunked streams and returns one Estimate per component.
template <std::size_t K, typename PerDraw>
std::array<Estimate, K> run_chunked(const SimConfig& sim, PerDraw&& per_draw) {
    sim.validate();
    const std::uint64_t n_chunks = (sim.n_samples + sim.chunk_size - 1) / sim.chunk_size;
    std::vector<std::array<RunningStats, K>> partial(n_chunks);

    std::atomic<std::uint64_t> next{0};
    const auto worker = [&] {
        for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
            CounterRng rng(sim.seed, c);
            const std::uint64_t begin = c * sim.chunk_size;
            const std::uint64_t count = std::min(sim.chunk_size, sim.n_samples - begin);
            auto& stats = partial[c];
            for (std::uint64_t i = 0; i < count; ++i) {
                const std::array<double, K> v = per_draw(rng);
                for (std::size_t k = 0; k < K; ++k) {
                    stats[k].push(v[k]);
                }
            }
        }
    };

    unsigned threads = sim.threads != 0 ? sim.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    std::array<RunningStats, K> total{};
    for (const auto& chunk : partial) {
        for (std::size_t k = 0; k < K; ++k) {
            total[k].merge(chunk[k]);
        }
    }
    std::array<Estimate, K> out{};
    for (std::size_t k = 0; k < K; ++k) {
        out[k] = total[k].estimate();
    }
    return out;
}

/// Instantaneous SINRs of one draw under P_s = q / lambda_sp, P_r = q / lambda_rp,
/// using the selection-combined gains (equal to the lone gain for one antenna).
struct SinrBundle {
    double gamma_sr1;  // s1 at the relay, s2 as noise
    double gamma_sr2;  // s2 at the relay after SIC
    double gamma_sd;   // s1 at the SU receiver, s2 as noise
    double gamma_rd;   // s2 at the SU receiver in the second slot
};

inline SinrBundle instantaneous_sinrs(const ChannelDraw& d, double q, const PowerSplit& split) {
    const double ps = q / d.lambda_sp;
    const double pr = q / d.lambda_rp;
    const double sr = d.delta_sr * ps;
    const double sd = d.delta_sd * ps;
    return {
        split.a1() * sr / (split.a2() * sr + 1.0),
        split.a2() * sr,
        split.a1() * sd / (split.a2() * sd + 1.0),
        d.delta_rd * pr,
    };
}

struct NomaRateEstimates {
    Estimate s1;
    Estimate s2;
    Estimate sum;
};

inline NomaRateEstimates mc_rate_noma(double q, const ChannelProfile& profile, const PowerSplit& split,
                                      const AntennaConfig& antennas, const SimConfig& sim) {
    require_domain(q > 0.0 && std::isfinite(q), "mc_rate_noma: q must be positive");
    const auto est = run_chunked<3>(sim, [&](CounterRng& rng) {
        const SinrBundle g = instantaneous_sinrs(draw_channels(profile, antennas, rng), q, split);
        const double c1 = 0.5 * kLog2e * std::log1p(std::min(g.gamma_sr1, g.gamma_sd));
        const double c2 = 0.5 * kLog2e * std::log1p(std::min(g.gamma_sr2, g.gamma_rd));
        return std::array<double, 3>{c1, c2, c1 + c2};
    });
    return {est[0], est[1], est[2]};
}

/// OMA baseline: s1 in slot one, relay retransmission in slot two, MRC of both
/// copies at the SU receiver. Rate 0.5 log2(1 + q Z) with
/// Z = min(delta_sr / lambda_sp, delta_sd / lambda_sp + delta_rd / lambda_rp).
inline Estimate mc_rate_oma(double q, const ChannelProfile& profile, const AntennaConfig& antennas,
                            const SimConfig& sim) {
    require_domain(q > 0.0 && std::isfinite(q), "mc_rate_oma: q must be positive");
    const auto est = run_chunked<1>(sim, [&](CounterRng& rng) {
        const ChannelDraw d = draw_channels(profile, antennas, rng);
        const double z = std::min(d.delta_sr / d.lambda_sp, d.delta_sd / d.lambda_sp + d.delta_rd / d.lambda_rp);
        return std::array<double, 1>{0.5 * kLog2e * std::log1p(q * z)};
    });
    return est[0];
}

/// Which of the disjoint s2 failure events a draw falls into.
enum class S2Outcome { decoded, s1_failed_at_relay, s2_failed_at_relay, s2_failed_at_destination };

inline S2Outcome classify_s2(const SinrBundle& g, const OutageTargets& t) {
    if (g.gamma_sr1 < t.eps1) {
        return S2Outcome::s1_failed_at_relay;
    }
    if (g.gamma_sr2 < t.eps2) {
        return S2Outcome::s2_failed_at_relay;
    }
    if (g.gamma_rd < t.eps2) {
        return S2Outcome::s2_failed_at_destination;
    }
    return S2Outcome::decoded;
}

/// s1 is lost when either the relay or the SU receiver cannot decode it.
inline bool s1_outage(const SinrBundle& g, const OutageTargets& t) {
    return g.gamma_sr1 < t.eps1 || g.gamma_sd < t.eps1;
}

struct OutageEstimates {
    Estimate s1;
    Estimate s2;
};

inline OutageEstimates mc_outage(const OutageTargets& targets, const ChannelProfile& profile, const PowerSplit& split,
                                 const AntennaConfig& antennas, const SimConfig& sim) {
    detail::require_matching_split(targets, split);
    const auto est = run_chunked<2>(sim, [&](CounterRng& rng) {
        const SinrBundle g = instantaneous_sinrs(draw_channels(profile, antennas, rng), targets.q, split);
        return std::array<double, 2>{s1_outage(g, targets) ? 1.0 : 0.0,
                                     classify_s2(g, targets) != S2Outcome::decoded ? 1.0 : 0.0};
    });
    return {est[0], est[1]};
}

/// Every estimator of one sweep point from a single pass over the draws. Each
/// component sees exactly the draws its standalone estimator would see, so the
/// results coincide with mc_rate_noma / mc_rate_oma / mc_outage bit for bit.
struct PointEstimates {
    NomaRateEstimates noma;
    Estimate oma;
    OutageEstimates outage;
};

inline PointEstimates mc_point(const OutageTargets& targets, const ChannelProfile& profile, const PowerSplit& split,
                               const AntennaConfig& antennas, const SimConfig& sim) {
    detail::require_matching_split(targets, split);
    const double q = targets.q;
    const auto est = run_chunked<6>(sim, [&](CounterRng& rng) {
        const ChannelDraw d = draw_channels(profile, antennas, rng);
        const SinrBundle g = instantaneous_sinrs(d, q, split);
        const double c1 = 0.5 * kLog2e * std::log1p(std::min(g.gamma_sr1, g.gamma_sd));
        const double c2 = 0.5 * kLog2e * std::log1p(std::min(g.gamma_sr2, g.gamma_rd));
        const double z = std::min(d.delta_sr / d.lambda_sp, d.delta_sd / d.lambda_sp + d.delta_rd / d.lambda_rp);
        return std::array<double, 6>{c1,
                                     c2,
                                     c1 + c2,
                                     0.5 * kLog2e * std::log1p(q * z),
                                     s1_outage(g, targets) ? 1.0 : 0.0,
                                     classify_s2(g, targets) != S2Outcome::decoded ? 1.0 : 0.0};
    });
    return {{est[0], est[1], est[2]}, est[3], {est[4], est[5]}};
}

}  // namespace crsnoma
