// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------
//
// Interference-budget sweeps: one row per (antenna config, q) with the closed
// forms next to their Monte-Carlo estimates, NOMA/OMA crossover detection, and
// CSV / JSON emission.

#pragma once

#include "crsnoma/channels.hpp"
#include "crsnoma/closed_form.hpp"
#include "crsnoma/montecarlo.hpp"
#include "crsnoma/numeric.hpp"
#include "crsnoma/outage.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crsnoma {

struct OutputSelection {
    bool rates_closed = true;
    bool rates_mc = true;
    bool oma_mc = true;
    bool outage_closed = true;
    bool outage_mc = true;

    [[nodiscard]] bool any_mc() const { return rates_mc || oma_mc || outage_mc; }
};

/// One point of the interference-budget axis. The dB value is what the user
/// supplied; the linear value is what every computation uses.
struct QPoint {
    double db;
    double linear;

    static QPoint from_db(double db) { return {db, db_to_linear(db)}; }
};

/// Evenly spaced grid from start_db to stop_db inclusive.
inline std::vector<QPoint> q_grid_db(double start_db, double stop_db, int points) {
    if (points < 1) {
        throw std::invalid_argument("q_grid: points must be at least 1");
    }
    std::vector<QPoint> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double db = points == 1 ? start_db : start_db + (stop_db - start_db) * i / (points - 1);
        grid.push_back(QPoint::from_db(db));
    }
    return grid;
}

struct SweepSpec {
    ChannelProfile profile = ChannelProfile::reference_scenario();
    PowerSplit split = PowerSplit::from_a2(0.1);
    std::vector<AntennaConfig> antenna_list{{1, 1}, {2, 2}, {3, 3}};
    double r1 = 1.0;
    double r2 = 1.0;
    std::vector<QPoint> q_grid = q_grid_db(-10.0, 30.0, 21);
    SimConfig sim{};
    OutputSelection outputs{};

    /// The evaluation scenario on the default -10..30 dB grid.
    static SweepSpec reference_scenario() { return {}; }

    void validate() const {
        if (antenna_list.empty()) {
            throw std::invalid_argument("sweep: antennas: list must not be empty");
        }
        if (q_grid.empty()) {
            throw std::invalid_argument("sweep: q_grid: must not be empty");
        }
        for (std::size_t i = 0; i < q_grid.size(); ++i) {
            if (!(q_grid[i].linear > 0.0 && std::isfinite(q_grid[i].linear))) {
                throw std::invalid_argument("sweep: q_grid[" + std::to_string(i) + "]: must be a finite dB value");
            }
            if (i > 0 && !(q_grid[i].linear > q_grid[i - 1].linear)) {
                throw std::invalid_argument("sweep: q_grid: must be strictly increasing");
            }
        }
        if (!(r1 > 0.0 && std::isfinite(r1))) {
            throw std::invalid_argument("sweep: targets.r1: must be positive");
        }
        if (!(r2 > 0.0 && std::isfinite(r2))) {
            throw std::invalid_argument("sweep: targets.r2: must be positive");
        }
        if (outputs.any_mc()) {
            sim.validate();
        }
    }
};

struct SweepRow {
    double q_db = 0.0;
    double q_linear = 0.0;
    int n_r = 1;
    int n_d = 1;
    std::optional<double> rate_s1_cf;
    std::optional<double> rate_s2_cf;
    std::optional<double> rate_sum_cf;
    std::optional<double> rate_sum_mc;
    std::optional<double> rate_sum_mc_stderr;
    std::optional<double> rate_oma_mc;
    std::optional<double> rate_oma_mc_stderr;
    std::optional<double> outage_s1_cf;
    std::optional<double> outage_s2_cf;
    std::optional<double> outage_s1_mc;
    std::optional<double> outage_s2_mc;
};

inline constexpr std::array<std::string_view, 15> kSweepColumns{
    "q_db",          "q_linear",           "n_r",          "n_d",          "rate_s1_cf",
    "rate_s2_cf",    "rate_sum_cf",        "rate_sum_mc",  "rate_sum_mc_stderr", "rate_oma_mc",
    "rate_oma_mc_stderr", "outage_s1_cf",  "outage_s2_cf", "outage_s1_mc", "outage_s2_mc"};

/// Evaluates one point. Every Monte-Carlo column is drawn from the same
/// stream set (seed from the spec), so curves along q share common random numbers.
inline SweepRow evaluate_point(const SweepSpec& spec, const AntennaConfig& antennas, const QPoint& q) {
    SweepRow row;
    row.q_db = q.db;
    row.q_linear = q.linear;
    row.n_r = antennas.n_r();
    row.n_d = antennas.n_d();

    const OutageTargets targets = make_targets(spec.r1, spec.r2, q.linear, spec.split);
    if (spec.outputs.rates_closed) {
        const RateReport r = sum_rate(q.linear, spec.profile, spec.split, antennas);
        row.rate_s1_cf = r.rate_s1;
        row.rate_s2_cf = r.rate_s2;
        row.rate_sum_cf = r.rate_sum;
    }
    if (spec.outputs.outage_closed) {
        row.outage_s1_cf = outage_s1(targets, spec.profile, spec.split, antennas);
        row.outage_s2_cf = outage_s2(targets, spec.profile, spec.split, antennas);
    }
    if (spec.outputs.any_mc()) {
        const PointEstimates mc = mc_point(targets, spec.profile, spec.split, antennas, spec.sim);
        if (spec.outputs.rates_mc) {
            row.rate_sum_mc = mc.noma.sum.mean;
            row.rate_sum_mc_stderr = mc.noma.sum.std_error;
        }
        if (spec.outputs.oma_mc) {
            row.rate_oma_mc = mc.oma.mean;
            row.rate_oma_mc_stderr = mc.oma.std_error;
        }
        if (spec.outputs.outage_mc) {
            row.outage_s1_mc = mc.outage.s1.mean;
            row.outage_s2_mc = mc.outage.s2.mean;
        }
    }
    return row;
}

/// One row per (antenna config, q), ordered by antenna config first.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.antenna_list.size() * spec.q_grid.size());
    for (const AntennaConfig& a : spec.antenna_list) {
        for (const QPoint& q : spec.q_grid) {
            rows.push_back(evaluate_point(spec, a, q));
        }
    }
    return rows;
}

// --- crossover ---------------------------------------------------------------------

struct Crossover {
    /// q (dB) where the NOMA sum rate first exceeds the OMA rate; empty when the
    /// sign never changes on the grid and NOMA never leads.
    std::optional<double> q_db;
    /// Set when NOMA already leads at the first grid point, so q_db is just the
    /// grid minimum rather than an interpolated sign change.
    bool at_boundary = false;
};

/// Expects rows of a single antenna config in increasing q, with rate_sum_cf
/// and rate_oma_mc present. Linear interpolation in dB of the rate difference.
inline Crossover find_crossover(std::span<const SweepRow> rows) {
    if (rows.empty()) {
        return {};
    }
    std::vector<double> diff;
    diff.reserve(rows.size());
    for (const SweepRow& r : rows) {
        if (!r.rate_sum_cf || !r.rate_oma_mc) {
            throw std::invalid_argument("find_crossover: rows need rate_sum_cf and rate_oma_mc");
        }
        diff.push_back(*r.rate_sum_cf - *r.rate_oma_mc);
    }
    if (diff.front() > 0.0) {
        return {rows.front().q_db, true};
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (diff[i - 1] <= 0.0 && diff[i] > 0.0) {
            const double t = -diff[i - 1] / (diff[i] - diff[i - 1]);
            return {rows[i - 1].q_db + t * (rows[i].q_db - rows[i - 1].q_db), false};
        }
    }
    return {};
}

struct CrossoverEntry {
    int n_r;
    int n_d;
    Crossover crossover;
};

/// find_crossover applied to each contiguous antenna-config block of a sweep table.
inline std::vector<CrossoverEntry> crossover_by_antennas(std::span<const SweepRow> rows) {
    std::vector<CrossoverEntry> out;
    std::size_t begin = 0;
    while (begin < rows.size()) {
        std::size_t end = begin;
        while (end < rows.size() && rows[end].n_r == rows[begin].n_r && rows[end].n_d == rows[begin].n_d) {
            ++end;
        }
        out.push_back({rows[begin].n_r, rows[begin].n_d, find_crossover(rows.subspan(begin, end - begin))});
        begin = end;
    }
    return out;
}

// --- emission -----------------------------------------------------------------------

enum class TableFormat { csv, json };

inline TableFormat parse_table_format(std::string_view s) {
    if (s == "csv") {
        return TableFormat::csv;
    }
    if (s == "json") {
        return TableFormat::json;
    }
    throw std::invalid_argument("format: expected csv or json, got '" + std::string(s) + "'");
}

namespace detail {

inline std::string format_double(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

/// Row values in column order; missing values stay empty.
inline std::array<std::optional<std::string>, kSweepColumns.size()> row_cells(const SweepRow& r) {
    const auto num = [](const std::optional<double>& v) -> std::optional<std::string> {
        return v ? std::optional<std::string>(format_double(*v)) : std::nullopt;
    };
    return {format_double(r.q_db),   format_double(r.q_linear), std::to_string(r.n_r), std::to_string(r.n_d),
            num(r.rate_s1_cf),       num(r.rate_s2_cf),         num(r.rate_sum_cf),    num(r.rate_sum_mc),
            num(r.rate_sum_mc_stderr), num(r.rate_oma_mc),      num(r.rate_oma_mc_stderr), num(r.outage_s1_cf),
            num(r.outage_s2_cf),     num(r.outage_s1_mc),       num(r.outage_s2_mc)};
}

}  // namespace detail

/// CSV with the fixed header row; a missing value is written as NA.
inline void write_csv(std::span<const SweepRow> rows, std::ostream& os) {
    for (std::size_t c = 0; c < kSweepColumns.size(); ++c) {
        os << (c ? "," : "") << kSweepColumns[c];
    }
    os << '\n';
    for (const SweepRow& r : rows) {
        const auto cells = detail::row_cells(r);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            os << (c ? "," : "") << cells[c].value_or("NA");
        }
        os << '\n';
    }
}

/// JSON array of row objects; a missing value is written as null.
inline void write_json(std::span<const SweepRow> rows, std::ostream& os) {
    os << '[';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cells = detail::row_cells(rows[i]);
        os << (i ? ",\n " : "\n ") << '{';
        for (std::size_t c = 0; c < cells.size(); ++c) {
            os << (c ? ", " : "") << '"' << kSweepColumns[c] << "\": " << cells[c].value_or("null");
        }
        os << '}';
    }
    os << (rows.empty() ? "]\n" : "\n]\n");
}

inline void write_table(std::span<const SweepRow> rows, TableFormat format, std::ostream& os) {
    if (format == TableFormat::csv) {
        write_csv(rows, os);
    } else {
        write_json(rows, os);
    }
}

/// Writes to `destination`; "-" means the given fallback stream (stdout in the CLI).
inline void emit(std::span<const SweepRow> rows, TableFormat format, const std::string& destination,
                 std::ostream& fallback) {
    if (destination.empty() || destination == "-") {
        write_table(rows, format, fallback);
        fallback.flush();
        return;
    }
    std::ofstream f(destination, std::ios::binary);
    if (!f) {
        throw std::runtime_error("emit: cannot open '" + destination + "' for writing");
    }
    write_table(rows, format, f);
    f.flush();
    if (!f) {
        throw std::runtime_error("emit: write to '" + destination + "' failed");
    }
}

}  // namespace crsnoma
