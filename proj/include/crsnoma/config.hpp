// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------
//
// JSON sweep configuration. Every field is optional and falls back to the
// reference scenario. Units: link gains omega_* are linear mean-square values
// relative to unit noise power; q values are in dB; target rates in bits/s/Hz.
//
//   {
//     "profile":     {"omega_sr": 10, "omega_sd": 1, "omega_rd": 10,
//                     "omega_sp": 5.5, "omega_rp": 5.5},
//     "power_split": {"a2": 0.1},                      // a1 = 1 - a2 unless given
//     "antennas":    [[1, 1], [2, 2], {"n_r": 3, "n_d": 3}],
//     "targets":     {"r1": 1, "r2": 1},
//     "q_db":        {"start": -10, "stop": 30, "points": 21},  // or [-10, 0, 10]
//     "simulation":  {"samples": 1000000, "seed": 42, "chunk_size": 65536, "threads": 0},
//     "outputs":     ["rates_closed", "rates_mc", "oma_mc", "outage_closed", "outage_mc"]
//   }

#pragma once

#include "crsnoma/sweep.hpp"

#include "json.hpp"

#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>

namespace crsnoma {

/// Configuration error naming the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::invalid_argument("config: " + field + ": " + message), field_(field) {}

    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

namespace detail {

using nlohmann::json;

inline double number_at(const json& obj, const std::string& key, double fallback, const std::string& path) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(path + "." + key, "expected a number");
    }
    return v.get<double>();
}

inline std::uint64_t count_at(const json& obj, const std::string& key, std::uint64_t fallback,
                              const std::string& path) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ConfigError(path + "." + key, "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

inline const json& object_at(const json& root, const std::string& key) {
    const json& v = root.at(key);
    if (!v.is_object()) {
        throw ConfigError(key, "expected an object");
    }
    return v;
}

/// Runs `build`, rethrowing a plain invalid_argument as a ConfigError on `field`.
template <typename T>
T guarded(const std::string& field, const std::function<T()>& build) {
    try {
        return build();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

}  // namespace detail

inline SweepSpec sweep_spec_from_json(const nlohmann::json& root) {
    using detail::json;
    if (!root.is_object()) {
        throw ConfigError("<root>", "expected an object");
    }
    SweepSpec spec = SweepSpec::reference_scenario();

    if (root.contains("profile")) {
        const json& p = detail::object_at(root, "profile");
        const ChannelProfile& d = spec.profile;
        spec.profile = detail::guarded<ChannelProfile>("profile", [&] {
            return ChannelProfile(detail::number_at(p, "omega_sr", d.omega_sr(), "profile"),
                                  detail::number_at(p, "omega_sd", d.omega_sd(), "profile"),
                                  detail::number_at(p, "omega_rd", d.omega_rd(), "profile"),
                                  detail::number_at(p, "omega_sp", d.omega_sp(), "profile"),
                                  detail::number_at(p, "omega_rp", d.omega_rp(), "profile"));
        });
    }

    if (root.contains("power_split")) {
        const json& s = detail::object_at(root, "power_split");
        const double a2 = detail::number_at(s, "a2", spec.split.a2(), "power_split");
        const double a1 = detail::number_at(s, "a1", 1.0 - a2, "power_split");
        spec.split = detail::guarded<PowerSplit>("power_split", [&] { return PowerSplit(a1, a2); });
    }

    if (root.contains("antennas")) {
        const json& list = root.at("antennas");
        if (!list.is_array()) {
            throw ConfigError("antennas", "expected an array");
        }
        spec.antenna_list.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "antennas[" + std::to_string(i) + "]";
            const json& e = list[i];
            int n_r = 0;
            int n_d = 0;
            if (e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer()) {
                n_r = e[0].get<int>();
                n_d = e[1].get<int>();
            } else if (e.is_object() && e.contains("n_r") && e.contains("n_d") && e["n_r"].is_number_integer() &&
                       e["n_d"].is_number_integer()) {
                n_r = e["n_r"].get<int>();
                n_d = e["n_d"].get<int>();
            } else {
                throw ConfigError(path, "expected [n_r, n_d] or {\"n_r\": .., \"n_d\": ..}");
            }
            spec.antenna_list.push_back(detail::guarded<AntennaConfig>(path, [&] { return AntennaConfig(n_r, n_d); }));
        }
    }

    if (root.contains("targets")) {
        const json& t = detail::object_at(root, "targets");
        spec.r1 = detail::number_at(t, "r1", spec.r1, "targets");
        spec.r2 = detail::number_at(t, "r2", spec.r2, "targets");
    }

    if (root.contains("q_db")) {
        const json& g = root.at("q_db");
        if (g.is_array()) {
            spec.q_grid.clear();
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!g[i].is_number()) {
                    throw ConfigError("q_db[" + std::to_string(i) + "]", "expected a number");
                }
                spec.q_grid.push_back(QPoint::from_db(g[i].get<double>()));
            }
        } else if (g.is_object()) {
            const double start = detail::number_at(g, "start", -10.0, "q_db");
            const double stop = detail::number_at(g, "stop", 30.0, "q_db");
            const auto points = detail::count_at(g, "points", 21, "q_db");
            spec.q_grid = detail::guarded<std::vector<QPoint>>(
                "q_db", [&] { return q_grid_db(start, stop, static_cast<int>(points)); });
        } else {
            throw ConfigError("q_db", "expected a list of dB values or {start, stop, points}");
        }
    }

    if (root.contains("simulation")) {
        const json& s = detail::object_at(root, "simulation");
        spec.sim.n_samples = detail::count_at(s, "samples", spec.sim.n_samples, "simulation");
        spec.sim.seed = detail::count_at(s, "seed", spec.sim.seed, "simulation");
        spec.sim.chunk_size = detail::count_at(s, "chunk_size", spec.sim.chunk_size, "simulation");
        spec.sim.threads = static_cast<unsigned>(detail::count_at(s, "threads", spec.sim.threads, "simulation"));
    }

    if (root.contains("outputs")) {
        const json& o = root.at("outputs");
        if (!o.is_array()) {
            throw ConfigError("outputs", "expected an array of output names");
        }
        OutputSelection sel{false, false, false, false, false};
        for (const json& name : o) {
            const std::string s = name.is_string() ? name.get<std::string>() : std::string();
            if (s == "rates_closed") {
                sel.rates_closed = true;
            } else if (s == "rates_mc") {
                sel.rates_mc = true;
            } else if (s == "oma_mc") {
                sel.oma_mc = true;
            } else if (s == "outage_closed") {
                sel.outage_closed = true;
            } else if (s == "outage_mc") {
                sel.outage_mc = true;
            } else {
                throw ConfigError("outputs", "unknown output '" + name.dump() + "'");
            }
        }
        spec.outputs = sel;
    }

    detail::guarded<int>("sweep", [&] {
        spec.validate();
        return 0;
    });
    return spec;
}

inline SweepSpec sweep_spec_from_json_text(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    return sweep_spec_from_json(root);
}

inline SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("config: cannot open '" + path + "'");
    }
    const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return sweep_spec_from_json_text(text);
}

}  // namespace crsnoma
