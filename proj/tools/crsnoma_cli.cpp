// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------
//
// Command-line front end. Every number printed here comes from the library;
// this file only wires configuration to the sweep and the output writers.

#include "crsnoma/crsnoma.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct CommonOptions {
    std::string config_path;
    bool paper_defaults = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::string format = "csv";
    std::string out = "-";
};

void add_common_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "JSON sweep configuration file");
    cmd->add_flag("--paper-defaults", o.paper_defaults,
                  "Use the reference scenario (omega_sd=1, omega_sr=omega_rd=10, omega_sp=omega_rp=5.5, a2=0.1, "
                  "R1=R2=1, antennas (1,1) (2,2) (3,3), q -10..30 dB)");
    cmd->add_option("--seed", o.seed, "Monte-Carlo seed (overrides the config)");
    cmd->add_option("--samples", o.samples, "Monte-Carlo draws per point (overrides the config)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "Output path, - for stdout");
}

crsnoma::SweepSpec resolve_spec(const CommonOptions& o) {
    if (!o.config_path.empty() && o.paper_defaults) {
        throw std::invalid_argument("--config and --paper-defaults are mutually exclusive");
    }
    crsnoma::SweepSpec spec =
        o.config_path.empty() ? crsnoma::SweepSpec::reference_scenario() : crsnoma::load_sweep_spec(o.config_path);
    if (o.seed) {
        spec.sim.seed = *o.seed;
    }
    if (o.samples) {
        spec.sim.n_samples = *o.samples;
    }
    spec.validate();
    return spec;
}

void write_to(const std::string& destination, const std::string& text) {
    if (destination.empty() || destination == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(destination, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
        throw std::runtime_error("cannot write '" + destination + "'");
    }
}

int run_sweep_command(const CommonOptions& o) {
    const crsnoma::SweepSpec spec = resolve_spec(o);
    const auto rows = crsnoma::run_sweep(spec);
    crsnoma::emit(rows, crsnoma::parse_table_format(o.format), o.out, std::cout);
    return 0;
}

int run_crossover_command(const CommonOptions& o) {
    crsnoma::SweepSpec spec = resolve_spec(o);
    spec.outputs = {true, false, true, false, false};
    const auto rows = crsnoma::run_sweep(spec);
    const auto entries = crsnoma::crossover_by_antennas(rows);

    std::ostringstream os;
    const auto q_text = [](const crsnoma::Crossover& c, const char* missing) {
        return c.q_db ? crsnoma::detail::format_double(*c.q_db) : std::string(missing);
    };
    if (crsnoma::parse_table_format(o.format) == crsnoma::TableFormat::csv) {
        os << "n_r,n_d,q_star_db,at_boundary\n";
        for (const auto& e : entries) {
            os << e.n_r << ',' << e.n_d << ',' << q_text(e.crossover, "NA") << ','
               << (e.crossover.at_boundary ? "true" : "false") << '\n';
        }
    } else {
        os << '[';
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            os << (i ? ",\n " : "\n ") << "{\"n_r\": " << e.n_r << ", \"n_d\": " << e.n_d
               << ", \"q_star_db\": " << q_text(e.crossover, "null")
               << ", \"at_boundary\": " << (e.crossover.at_boundary ? "true" : "false") << '}';
        }
        os << (entries.empty() ? "]\n" : "\n]\n");
    }
    write_to(o.out, os.str());
    return 0;
}

int run_validate_command(const CommonOptions& o) {
    const crsnoma::SweepSpec spec = resolve_spec(o);
    const auto checks = crsnoma::cross_validate(spec);
    std::ostringstream os;
    std::size_t failed = 0;
    for (const auto& c : checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-26s (%d,%d) q=%6.2f dB  analytic=%.10g reference=%.10g tol=%.3g\n",
                      c.passed() ? "PASS" : "FAIL", c.name.c_str(), c.n_r, c.n_d, c.q_db, c.analytic, c.reference,
                      c.tolerance);
        os << line;
        failed += c.passed() ? 0 : 1;
    }
    os << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
    write_to(o.out, os.str());
    if (failed != 0) {
        std::cerr << "validate: " << failed << " check(s) failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form and Monte-Carlo rates / outage of NOMA cooperative relaying under spectrum sharing"};
    app.require_subcommand(1);

    CommonOptions sweep_opts;
    CommonOptions crossover_opts;
    CommonOptions validate_opts;
    auto* sweep = app.add_subcommand("sweep", "Evaluate rates and outage along the q grid");
    auto* crossover = app.add_subcommand("crossover", "Locate the q where NOMA overtakes OMA per antenna config");
    auto* validate = app.add_subcommand("validate", "Cross-check closed forms against quadrature and Monte-Carlo");
    add_common_options(sweep, sweep_opts);
    add_common_options(crossover, crossover_opts);
    add_common_options(validate, validate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sweep) {
            return run_sweep_command(sweep_opts);
        }
        if (*crossover) {
            return run_crossover_command(crossover_opts);
        }
        return run_validate_command(validate_opts);
    } catch (const std::exception& e) {
        std::cerr << "crsnoma: " << e.what() << '\n';
        return 2;
    }
}
