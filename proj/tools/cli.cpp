// Copyright 2026 The msqueeze developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msqueeze/cli.hpp"

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "msqueeze/gaussian.hpp"
#include "msqueeze/spin.hpp"
#include "msqueeze/verify.hpp"

namespace msq {

namespace {

using nlohmann::json;

/// 17 significant digits: enough to round-trip any IEEE-754 double.
std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string param_or(const RunConfig& config, const std::string& key,
                     const std::string& fallback) {
    const auto it = config.parameters.find(key);
    return it == config.parameters.end() ? fallback : it->second;
}

std::int64_t parse_int(const std::string& command, const std::string& key,
                       const std::string& text) {
    try {
        size_t used = 0;
        const std::int64_t value = std::stoll(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return value;
    } catch (const std::exception&) {
        throw DomainError(command + ": parameter '" + key + "' must be an integer, got '" +
                          text + "'");
    }
}

double parse_double(const std::string& command, const std::string& key,
                    const std::string& text) {
    try {
        size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(value)) {
            throw std::invalid_argument("not a finite number");
        }
        return value;
    } catch (const std::exception&) {
        throw DomainError(command + ": parameter '" + key +
                          "' must be a finite number, got '" + text + "'");
    }
}

std::vector<Eigen::Index> parse_int_list(const std::string& command, const std::string& key,
                                         const std::string& text) {
    std::vector<Eigen::Index> values;
    size_t start = 0;
    while (start <= text.size()) {
        const size_t comma = text.find(',', start);
        const std::string token =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        values.push_back(static_cast<Eigen::Index>(parse_int(command, key, token)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return values;
}

Vector linspace(double lo, double hi, Eigen::Index points) {
    Vector grid(points);
    for (Eigen::Index i = 0; i < points; ++i) {
        grid(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (size_t c = 0; c < header.size(); ++c) {
        if (c > 0) {
            out += ',';
        }
        out += header[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out += ',';
            }
            out += fmt(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string effective_format(const RunConfig& config, const std::string& native) {
    if (config.format.empty()) {
        return native;
    }
    if (config.format != "csv" && config.format != "json") {
        throw DomainError(config.command + ": format must be 'csv' or 'json', got '" +
                          config.format + "'");
    }
    return config.format;
}

/// Table payload in the requested format; `header` doubles as JSON keys.
std::string render_table(const RunConfig& config, const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows) {
    if (effective_format(config, "csv") == "csv") {
        return to_csv(header, rows);
    }
    json array = json::array();
    for (const auto& row : rows) {
        json entry;
        for (size_t c = 0; c < header.size(); ++c) {
            entry[header[c]] = row[c];
        }
        array.push_back(std::move(entry));
    }
    return array.dump(2) + "\n";
}

CommandOutput cmd_fig2(const RunConfig& config) {
    const std::int64_t n = parse_int(config.command, "n", param_or(config, "n", "100"));
    if (n < 2 || n % 2 != 0) {
        throw DomainError("fig2: parameter 'n' must be an even integer >= 2, got " +
                          std::to_string(n));
    }
    const double chi_t_max =
        parse_double(config.command, "chi-t-max", param_or(config, "chi-t-max", "0.05"));
    if (chi_t_max <= 0.0) {
        throw DomainError("fig2: parameter 'chi-t-max' must be positive");
    }
    const std::int64_t points =
        parse_int(config.command, "points", param_or(config, "points", "50"));
    if (points < 2) {
        throw DomainError("fig2: parameter 'points' must be at least 2");
    }

    const auto rows = fig2_scan(n, linspace(0.0, chi_t_max, points));
    std::vector<std::vector<double>> table;
    table.reserve(rows.size());
    for (const auto& row : rows) {
        table.push_back({row.chi_t, row.gain_sum_nonlocal_db, row.gain_diff_nonlocal_db,
                         row.gain_local_db, row.gain_avg_nonlocal_db, row.mean_spin_1,
                         row.mean_spin_2});
    }
    return {render_table(config,
                         {"chi_t", "gain_sum_nonlocal_db", "gain_diff_nonlocal_db",
                          "gain_local_db", "gain_avg_nonlocal_db", "mean_spin_1",
                          "mean_spin_2"},
                         table),
            false};
}

CommandOutput cmd_fig3(const RunConfig& config) {
    const std::vector<Eigen::Index> modes =
        parse_int_list(config.command, "modes", param_or(config, "modes", "2,5,10,100"));
    for (const Eigen::Index m : modes) {
        if (m < 2) {
            throw DomainError("fig3: parameter 'modes' entries must be >= 2, got " +
                              std::to_string(m));
        }
    }
    const double r_max = parse_double(config.command, "r-max", param_or(config, "r-max", "5"));
    if (r_max <= 0.0) {
        throw DomainError("fig3: parameter 'r-max' must be positive");
    }
    const std::int64_t points =
        parse_int(config.command, "points", param_or(config, "points", "201"));
    if (points < 2) {
        throw DomainError("fig3: parameter 'points' must be at least 2");
    }

    const Vector grid = linspace(0.0, r_max, points);
    std::vector<std::vector<double>> table;
    table.reserve(modes.size() * static_cast<size_t>(points));
    for (const Eigen::Index m : modes) {
        for (const auto& row : fig3_scan(m, grid)) {
            table.push_back({static_cast<double>(m), row.r, row.ratio, row.approx_small_r,
                             row.approx_large_r});
        }
    }
    return {render_table(config, {"M", "r", "ratio", "approx_small_r", "approx_large_r"},
                         table),
            false};
}

CommandOutput cmd_nonlocal_encoding(const RunConfig& config) {
    const std::int64_t n = parse_int(config.command, "n", param_or(config, "n", "100"));
    if (n < 2 || n % 2 != 0) {
        throw DomainError(
            "nonlocal-encoding: parameter 'n' must be an even integer >= 2, got " +
            std::to_string(n));
    }
    const double chi_t_max =
        parse_double(config.command, "chi-t-max", param_or(config, "chi-t-max", "0.1"));
    if (chi_t_max <= 0.0) {
        throw DomainError("nonlocal-encoding: parameter 'chi-t-max' must be positive");
    }
    const std::int64_t points =
        parse_int(config.command, "points", param_or(config, "points", "40"));
    if (points < 2) {
        throw DomainError("nonlocal-encoding: parameter 'points' must be at least 2");
    }

    const SpinNetwork net({n / 2, n / 2});
    const Vector grid = linspace(0.0, chi_t_max, points);
    std::vector<std::vector<double>> table;
    table.reserve(static_cast<size_t>(points));
    const auto gain_db = [](double xi2) { return -10.0 * std::log10(xi2); };
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const NonlocalEncodingResult nl =
            nonlocal_encoding_on(net, oat_nonlocal(net, grid(i)).vector());
        const NonlocalEncodingResult loc =
            nonlocal_encoding_on(net, oat_local(net, grid(i)).vector());
        table.push_back({grid(i), gain_db(nl.xi_plus2), gain_db(nl.xi_minus2),
                         gain_db(loc.xi_plus2), gain_db(loc.xi_minus2)});
    }
    return {render_table(config,
                         {"chi_t", "gain_plus_nonlocal_db", "gain_minus_nonlocal_db",
                          "gain_plus_local_db", "gain_minus_local_db"},
                         table),
            false};
}

CommandOutput cmd_twin_fock(const RunConfig& config) {
    const std::vector<Eigen::Index> sizes =
        parse_int_list(config.command, "n", param_or(config, "n", "4,10,20"));
    for (const Eigen::Index n : sizes) {
        if (n < 2 || n % 2 != 0) {
            throw DomainError("twin-fock: parameter 'n' entries must be even and >= 2, got " +
                              std::to_string(n));
        }
    }

    if (effective_format(config, "json") == "json") {
        json array = json::array();
        for (const Eigen::Index n : sizes) {
            const TwinFockResult tf = twin_fock_extrapolated(n);
            const auto matrix2 = [](const RealSymMatrix& m) {
                return json::array({json::array({m(0, 0), m(0, 1)}),
                                    json::array({m(1, 0), m(1, 1)})});
            };
            array.push_back(json{{"n", n},
                                 {"analytic", tf.analytic},
                                 {"moment", matrix2(tf.moment)},
                                 {"quantum_fisher", matrix2(tf.quantum_fisher)},
                                 {"rel_error_moment", tf.rel_error_moment},
                                 {"rel_error_fisher", tf.rel_error_fisher}});
        }
        return {array.dump(2) + "\n", false};
    }

    std::vector<std::vector<double>> table;
    for (const Eigen::Index n : sizes) {
        const TwinFockResult tf = twin_fock_extrapolated(n);
        table.push_back({static_cast<double>(n), tf.analytic, tf.moment(0, 0),
                         tf.moment(0, 1), tf.moment(1, 1), tf.quantum_fisher(0, 0),
                         tf.quantum_fisher(0, 1), tf.quantum_fisher(1, 1),
                         tf.rel_error_moment, tf.rel_error_fisher});
    }
    return {to_csv({"n", "analytic", "moment_00", "moment_01", "moment_11", "fisher_00",
                    "fisher_01", "fisher_11", "rel_error_moment", "rel_error_fisher"},
                   table),
            false};
}

CommandOutput cmd_cv_demo(const RunConfig& config) {
    const std::int64_t modes =
        parse_int(config.command, "modes", param_or(config, "modes", "2"));
    if (modes < 1) {
        throw DomainError("cv-demo: parameter 'modes' must be >= 1");
    }
    const double r =
        parse_double(config.command, "squeezing-r", param_or(config, "squeezing-r", "1"));
    if (r <= 0.0) {
        throw DomainError("cv-demo: parameter 'squeezing-r' must be positive");
    }
    if (effective_format(config, "json") != "json") {
        throw DomainError("cv-demo: only the json format is available (nested payload)");
    }

    std::mt19937_64 rng(config.seed);
    const Matrix mixing = random_orthogonal_symplectic(rng, modes);
    const GaussianState state = squeezed_vacuum({Vector::Constant(modes, r), mixing});
    const SimonCheck witness = simon_check(state);
    const SqueezingReport optimal = cv_squeezing_matrix(state, optimal_cv_encoding(state));

    const double photons = static_cast<double>(modes) * std::sinh(r) * std::sinh(r);
    const Vector weights =
        Vector::Constant(modes, 1.0 / std::sqrt(static_cast<double>(modes)));
    const MsepAllocation split = msep_allocation(weights, photons);
    const MentAllocation entangled = ment_allocation(photons);

    const Vector gamma_diag = state.gamma().mat().diagonal();
    json payload{
        {"modes", modes},
        {"squeezing_r", r},
        {"seed", config.seed},
        {"total_photons", photons},
        {"gamma_diagonal", std::vector<double>(gamma_diag.data(),
                                               gamma_diag.data() + gamma_diag.size())},
        {"witness",
         json{{"squeezed", witness.squeezed},
              {"lambda_min", witness.lambda_min},
              {"min_xi2", witness.witness_min_xi2}}},
        {"optimal_spectrum", std::vector<double>(optimal.eigenvalues.data(),
                                                 optimal.eigenvalues.data() +
                                                     optimal.eigenvalues.size())},
        {"split_allocation",
         json{{"r", std::vector<double>(split.r.data(), split.r.data() + split.r.size())},
              {"variance", split.variance},
              {"multiplier", split.multiplier}}},
        {"entangled_allocation",
         json{{"r_prime", entangled.r_prime}, {"variance", entangled.variance}}},
        {"variance_ratio", entangled.variance / split.variance},
        {"max_variance", max_variance_identity(photons)}};
    return {payload.dump(2) + "\n", false};
}

CommandOutput cmd_verify(const RunConfig& config) {
    OracleBudget budget;
    budget.seed = config.seed;
    budget.random_trials = static_cast<int>(
        parse_int(config.command, "trials",
                  param_or(config, "trials", std::to_string(budget.random_trials))));
    budget.max_qubits = static_cast<Eigen::Index>(
        parse_int(config.command, "max-qubits",
                  param_or(config, "max-qubits", std::to_string(budget.max_qubits))));
    budget.fock_cutoff = static_cast<Eigen::Index>(
        parse_int(config.command, "fock-cutoff",
                  param_or(config, "fock-cutoff", std::to_string(budget.fock_cutoff))));
    budget.grid_points = static_cast<int>(
        parse_int(config.command, "grid-points",
                  param_or(config, "grid-points", std::to_string(budget.grid_points))));
    if (budget.random_trials < 1 || budget.max_qubits < 2 || budget.fock_cutoff < 4 ||
        budget.grid_points < 10) {
        throw DomainError("verify: budget overrides out of range (need trials >= 1, "
                          "max-qubits >= 2, fock-cutoff >= 4, grid-points >= 10)");
    }

    const VerifyReport report = run_verification(budget);
    if (effective_format(config, "json") == "json") {
        json checks = json::array();
        for (const CheckResult& check : report.checks) {
            json entry{{"name", check.name},
                       {"tolerance", check.tolerance},
                       {"residual", check.residual},
                       {"pass", check.pass}};
            if (!check.note.empty()) {
                entry["note"] = check.note;
            }
            checks.push_back(std::move(entry));
        }
        const json payload{{"all_passed", report.all_passed}, {"checks", checks}};
        return {payload.dump(2) + "\n", !report.all_passed};
    }

    std::string csv = "name,tolerance,residual,pass\n";
    for (const CheckResult& check : report.checks) {
        csv += check.name + ',' + fmt(check.tolerance) + ',' + fmt(check.residual) + ',' +
               (check.pass ? "1" : "0") + '\n';
    }
    return {csv, !report.all_passed};
}

}  // namespace

CommandOutput render_command(const RunConfig& config) {
    if (config.command == "fig2") {
        return cmd_fig2(config);
    }
    if (config.command == "fig3") {
        return cmd_fig3(config);
    }
    if (config.command == "nonlocal-encoding") {
        return cmd_nonlocal_encoding(config);
    }
    if (config.command == "twin-fock") {
        return cmd_twin_fock(config);
    }
    if (config.command == "cv-demo") {
        return cmd_cv_demo(config);
    }
    if (config.command == "verify") {
        return cmd_verify(config);
    }
    throw DomainError("unknown command '" + config.command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    // Worker cap from the environment; the numerical kernels run inside
    // Eigen, so the cap is forwarded there.
    if (const char* env = std::getenv("MSQUEEZE_THREADS")) {
        std::int64_t threads = 0;
        try {
            size_t used = 0;
            threads = std::stoll(env, &used);
            if (used != std::string(env).size() || threads < 1) {
                throw std::invalid_argument("not a positive integer");
            }
        } catch (const std::exception&) {
            err << "error: MSQUEEZE_THREADS must be a positive integer, got '" << env
                << "'\n";
            return 2;
        }
        Eigen::setNbThreads(static_cast<int>(threads));
    }

    CLI::App app{"moment-matrix metrology and multiparameter squeezing toolkit"};
    app.require_subcommand(1);

    RunConfig config;
    app.add_option("--output", config.output_path,
                   "write the payload to this file instead of stdout");
    app.add_option("--format", config.format,
                   "payload format: csv or json (default depends on the command)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", config.seed, "seed for randomized scenarios (default 20260814)");

    const auto add_param = [&config](CLI::App* cmd, const std::string& key,
                                     const std::string& desc) {
        // Let the global --output/--format/--seed appear after the
        // subcommand name as well.
        cmd->fallthrough();
        cmd->add_option_function<std::string>(
            "--" + key,
            [&config, key](const std::string& value) { config.parameters[key] = value; },
            desc);
    };

    CLI::App* fig2 = app.add_subcommand(
        "fig2", "local vs nonlocal twisting gains of a split ensemble (CSV)");
    add_param(fig2, "n", "total particle number, even (default 100)");
    add_param(fig2, "chi-t-max", "largest twisting strength (default 0.05)");
    add_param(fig2, "points", "grid size including chi_t = 0 (default 50)");

    CLI::App* fig3 = app.add_subcommand(
        "fig3", "photon-split vs mode-entangled squeezing ratio (CSV)");
    add_param(fig3, "modes", "comma-separated mode counts (default 2,5,10,100)");
    add_param(fig3, "r-max", "largest squeezing parameter (default 5)");
    add_param(fig3, "points", "grid size including r = 0 (default 201)");

    CLI::App* nle = app.add_subcommand(
        "nonlocal-encoding", "sum/difference parameter encoding on twisted probes (CSV)");
    add_param(nle, "n", "total particle number, even (default 100)");
    add_param(nle, "chi-t-max", "largest twisting strength (default 0.1)");
    add_param(nle, "points", "grid size including chi_t = 0 (default 40)");

    CLI::App* twin = app.add_subcommand(
        "twin-fock", "extrapolated twin-Fock moment matrix vs quantum Fisher matrix (JSON)");
    add_param(twin, "n", "comma-separated even particle numbers (default 4,10,20)");

    CLI::App* demo = app.add_subcommand(
        "cv-demo", "seeded squeezed-vacuum sensing walkthrough (JSON)");
    add_param(demo, "modes", "mode count (default 2)");
    add_param(demo, "squeezing-r", "per-mode squeezing parameter (default 1)");

    CLI::App* verify = app.add_subcommand(
        "verify", "run the invariant suite and report residuals (JSON)");
    add_param(verify, "trials", "randomized-check trial count (default 200)");
    add_param(verify, "max-qubits", "qubit-space oracle size cap (default 8)");
    add_param(verify, "fock-cutoff", "truncated-Fock oracle cutoff (default 40)");
    add_param(verify, "grid-points", "dense-grid oracle resolution (default 10000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    try {
        const CommandOutput result = render_command(config);
        if (config.output_path.empty()) {
            out << result.payload;
        } else {
            std::ofstream file(config.output_path, std::ios::binary);
            if (!file) {
                throw DomainError("cannot open output path '" + config.output_path + "'");
            }
            file << result.payload;
        }
        return result.verify_failed ? 1 : 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace msq
