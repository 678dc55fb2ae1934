// SPDX-License-Identifier: Apache-2.0
//
// lsa — large-system analysis of the LMMSE SINR for channels with a variance profile
// Copyright (C) 2026 The lsa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "lsa/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "lsa/io.hpp"
#include "lsa/rng.hpp"
#include "lsa/stats.hpp"

namespace lsa {

namespace {

double fourth_moment_of(const ExperimentConfig &config) {
    return config.distribution == "gaussian" ? 2.0 : 1.0;
}

SymbolDistribution distribution_of(const ExperimentConfig &config) {
    return config.distribution == "gaussian" ? SymbolDistribution::complex_gaussian()
                                             : SymbolDistribution::qpsk();
}

// K+1 user powers (user of interest first): explicit list if configured,
// otherwise user 0 at base power and interferers drawn from the power
// classes with the config seed.
arma::vec user_powers(const ExperimentConfig &config, arma::uword n_users) {
    if (!config.powers.empty())
        return arma::vec(config.powers);
    arma::vec powers(n_users + 1);
    powers(0) = config.base_power;
    powers.tail(n_users) = build_power_classes(config.base_power, n_users, config.seed);
    return powers;
}

arma::cx_vec draw_taps(arma::uword n_taps, std::mt19937_64 &gen) {
    const SymbolDistribution gaussian = SymbolDistribution::complex_gaussian();
    const double scale = 1.0 / std::sqrt(double(n_taps));
    arma::cx_vec taps(n_taps);
    for (arma::uword l = 0; l < n_taps; l++)
        taps(l) = scale * gaussian.draw(gen);
    return taps;
}

std::string format_double(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::string a4_branch_name(A4Branch branch) {
    switch (branch) {
    case A4Branch::FourthMomentExceedsOne:
        return "fourth_moment_exceeds_one";
    case A4Branch::CrossTracePositive:
        return "cross_trace_positive";
    case A4Branch::Both:
        return "both";
    case A4Branch::Neither:
        return "neither";
    }
    throw std::logic_error("a4_branch_name: unknown branch");
}

} // namespace

VarianceProfile build_profile(const ExperimentConfig &config, arma::uword n_users) {
    const arma::uword n_rx = config.resolved_n_rx(n_users);
    switch (config.model) {
    case ChannelModel::Iid:
        return build_iid_profile(n_rx, n_users);
    case ChannelModel::MimoKronecker:
        return build_mimo_kronecker(exp_correlation_eigenvalues(config.corr_a, n_rx),
                                    user_powers(config, n_users))
            .materialize();
    case ChannelModel::MccdmaUplink: {
        std::vector<arma::cx_vec> taps(n_users + 1);
        for (arma::uword k = 0; k <= n_users; k++) {
            std::mt19937_64 gen = derive_stream(config.seed, kStreamTaps, k);
            taps[k] = draw_taps(config.n_taps, gen);
        }
        return build_mccdma_uplink(taps, user_powers(config, n_users), n_rx);
    }
    case ChannelModel::MccdmaDownlink: {
        std::mt19937_64 gen = derive_stream(config.seed, kStreamTaps, 0);
        return build_mccdma_downlink(draw_taps(config.n_taps, gen),
                                     user_powers(config, n_users), n_rx)
            .materialize();
    }
    }
    throw std::logic_error("build_profile: unknown channel model");
}

VarianceProfile build_profile(const ExperimentConfig &config) {
    return build_profile(config, config.n_users);
}

SolveResult run_solve(const ExperimentConfig &config) {
    VarianceProfile profile = build_profile(config);
    SolveResult result;
    result.det = solve_general(profile, config.rho());
    result.assumptions = check_assumptions(profile, fourth_moment_of(config));
    return result;
}

FluctResult run_fluct(const ExperimentConfig &config) {
    VarianceProfile profile = build_profile(config);
    FluctResult result;
    result.det = solve_general(profile, config.rho());
    result.fluct = theta_squared(profile, result.det, fourth_moment_of(config));
    result.certificate = clt_certificate(build_A_Delta_g(profile, result.det).A);
    try {
        SeparableProfile sep = factor_separable(profile);
        SeparableEquivalent eq = solve_separable(sep, config.rho());
        result.fluct.omega_sq = omega_squared(eq, fourth_moment_of(config));
    } catch (const std::invalid_argument &) {
        // not separable; omega stays empty
    }
    return result;
}

SimulateResult run_simulate(const ExperimentConfig &config, arma::uword n_users, double snr_db,
                            unsigned n_workers) {
    VarianceProfile profile = build_profile(config, n_users);
    const double rho = config.rho(snr_db);

    SimulateResult result;
    result.det = solve_general(profile, rho);
    result.fluct = theta_squared(profile, result.det, fourth_moment_of(config));
    result.samples = run_experiment(profile, rho, distribution_of(config), config.n_trials,
                                    config.seed, n_workers);
    result.stats = empirical_stats(result.samples, result.det.beta_bar,
                                   std::sqrt(result.fluct.theta_sq));
    result.outage_theoretical =
        outage_sinr(result.det.beta_bar, result.fluct.theta_sq, n_users, 0.01);
    result.outage_empirical = empirical_quantile(result.samples.betas, 0.01);
    return result;
}

nlohmann::json solve_json(const ExperimentConfig &config, const SolveResult &result) {
    return {{"config_digest", config_digest(config)},
            {"seed", config.seed},
            {"model", to_string(config.model)},
            {"rho", config.rho()},
            {"n_rx", result.det.t.n_elem},
            {"n_users", result.det.t_tilde.n_elem},
            {"beta_bar", result.det.beta_bar},
            {"residual", result.det.residual},
            {"iterations", result.det.iterations},
            {"t", std::vector<double>(result.det.t.begin(), result.det.t.end())},
            {"t_tilde",
             std::vector<double>(result.det.t_tilde.begin(), result.det.t_tilde.end())},
            {"assumptions",
             {{"a2_sigma_max", result.assumptions.a2_sigma_max},
              {"a3_min_column_trace", result.assumptions.a3_min_column_trace},
              {"a4_branch", a4_branch_name(result.assumptions.a4_branch)},
              {"a4_cross_trace", result.assumptions.a4_cross_trace}}}};
}

nlohmann::json fluct_json(const ExperimentConfig &config, const FluctResult &result) {
    nlohmann::json j{{"config_digest", config_digest(config)},
                     {"seed", config.seed},
                     {"model", to_string(config.model)},
                     {"rho", config.rho()},
                     {"beta_bar", result.det.beta_bar},
                     {"theta_sq", result.fluct.theta_sq},
                     {"quad_term", result.fluct.quad_term},
                     {"kurtosis_term", result.fluct.kurtosis_term},
                     {"fourth_moment", result.fluct.fourth_moment},
                     {"certificate",
                      {{"inv_nonnegative", result.certificate.inv_nonnegative},
                       {"inv_diag_min", result.certificate.inv_diag_min},
                       {"inv_rowsum_norm", result.certificate.inv_rowsum_norm}}}};
    if (result.fluct.omega_sq)
        j["omega_sq"] = *result.fluct.omega_sq;
    else
        j["omega_sq"] = nullptr;
    return j;
}

nlohmann::json simulate_json(const ExperimentConfig &config, const SimulateResult &result,
                             arma::uword n_users, double snr_db) {
    nlohmann::json quantiles = nlohmann::json::object();
    for (arma::uword i = 0; i < result.stats.quantile_levels.n_elem; i++)
        quantiles[format_double(result.stats.quantile_levels(i))] = result.stats.quantiles(i);
    return {{"config_digest", config_digest(config)},
            {"seed", config.seed},
            {"model", to_string(config.model)},
            {"distribution", config.distribution},
            {"n_users", n_users},
            {"n_rx", config.resolved_n_rx(n_users)},
            {"snr_db", snr_db},
            {"rho", config.rho(snr_db)},
            {"n_trials", result.stats.n_trials},
            {"profile_digest", result.samples.profile_digest},
            {"beta_bar", result.det.beta_bar},
            {"theta_sq", result.fluct.theta_sq},
            {"mean_beta", result.stats.mean},
            {"var_beta", result.stats.variance},
            {"mse_ratio", result.stats.mse_ratio},
            {"ks_distance", result.stats.ks_normal},
            {"quantiles", std::move(quantiles)},
            {"outage_theoretical_1pct", result.outage_theoretical},
            {"outage_empirical_1pct", result.outage_empirical}};
}

std::string sweep_csv(const ExperimentConfig &config, const std::vector<nlohmann::json> &rows) {
    std::string out = "# config_digest=" + config_digest(config) +
                      " seed=" + std::to_string(config.seed) + "\n";
    out += "n_users,n_rx,snr_db,rho,beta_bar,theta_sq,mse_ratio,ks_distance,"
           "outage_theoretical_1pct,outage_empirical_1pct\n";
    for (const auto &row : rows) {
        const char *fields[] = {"snr_db",    "rho",         "beta_bar",
                                "theta_sq",  "mse_ratio",   "ks_distance",
                                "outage_theoretical_1pct", "outage_empirical_1pct"};
        for (const char *field : fields)
            if (!std::isfinite(row.at(field).get<double>()))
                throw std::runtime_error(std::string("sweep_csv: non-finite field ") + field);
        out += std::to_string(row.at("n_users").get<arma::uword>()) + ',';
        out += std::to_string(row.at("n_rx").get<arma::uword>()) + ',';
        out += format_double(row.at("snr_db").get<double>()) + ',';
        out += format_double(row.at("rho").get<double>()) + ',';
        out += format_double(row.at("beta_bar").get<double>()) + ',';
        out += format_double(row.at("theta_sq").get<double>()) + ',';
        out += format_double(row.at("mse_ratio").get<double>()) + ',';
        out += format_double(row.at("ks_distance").get<double>()) + ',';
        out += format_double(row.at("outage_theoretical_1pct").get<double>()) + ',';
        out += format_double(row.at("outage_empirical_1pct").get<double>()) + '\n';
    }
    return out;
}

namespace {

void ensure_out_dir(const std::string &out_dir) {
    std::filesystem::create_directories(out_dir);
}

std::string point_suffix(const ExperimentConfig &config, arma::uword n_users, double snr_db) {
    if (config.sweep == SweepKind::Users)
        return "_users" + std::to_string(n_users);
    if (config.sweep == SweepKind::Snr) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "_snr%g", snr_db);
        return buffer;
    }
    return "";
}

// One simulate point: emit samples/histogram/qq/summary files, return the
// summary row.
nlohmann::json simulate_point(const ExperimentConfig &config, const std::string &out_dir,
                              arma::uword n_users, double snr_db, unsigned n_workers) {
    SimulateResult result = run_simulate(config, n_users, snr_db, n_workers);
    const std::string digest = config_digest(config);
    const std::string suffix = point_suffix(config, n_users, snr_db);

    write_file_atomic(out_dir + "/samples" + suffix + ".csv", samples_csv(result.samples, digest));
    write_file_atomic(out_dir + "/histogram" + suffix + ".csv",
                      histogram_csv(result.stats.histogram, digest));
    arma::vec normalized =
        result.samples.normalized(result.det.beta_bar, std::sqrt(result.fluct.theta_sq));
    write_file_atomic(out_dir + "/qq" + suffix + ".csv", qq_csv(normalized, digest));

    nlohmann::json summary = simulate_json(config, result, n_users, snr_db);
    write_file_atomic(out_dir + "/summary" + suffix + ".json", summary.dump(2) + "\n");
    std::cerr << "simulate: users=" << n_users << " snr_db=" << snr_db << ": "
              << result.stats.n_trials << " trials done\n";
    return summary;
}

} // namespace

int cmd_solve(const ExperimentConfig &config, const std::string &out_dir) {
    try {
        ensure_out_dir(out_dir);
        SolveResult result = run_solve(config);
        write_file_atomic(out_dir + "/solve.json", solve_json(config, result).dump(2) + "\n");
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "solve: " << e.what() << '\n';
        return 1;
    }
}

int cmd_fluct(const ExperimentConfig &config, const std::string &out_dir) {
    try {
        ensure_out_dir(out_dir);
        FluctResult result = run_fluct(config);
        write_file_atomic(out_dir + "/fluct.json", fluct_json(config, result).dump(2) + "\n");
        if (!result.certificate.inv_nonnegative ||
            result.certificate.inv_diag_min < 1.0 - 1e-9 ||
            !std::isfinite(result.certificate.inv_rowsum_norm)) {
            std::cerr << "fluct: variance-system certificate failed (inv_diag_min="
                      << result.certificate.inv_diag_min << ")\n";
            return 2;
        }
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "fluct: " << e.what() << '\n';
        return 1;
    }
}

int cmd_simulate(const ExperimentConfig &config, const std::string &out_dir, unsigned n_workers) {
    try {
        ensure_out_dir(out_dir);
        if (config.sweep == SweepKind::None) {
            simulate_point(config, out_dir, config.n_users, config.snr_db, n_workers);
            return 0;
        }
        std::vector<nlohmann::json> rows;
        if (config.sweep == SweepKind::Users) {
            std::vector<arma::uword> grid = config.sweep_users;
            std::sort(grid.begin(), grid.end());
            for (arma::uword k : grid)
                rows.push_back(simulate_point(config, out_dir, k, config.snr_db, n_workers));
        } else {
            std::vector<double> grid = config.sweep_snr_db;
            std::sort(grid.begin(), grid.end());
            for (double snr : grid)
                rows.push_back(simulate_point(config, out_dir, config.n_users, snr, n_workers));
        }
        write_file_atomic(out_dir + "/sweep_summary.csv", sweep_csv(config, rows));
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "simulate: " << e.what() << '\n';
        return 1;
    }
}

} // namespace lsa
