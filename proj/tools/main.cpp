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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lsa/config.hpp"
#include "lsa/experiment.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    unsigned workers = 1;
};

void add_common_flags(CLI::App *cmd, CliOptions &opts) {
    cmd->add_option("--config", opts.config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "override the config seed");
}

int load_and_override(const CliOptions &opts, lsa::ExperimentConfig &config) {
    try {
        config = lsa::load_config(opts.config_path);
        if (opts.seed)
            config.seed = *opts.seed;
        if (opts.trials) {
            config.n_trials = arma::uword(*opts.trials);
            if (config.n_trials == 0)
                throw lsa::ConfigError("config field 'n_trials': must be positive");
        }
        return 0;
    } catch (const std::exception &e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"deterministic equivalents, Gaussian fluctuations and Monte Carlo simulation "
                 "of the LMMSE SINR under a variance profile"};
    app.require_subcommand(1);

    CliOptions solve_opts;
    CLI::App *solve_cmd = app.add_subcommand("solve", "deterministic equivalent of the SINR");
    add_common_flags(solve_cmd, solve_opts);

    CliOptions fluct_opts;
    CLI::App *fluct_cmd =
        app.add_subcommand("fluct", "fluctuation variance and its certificate");
    add_common_flags(fluct_cmd, fluct_opts);

    CliOptions sim_opts;
    CLI::App *sim_cmd = app.add_subcommand("simulate", "Monte Carlo SINR samples and statistics");
    add_common_flags(sim_cmd, sim_opts);
    sim_cmd->add_option("--trials", sim_opts.trials, "override the config trial count");
    sim_cmd->add_option("--workers", sim_opts.workers, "worker threads for the trials")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    lsa::ExperimentConfig config;
    if (solve_cmd->parsed()) {
        if (int rc = load_and_override(solve_opts, config))
            return rc;
        return lsa::cmd_solve(config, solve_opts.out_dir);
    }
    if (fluct_cmd->parsed()) {
        if (int rc = load_and_override(fluct_opts, config))
            return rc;
        return lsa::cmd_fluct(config, fluct_opts.out_dir);
    }
    if (int rc = load_and_override(sim_opts, config))
        return rc;
    return lsa::cmd_simulate(config, sim_opts.out_dir, sim_opts.workers);
}
