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

#ifndef LSA_EXPERIMENT_HPP
#define LSA_EXPERIMENT_HPP

#include <string>

#include <json.hpp>

#include "lsa/config.hpp"
#include "lsa/detsolve.hpp"
#include "lsa/fluctuations.hpp"
#include "lsa/montecarlo.hpp"
#include "lsa/profiles.hpp"

namespace lsa {

/// Profile built from a config for a given sweep point. Random model inputs
/// (taps, power-class assignment) derive from the config seed, not the trial
/// streams, so one config pins one profile.
VarianceProfile build_profile(const ExperimentConfig &config, arma::uword n_users);
VarianceProfile build_profile(const ExperimentConfig &config);

/// Per-point results of the three pipeline stages.
struct SolveResult {
    DeterministicEquivalent det;
    AssumptionReport assumptions;
};

struct FluctResult {
    DeterministicEquivalent det;
    FluctuationParams fluct;
    CltCertificate certificate;
};

struct SimulateResult {
    DeterministicEquivalent det;
    FluctuationParams fluct;
    SinrSampleSet samples;
    EmpiricalStats stats;
    double outage_theoretical; // Gaussian-approximation 1% outage
    double outage_empirical;   // empirical 1% quantile of beta
};

SolveResult run_solve(const ExperimentConfig &config);
FluctResult run_fluct(const ExperimentConfig &config);
SimulateResult run_simulate(const ExperimentConfig &config, arma::uword n_users,
                            double snr_db, unsigned n_workers);

nlohmann::json solve_json(const ExperimentConfig &config, const SolveResult &result);
nlohmann::json fluct_json(const ExperimentConfig &config, const FluctResult &result);
nlohmann::json simulate_json(const ExperimentConfig &config, const SimulateResult &result,
                             arma::uword n_users, double snr_db);

/// Sweep rows as CSV (sorted by the sweep variable; finite values only).
std::string sweep_csv(const ExperimentConfig &config,
                      const std::vector<nlohmann::json> &rows);

/// Drivers used by the CLI: write all output files into `out_dir` and
/// return 0, or print a diagnostic to stderr and return nonzero.
int cmd_solve(const ExperimentConfig &config, const std::string &out_dir);
int cmd_fluct(const ExperimentConfig &config, const std::string &out_dir);
int cmd_simulate(const ExperimentConfig &config, const std::string &out_dir,
                 unsigned n_workers);

} // namespace lsa

#endif
