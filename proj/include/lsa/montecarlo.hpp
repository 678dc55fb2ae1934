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

#ifndef LSA_MONTECARLO_HPP
#define LSA_MONTECARLO_HPP

#include <cstdint>
#include <random>
#include <string>

#include <armadillo>

#include "lsa/profiles.hpp"
#include "lsa/stats.hpp"

namespace lsa {

/// Entry distribution of the unscaled channel coefficients W_nk. Entries are
/// iid, zero-mean, unit-variance, circularly symmetric; the fourth moment
/// E|W|^4 feeds the fluctuation formulas.
struct SymbolDistribution {
    enum class Kind { ComplexGaussian, Qpsk };

    Kind kind = Kind::ComplexGaussian;

    static SymbolDistribution complex_gaussian();
    static SymbolDistribution qpsk();

    double fourth_moment() const; // 2 for Gaussian, 1 for QPSK
    std::string name() const;     // "gaussian" / "qpsk"

    /// One sample (unit variance overall, i.e. Re and Im each carry 1/2).
    arma::cx_double draw(std::mt19937_64 &gen) const;
};

/// Channel realization: Sigma_nk = (sigma_nk / sqrt(K)) * W_nk, drawn as the
/// full N x (K+1) matrix (column 0 = signal of interest).
arma::cx_mat sample_channel(const VarianceProfile &profile, const SymbolDistribution &dist,
                            std::mt19937_64 &gen);

/// Exact output SINR of the LMMSE estimate of the column-0 symbol:
///   beta = y* (Y Y* + rho I)^-1 y,
/// with y the first column of `channel` and Y the remaining columns.
double sinr(const arma::cx_mat &channel, double rho);

/// Result of a simulation run.
struct SinrSampleSet {
    arma::vec betas;            // one SINR per trial
    double rho = 0.0;
    arma::uword n_users = 0;    // K (interferers)
    std::uint64_t seed = 0;
    std::string distribution;   // name of the symbol law
    std::string profile_digest; // hex hash of the variance profile

    /// Standardized samples sqrt(K) * (beta - beta_bar) / theta.
    arma::vec normalized(double beta_bar, double theta) const;
};

/// Run `n_trials` independent channel draws. Trial i always uses the RNG
/// stream (seed, trial, i) regardless of `n_workers`, so output is
/// bit-identical for any worker split.
SinrSampleSet run_experiment(const VarianceProfile &profile, double rho,
                             const SymbolDistribution &dist, arma::uword n_trials,
                             std::uint64_t seed, unsigned n_workers = 1);

/// Summary statistics of a sample set.
struct EmpiricalStats {
    arma::uword n_trials = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double mse_ratio = 0.0; // K * mean((beta - beta_bar)^2) / theta_sq
    arma::vec quantile_levels;
    arma::vec quantiles;    // of the raw betas
    double ks_normal = 0.0; // KS distance of the standardized samples to N(0,1)
    Histogram histogram;    // of the standardized samples
};

/// `beta_bar` / `theta` are the deterministic centering and scale used to
/// standardize; histogram uses `n_bins` over [lo, hi].
EmpiricalStats empirical_stats(const SinrSampleSet &samples, double beta_bar, double theta,
                               const arma::vec &quantile_levels = {0.01, 0.05, 0.5},
                               arma::uword n_bins = 50, double lo = -4.0, double hi = 4.0);

} // namespace lsa

#endif
