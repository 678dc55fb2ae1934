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

#include "lsa/montecarlo.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lsa/io.hpp"
#include "lsa/rng.hpp"

namespace lsa {

SymbolDistribution SymbolDistribution::complex_gaussian() {
    return SymbolDistribution{Kind::ComplexGaussian};
}

SymbolDistribution SymbolDistribution::qpsk() {
    return SymbolDistribution{Kind::Qpsk};
}

double SymbolDistribution::fourth_moment() const {
    return kind == Kind::ComplexGaussian ? 2.0 : 1.0;
}

std::string SymbolDistribution::name() const {
    return kind == Kind::ComplexGaussian ? "gaussian" : "qpsk";
}

namespace {

// Uniform in (0, 1), platform-independent (53-bit mantissa from the top
// bits, offset by half an ulp so log() never sees zero).
inline double uniform_open(std::mt19937_64 &gen) {
    return (double(gen() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

arma::cx_double SymbolDistribution::draw(std::mt19937_64 &gen) const {
    if (kind == Kind::ComplexGaussian) {
        // Polar form of the standard complex Gaussian: |W|^2 ~ Exp(1),
        // phase uniform. E W = E W^2 = 0, E |W|^2 = 1, E |W|^4 = 2.
        double radius = std::sqrt(-std::log(uniform_open(gen)));
        double phase = 2.0 * arma::datum::pi * uniform_open(gen);
        return {radius * std::cos(phase), radius * std::sin(phase)};
    }
    std::uint64_t bits = gen();
    double re = (bits & 1) ? M_SQRT1_2 : -M_SQRT1_2;
    double im = (bits & 2) ? M_SQRT1_2 : -M_SQRT1_2;
    return {re, im};
}

arma::cx_mat sample_channel(const VarianceProfile &profile, const SymbolDistribution &dist,
                            std::mt19937_64 &gen) {
    const double inv_sqrt_k = 1.0 / std::sqrt(double(profile.n_users));
    arma::cx_mat channel(profile.n_rx, profile.n_users + 1);
    // Column-major draw order: fixed part of the reproducibility contract.
    for (arma::uword k = 0; k <= profile.n_users; k++)
        for (arma::uword n = 0; n < profile.n_rx; n++)
            channel(n, k) = std::sqrt(profile.sigma_sq(n, k)) * inv_sqrt_k * dist.draw(gen);
    return channel;
}

double sinr(const arma::cx_mat &channel, double rho) {
    if (!(rho > 0.0))
        throw std::invalid_argument("sinr: rho must be positive");
    if (channel.n_cols < 2)
        throw std::invalid_argument("sinr: channel needs at least one interferer column");

    const arma::cx_vec y = channel.col(0);
    const arma::cx_mat interf = channel.cols(1, channel.n_cols - 1);

    arma::cx_mat gram = interf * interf.t();
    gram.diag() += rho;

    arma::cx_vec x;
    if (!arma::solve(x, gram, y, arma::solve_opts::likely_sympd + arma::solve_opts::no_approx))
        throw std::runtime_error("sinr: positive-definite solve failed (non-finite input?)");

    arma::cx_double beta = arma::cdot(y, x);
    if (std::abs(beta.imag()) > 1e-10 * std::abs(beta.real()) + 1e-300)
        throw std::runtime_error("sinr: quadratic form has a non-real residue");
    return beta.real();
}

arma::vec SinrSampleSet::normalized(double beta_bar, double theta) const {
    if (!(theta > 0.0))
        throw std::invalid_argument("normalized: theta must be positive");
    return std::sqrt(double(n_users)) * (betas - beta_bar) / theta;
}

SinrSampleSet run_experiment(const VarianceProfile &profile, double rho,
                             const SymbolDistribution &dist, arma::uword n_trials,
                             std::uint64_t seed, unsigned n_workers) {
    if (n_trials == 0)
        throw std::invalid_argument("run_experiment: n_trials must be positive");
    if (n_workers == 0)
        n_workers = 1;

    SinrSampleSet set;
    set.betas.set_size(n_trials);
    set.rho = rho;
    set.n_users = profile.n_users;
    set.seed = seed;
    set.distribution = dist.name();
    set.profile_digest = profile_digest(profile);

    // Trial i always consumes stream (seed, trial, i); the worker split only
    // partitions indices, so the sample vector is identical for any count.
    auto run_block = [&](arma::uword begin, arma::uword end, std::exception_ptr &error) {
        try {
            for (arma::uword i = begin; i < end; i++) {
                std::mt19937_64 gen = derive_stream(seed, kStreamTrial, i);
                arma::cx_mat channel = sample_channel(profile, dist, gen);
                set.betas(i) = sinr(channel, rho);
            }
        } catch (...) {
            error = std::current_exception();
        }
    };

    if (n_workers == 1) {
        std::exception_ptr error;
        run_block(0, n_trials, error);
        if (error)
            std::rethrow_exception(error);
        return set;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_workers);
    const arma::uword block = (n_trials + n_workers - 1) / n_workers;
    for (unsigned w = 0; w < n_workers; w++) {
        arma::uword begin = std::min<arma::uword>(arma::uword(w) * block, n_trials);
        arma::uword end = std::min<arma::uword>(begin + block, n_trials);
        pool.emplace_back(run_block, begin, end, std::ref(errors[w]));
    }
    for (auto &worker : pool)
        worker.join();
    for (auto &error : errors)
        if (error)
            std::rethrow_exception(error);
    return set;
}

EmpiricalStats empirical_stats(const SinrSampleSet &samples, double beta_bar, double theta,
                               const arma::vec &quantile_levels, arma::uword n_bins, double lo,
                               double hi) {
    const arma::uword m = samples.betas.n_elem;
    if (m < 2)
        throw std::invalid_argument("empirical_stats: need at least two samples");
    if (!(theta > 0.0))
        throw std::invalid_argument("empirical_stats: theta must be positive");

    EmpiricalStats stats;
    stats.n_trials = m;
    stats.mean = arma::mean(samples.betas);
    stats.variance = arma::var(samples.betas); // unbiased (n - 1)
    stats.mse_ratio = double(samples.n_users) *
                      arma::mean(arma::square(samples.betas - beta_bar)) / (theta * theta);

    arma::vec normalized = samples.normalized(beta_bar, theta);
    stats.ks_normal = ks_distance_normal(normalized);
    stats.histogram = make_histogram(normalized, n_bins, lo, hi);

    stats.quantile_levels = quantile_levels;
    stats.quantiles.set_size(quantile_levels.n_elem);
    for (arma::uword i = 0; i < quantile_levels.n_elem; i++)
        stats.quantiles(i) = empirical_quantile(samples.betas, quantile_levels(i));
    return stats;
}

} // namespace lsa
