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

#include "lsa/detsolve.hpp"

#include <cmath>
#include <string>

namespace lsa {

NonConvergenceError::NonConvergenceError(arma::uword iterations_, double last_residual_)
    : std::runtime_error("fixed-point solver did not converge: residual " +
                         std::to_string(last_residual_) + " after " +
                         std::to_string(iterations_) + " iterations"),
      iterations(iterations_), last_residual(last_residual_) {}

namespace {

void validate_solve_inputs(double rho, const SolveOptions& opts) {
    if (!(rho > 0.0))
        throw std::invalid_argument("solver: rho must be positive");
    if (!(opts.tol > 0.0))
        throw std::invalid_argument("solver: tolerance must be positive");
    if (opts.max_iter == 0)
        throw std::invalid_argument("solver: max_iter must be positive");
}

} // namespace

DeterministicEquivalent solve_general(const VarianceProfile& profile, double rho,
                                      const SolveOptions& opts) {
    validate_solve_inputs(rho, opts);

    const arma::uword n = profile.n_rx;
    const arma::uword k_users = profile.n_users;
    const double inv_k = 1.0 / double(k_users);
    // Interference columns only; column 0 never enters the system.
    const arma::mat s = profile.sigma_sq.cols(1, k_users);

    const double upper = 1.0 / rho;
    const double lower = 1.0 / (rho + profile.sigma_max_sq());
    const double start = opts.init == SolveOptions::Init::NoInterference ? upper : lower;

    arma::vec t(n, arma::fill::value(start));
    arma::vec t_tilde(k_users, arma::fill::value(start));

    // Damped Picard iteration on the N+K equations; the undamped map already
    // contracts on [lower, upper], damping only guards against slow starts.
    double omega = 1.0;
    double prev_residual = arma::datum::inf;
    double residual = arma::datum::inf;
    arma::uword iter = 0;
    for (; iter < opts.max_iter; iter++) {
        arma::vec t_next = 1.0 / (rho * (1.0 + inv_k * (s * t_tilde)));
        arma::vec t_tilde_next = 1.0 / (rho * (1.0 + inv_k * (s.t() * t)));

        residual = std::max(arma::abs(t / t_next - 1.0).max(),
                            arma::abs(t_tilde / t_tilde_next - 1.0).max());
        if (residual <= opts.tol)
            break;

        if (residual > prev_residual && omega > 1.0 / 64.0)
            omega *= 0.5;
        prev_residual = residual;

        t += omega * (t_next - t);
        t_tilde += omega * (t_tilde_next - t_tilde);
    }
    if (residual > opts.tol)
        throw NonConvergenceError(iter, residual);

    DeterministicEquivalent det;
    det.rho = rho;
    det.t = std::move(t);
    det.t_tilde = std::move(t_tilde);
    det.beta_bar = inv_k * arma::dot(profile.sigma_sq.col(0), det.t);
    det.residual = residual;
    det.iterations = iter;

    // Return-path certificate: the solution must sit inside the proven
    // bracket (a few ulp of slack for the arithmetic above).
    if (det.t.min() < lower * (1.0 - 1e-13) || det.t.max() > upper * (1.0 + 1e-13) ||
        det.t_tilde.min() <= 0.0)
        throw NonConvergenceError(iter, residual);
    return det;
}

SeparableEquivalent solve_separable(const SeparableProfile& sep, double rho,
                                    const SolveOptions& opts) {
    validate_solve_inputs(rho, opts);

    const double inv_k = 1.0 / double(sep.n_users());
    const arma::vec& d = sep.d;
    const arma::vec dt = sep.d_tilde.tail(sep.n_users()); // interferer columns

    const double start = opts.init == SolveOptions::Init::NoInterference
                             ? 1.0 / rho
                             : 1.0 / (rho + std::max(d.max(), dt.max()));
    double delta = inv_k * arma::accu(d) * start;
    double delta_tilde = inv_k * arma::accu(dt) * start;

    double omega = 1.0;
    double prev_residual = arma::datum::inf;
    double residual = arma::datum::inf;
    arma::uword iter = 0;
    for (; iter < opts.max_iter; iter++) {
        double delta_next = inv_k * arma::accu(d / (rho * (1.0 + delta_tilde * d)));
        double delta_tilde_next = inv_k * arma::accu(dt / (rho * (1.0 + delta * dt)));

        residual = std::max(std::abs(delta / delta_next - 1.0),
                            std::abs(delta_tilde / delta_tilde_next - 1.0));
        if (residual <= opts.tol)
            break;

        if (residual > prev_residual && omega > 1.0 / 64.0)
            omega *= 0.5;
        prev_residual = residual;

        delta += omega * (delta_next - delta);
        delta_tilde += omega * (delta_tilde_next - delta_tilde);
    }
    if (residual > opts.tol)
        throw NonConvergenceError(iter, residual);

    SeparableEquivalent eq;
    eq.rho = rho;
    eq.delta = delta;
    eq.delta_tilde = delta_tilde;
    arma::vec t = 1.0 / (rho * (1.0 + delta_tilde * d));
    arma::vec t_tilde = 1.0 / (rho * (1.0 + delta * dt));
    eq.gamma = inv_k * arma::accu(arma::square(d % t));
    eq.gamma_tilde = inv_k * arma::accu(arma::square(dt % t_tilde));
    eq.residual = residual;
    eq.iterations = iter;
    return eq;
}

double solve_scalar_delta(const arma::vec& d, const arma::vec& p, double rho, double tol,
                          arma::uword max_iter) {
    if (!(rho > 0.0))
        throw std::invalid_argument("solve_scalar_delta: rho must be positive");
    if (d.n_elem == 0 || p.n_elem == 0)
        throw std::invalid_argument("solve_scalar_delta: empty input");

    const double inv_k = 1.0 / double(p.n_elem);
    auto rhs = [&](double delta) {
        double interference = inv_k * arma::accu(p / (1.0 + p * delta));
        return inv_k * arma::accu(d / (rho + d * interference));
    };

    double delta = inv_k * arma::accu(d) / rho;
    double residual = arma::datum::inf;
    for (arma::uword iter = 0; iter < max_iter; iter++) {
        double next = rhs(delta);
        residual = std::abs(delta - next);
        delta = next;
        if (residual <= tol)
            return delta;
    }
    throw NonConvergenceError(max_iter, residual);
}

double beta_bar(const DeterministicEquivalent& det, const VarianceProfile& profile) {
    return arma::dot(profile.sigma_sq.col(0), det.t) / double(profile.n_users);
}

arma::vec separable_t(const SeparableProfile& sep, const SeparableEquivalent& eq) {
    return 1.0 / (eq.rho * (1.0 + eq.delta_tilde * sep.d));
}

arma::vec separable_t_tilde(const SeparableProfile& sep, const SeparableEquivalent& eq) {
    return 1.0 / (eq.rho * (1.0 + eq.delta * sep.d_tilde.tail(sep.n_users())));
}

} // namespace lsa
