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

#ifndef LSA_DETSOLVE_HPP
#define LSA_DETSOLVE_HPP

#include <stdexcept>

#include "lsa/profiles.hpp"

namespace lsa {

struct SolveOptions {
    double tol = 1e-12;          // max relative residual over all N+K equations
    arma::uword max_iter = 10000;
    /// Starting point of the fixed-point iteration. Both lie inside the
    /// proven solution bounds [1/(rho + sigma_max^2), 1/rho].
    enum class Init { NoInterference, LowerBound } init = Init::NoInterference;
};

class NonConvergenceError : public std::runtime_error {
  public:
    NonConvergenceError(arma::uword iterations_, double last_residual_);
    arma::uword iterations;
    double last_residual;
};

/// Solution of the N+K fixed-point system at z = -rho. t_tilde covers the
/// K interferer columns only; the user-of-interest column never enters the
/// system.
struct DeterministicEquivalent {
    double rho = 0.0;
    arma::vec t;       // length N
    arma::vec t_tilde; // length K
    double beta_bar = 0.0; // (1/K) tr(D_0 T)
    double residual = 0.0;
    arma::uword iterations = 0;
};

/// Solution of the two-equation system of the separable case, together
/// with the second-moment traces used by the fluctuation variance.
struct SeparableEquivalent {
    double rho = 0.0;
    double delta = 0.0;       // (1/K) tr(D T)
    double delta_tilde = 0.0; // (1/K) tr(D_tilde T_tilde)
    double gamma = 0.0;       // (1/K) tr(D^2 T^2)
    double gamma_tilde = 0.0; // (1/K) tr(D_tilde^2 T_tilde^2)
    double residual = 0.0;
    arma::uword iterations = 0;
};

/// Solve the full N+K system by damped fixed-point iteration. The returned
/// solution is re-checked in the return path: residual <= tol and every
/// t_n inside [1/(rho + sigma_max^2), 1/rho].
DeterministicEquivalent solve_general(const VarianceProfile& profile, double rho,
                                      const SolveOptions& opts = {});

SeparableEquivalent solve_separable(const SeparableProfile& sep, double rho,
                                    const SolveOptions& opts = {});

/// Solve the scalar implicit equation
///   delta = (1/K) sum_n d_n / (rho + (1/K) d_n sum_k p_k / (1 + p_k delta))
/// for the separable/downlink models. `tol` bounds |delta - RHS(delta)|.
double solve_scalar_delta(const arma::vec& d, const arma::vec& p, double rho,
                          double tol = 1e-12, arma::uword max_iter = 10000);

/// (1/K) tr(D_0 T) recomputed from a solved equivalent and its profile.
double beta_bar(const DeterministicEquivalent& det, const VarianceProfile& profile);

/// Closed-form t_n = 1/(rho (1 + delta_tilde d_n)) of the separable case.
arma::vec separable_t(const SeparableProfile& sep, const SeparableEquivalent& eq);

/// Closed-form t_tilde_k = 1/(rho (1 + delta d_tilde_k)), interferer columns.
arma::vec separable_t_tilde(const SeparableProfile& sep, const SeparableEquivalent& eq);

} // namespace lsa

#endif
