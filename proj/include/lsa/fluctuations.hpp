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

#ifndef LSA_FLUCTUATIONS_HPP
#define LSA_FLUCTUATIONS_HPP

#include <optional>
#include <stdexcept>

#include "lsa/detsolve.hpp"
#include "lsa/profiles.hpp"

namespace lsa {

class SingularSystemError : public std::runtime_error {
  public:
    explicit SingularSystemError(const std::string& what_);
};

class DegenerateVarianceError : public std::runtime_error {
  public:
    explicit DegenerateVarianceError(double rho_sq_gamma_gamma_tilde);
};

/// Asymptotic variance of sqrt(K) (beta - beta_bar), split into the
/// quadratic-form term and the kurtosis term. theta_sq is their exact sum.
struct FluctuationParams {
    double theta_sq = 0.0;
    double quad_term = 0.0;     // (1/K) g^T (I - A)^-1 Delta^-1 g
    double kurtosis_term = 0.0; // (E|W|^4 - 1) (1/K) tr(D_0^2 T^2)
    double fourth_moment = 2.0;
    std::optional<double> omega_sq; // separable case: theta_sq = d_tilde_0^2 * omega_sq
};

/// Structural facts about (I - A)^-1 that every valid model must satisfy:
/// elementwise nonnegative, diagonal >= 1, finite maximum-row-sum norm.
struct CltCertificate {
    bool inv_nonnegative = false;
    double inv_diag_min = 0.0;
    double inv_rowsum_norm = 0.0;
};

/// The K x K matrices and K vector of the variance formula:
///   A_lm = (1/K) [(1/K) tr(D_l D_m T^2)] / (1 + (1/K) tr(D_l T))^2
///   Delta_ll = (1 + (1/K) tr(D_l T))^2   (stored as a vector)
///   g_k = (1/K) tr(D_0 D_k T^2)
struct CltSystem {
    arma::mat A;
    arma::vec delta_diag;
    arma::vec g;
};

CltSystem build_A_Delta_g(const VarianceProfile& profile, const DeterministicEquivalent& det);

/// Fluctuation variance Theta^2. The K x K system (I - A) x = Delta^-1 g is
/// solved by a pivoted dense factorization. `fourth_moment` = E|W|^4 of the
/// symbol distribution (2 complex Gaussian, 1 unit modulus); must be >= 1.
FluctuationParams theta_squared(const VarianceProfile& profile, const DeterministicEquivalent& det,
                                double fourth_moment);

/// Normalized variance of the separable case:
///   Omega^2 = gamma (rho^2 gamma gamma_tilde / (1 - rho^2 gamma gamma_tilde)
///             + (E|W|^4 - 1)).
/// Throws DegenerateVarianceError when rho^2 gamma gamma_tilde >= 1 - 1e-12.
double omega_squared(const SeparableEquivalent& eq, double fourth_moment);

CltCertificate clt_certificate(const arma::mat& A);

/// Gaussian-approximation outage SINR: beta_bar + sqrt(theta_sq / K) * z(p)
/// where z is the standard normal quantile. For small p this is the level
/// the SINR falls below with probability p.
double outage_sinr(double beta_bar, double theta_sq, arma::uword n_users, double prob_level);

} // namespace lsa

#endif
