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

#include "lsa/fluctuations.hpp"

#include <cmath>
#include <string>

#include "lsa/stats.hpp"

namespace lsa {

SingularSystemError::SingularSystemError(const std::string& what_) : std::runtime_error(what_) {}

DegenerateVarianceError::DegenerateVarianceError(double rho_sq_gamma_gamma_tilde)
    : std::runtime_error("variance formula degenerates: rho^2 gamma gamma_tilde = " +
                         std::to_string(rho_sq_gamma_gamma_tilde) + " is not below 1") {}

CltSystem build_A_Delta_g(const VarianceProfile& profile, const DeterministicEquivalent& det) {
    const arma::uword k_users = profile.n_users;
    const double inv_k = 1.0 / double(k_users);

    // cross(l, m) = (1/K) tr(D_l D_m T^2) for all column pairs at once.
    const arma::mat& s = profile.sigma_sq;
    arma::mat weighted = s.each_col() % arma::square(det.t);
    arma::mat cross = inv_k * (weighted.t() * s);

    CltSystem sys;
    sys.delta_diag.set_size(k_users);
    for (arma::uword l = 1; l <= k_users; l++) {
        double col_trace = inv_k * arma::dot(s.col(l), det.t);
        sys.delta_diag(l - 1) = (1.0 + col_trace) * (1.0 + col_trace);
    }
    sys.A = inv_k * (cross.submat(1, 1, k_users, k_users).each_col() / sys.delta_diag);
    sys.g = cross.col(0).tail(k_users);
    return sys;
}

FluctuationParams theta_squared(const VarianceProfile& profile,
                                const DeterministicEquivalent& det, double fourth_moment) {
    if (!(fourth_moment >= 1.0))
        throw std::invalid_argument("theta_squared: E|W|^4 must be >= 1");

    const arma::uword k_users = profile.n_users;
    const double inv_k = 1.0 / double(k_users);
    CltSystem sys = build_A_Delta_g(profile, det);

    arma::mat system = arma::eye(k_users, k_users) - sys.A;
    arma::vec v;
    if (!arma::solve(v, system, sys.g / sys.delta_diag, arma::solve_opts::no_approx) ||
        !v.is_finite())
        throw SingularSystemError("theta_squared: I - A is numerically singular");

    FluctuationParams params;
    params.fourth_moment = fourth_moment;
    params.quad_term = inv_k * arma::dot(sys.g, v);
    params.kurtosis_term =
        (fourth_moment - 1.0) * inv_k *
        arma::dot(arma::square(profile.sigma_sq.col(0)), arma::square(det.t));
    params.theta_sq = params.quad_term + params.kurtosis_term;
    return params;
}

double omega_squared(const SeparableEquivalent& eq, double fourth_moment) {
    if (!(fourth_moment >= 1.0))
        throw std::invalid_argument("omega_squared: E|W|^4 must be >= 1");
    const double x = eq.rho * eq.rho * eq.gamma * eq.gamma_tilde;
    if (x >= 1.0 - 1e-12)
        throw DegenerateVarianceError(x);
    return eq.gamma * (x / (1.0 - x) + (fourth_moment - 1.0));
}

CltCertificate clt_certificate(const arma::mat& A) {
    arma::mat inv;
    if (!arma::inv(inv, arma::eye(A.n_rows, A.n_cols) - A) || !inv.is_finite())
        throw SingularSystemError("clt_certificate: I - A is numerically singular");

    CltCertificate cert;
    const double tol = 1e-12 * std::max(1.0, arma::abs(inv).max());
    cert.inv_nonnegative = inv.min() >= -tol;
    cert.inv_diag_min = inv.diag().min();
    cert.inv_rowsum_norm = arma::norm(inv, "inf");
    return cert;
}

double outage_sinr(double beta_bar, double theta_sq, arma::uword n_users, double prob_level) {
    if (!(theta_sq >= 0.0))
        throw std::invalid_argument("outage_sinr: theta_sq must be nonnegative");
    if (n_users == 0)
        throw std::invalid_argument("outage_sinr: n_users must be positive");
    return beta_bar + std::sqrt(theta_sq / double(n_users)) * normal_quantile(prob_level);
}

} // namespace lsa
