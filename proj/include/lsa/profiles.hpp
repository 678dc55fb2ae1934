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

#ifndef LSA_PROFILES_HPP
#define LSA_PROFILES_HPP

#include <armadillo>
#include <cstdint>
#include <vector>

namespace lsa {

/// Variance profile of an N x (K+1) random channel matrix. Entry (n, k)
/// stores sigma^2_nk, so the channel entry (n, k) has variance
/// sigma^2_nk / K. Column 0 belongs to the user of interest, columns
/// 1..K to the K interferers.
struct VarianceProfile {
    arma::uword n_rx = 0;   // N
    arma::uword n_users = 0; // K (interferers only)
    arma::mat sigma_sq;     // N x (K+1), finite, >= 0

    VarianceProfile() = default;
    VarianceProfile(arma::uword n_rx_, arma::uword n_users_, arma::mat sigma_sq_);

    double sigma_max_sq() const; // max entry
    /// (1/K) tr D_k, the normalized trace of the diagonal variance matrix
    /// of column k (0 <= k <= K).
    double column_trace(arma::uword k) const;
};

/// Separable (rank-one) variance profile sigma^2_nk = d_n * d_tilde_k.
/// d_tilde has K+1 entries; index 0 is the power factor of the user of
/// interest.
struct SeparableProfile {
    arma::vec d;       // length N, all > 0
    arma::vec d_tilde; // length K+1, all > 0

    SeparableProfile() = default;
    SeparableProfile(arma::vec d_, arma::vec d_tilde_);

    arma::uword n_rx() const { return d.n_elem; }
    arma::uword n_users() const { return d_tilde.n_elem - 1; }

    VarianceProfile materialize() const;
};

enum class A4Branch { FourthMomentExceedsOne, CrossTracePositive, Both, Neither };

/// Numerical summary of the model assumptions for a given profile and
/// symbol fourth moment. A2 is the uniform bound on |sigma_nk|, A3 the
/// lower bound on the column traces, A4 the non-degeneracy condition for
/// the fluctuation variance.
struct AssumptionReport {
    double a2_sigma_max;        // max |sigma_nk|
    double a3_min_column_trace; // min_k (1/K) tr D_k
    A4Branch a4_branch;
    double a4_cross_trace;      // (1/K^2) tr(D_0 sum_{k=1..K} D_k)
};

/// Profile with all entries K/N, so channel entries have variance 1/N.
VarianceProfile build_iid_profile(arma::uword n_rx, arma::uword n_users);

/// Kronecker MIMO model with common receive correlation: d_n are the
/// eigenvalues of the receive correlation matrix, d_tilde_k the source
/// powers (index 0 = user of interest).
SeparableProfile build_mimo_kronecker(const arma::vec& lambda, const arma::vec& powers);

/// MC-CDMA uplink over frequency-selective channels. User k has tap
/// vector g_k and received power P_k; the profile entry for frequency
/// bin n is (K/N) P_k |h_k(e^{2 i pi (n-1)/N})|^2 with h_k the unit-norm
/// transfer function of g_k. `taps` and `powers` have K+1 entries.
VarianceProfile build_mccdma_uplink(const std::vector<arma::cx_vec>& taps,
                                    const arma::vec& powers, arma::uword n_rx);

/// MC-CDMA downlink: one common channel with tap vector `taps`,
/// d_n = (K/N) |h(e^{2 i pi (n-1)/N})|^2 and d_tilde = powers.
SeparableProfile build_mccdma_downlink(const arma::cx_vec& taps,
                                       const arma::vec& powers, arma::uword n_rx);

/// CDMA over flat fading: d_n = 1 and d_tilde_k = (K/N) p_k.
SeparableProfile build_cdma_flat(const arma::vec& powers, arma::uword n_rx);

/// Draw K interferer powers from the five power classes
/// {P, 2P, 4P, 8P, 16P} with relative frequencies {1/8, 1/4, 1/4, 1/8, 1/4}.
/// Class counts follow largest-remainder rounding (ties resolved in class
/// order 1..5); the assignment order is shuffled deterministically from
/// `seed`. The user of interest is not part of the returned vector and is
/// assigned power P by convention.
arma::vec build_power_classes(double base_power, arma::uword n_users, std::uint64_t seed);

AssumptionReport check_assumptions(const VarianceProfile& profile, double fourth_moment);

/// Eigenvalues of the exponential-correlation matrix [a^|m-n|], ascending.
arma::vec exp_correlation_eigenvalues(double a, arma::uword n_rx);

/// Factor a separable variance profile back into (d, d_tilde) with the
/// canonical normalization d[0] = 1 (the scale is absorbed into d_tilde).
/// Throws std::invalid_argument when the profile is not rank one.
SeparableProfile factor_separable(const VarianceProfile& profile, double rel_tol = 1e-9);

} // namespace lsa

#endif
