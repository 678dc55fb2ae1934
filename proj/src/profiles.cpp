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

#include "lsa/profiles.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

#include "lsa/rng.hpp"

namespace lsa {

VarianceProfile::VarianceProfile(arma::uword n_rx_, arma::uword n_users_, arma::mat sigma_sq_)
    : n_rx(n_rx_), n_users(n_users_), sigma_sq(std::move(sigma_sq_)) {
    if (n_rx == 0)
        throw std::invalid_argument("VarianceProfile: n_rx must be positive");
    if (n_users == 0)
        throw std::invalid_argument("VarianceProfile: n_users must be positive");
    if (sigma_sq.n_rows != n_rx || sigma_sq.n_cols != n_users + 1)
        throw std::invalid_argument("VarianceProfile: sigma_sq must be n_rx x (n_users + 1)");
    if (!sigma_sq.is_finite())
        throw std::invalid_argument("VarianceProfile: sigma_sq must be finite");
    if (sigma_sq.min() < 0.0)
        throw std::invalid_argument("VarianceProfile: sigma_sq must be nonnegative");
}

double VarianceProfile::sigma_max_sq() const {
    return sigma_sq.max();
}

double VarianceProfile::column_trace(arma::uword k) const {
    if (k > n_users)
        throw std::invalid_argument("VarianceProfile: column index out of range");
    return arma::accu(sigma_sq.col(k)) / double(n_users);
}

SeparableProfile::SeparableProfile(arma::vec d_, arma::vec d_tilde_)
    : d(std::move(d_)), d_tilde(std::move(d_tilde_)) {
    if (d.n_elem == 0)
        throw std::invalid_argument("SeparableProfile: d must be nonempty");
    if (d_tilde.n_elem < 2)
        throw std::invalid_argument("SeparableProfile: d_tilde needs the user of interest and at "
                                    "least one interferer");
    if (!d.is_finite() || !d_tilde.is_finite())
        throw std::invalid_argument("SeparableProfile: factors must be finite");
    if (d.min() <= 0.0 || d_tilde.min() <= 0.0)
        throw std::invalid_argument("SeparableProfile: factors must be positive");
}

VarianceProfile SeparableProfile::materialize() const {
    return VarianceProfile(n_rx(), n_users(), d * d_tilde.t());
}

VarianceProfile build_iid_profile(arma::uword n_rx, arma::uword n_users) {
    if (n_rx == 0 || n_users == 0)
        throw std::invalid_argument("build_iid_profile: dimensions must be positive");
    arma::mat sigma_sq(n_rx, n_users + 1);
    sigma_sq.fill(double(n_users) / double(n_rx));
    return VarianceProfile(n_rx, n_users, std::move(sigma_sq));
}

SeparableProfile build_mimo_kronecker(const arma::vec& lambda, const arma::vec& powers) {
    return SeparableProfile(lambda, powers);
}

namespace {

// Squared magnitude of the length-L transfer function of `taps` on the N
// DFT bins, scaled to power * |h|^2 / ||g||^2.
arma::vec transfer_power(const arma::cx_vec& taps, double power, arma::uword n_rx) {
    if (taps.n_elem == 0)
        throw std::invalid_argument("transfer_power: empty tap vector");
    if (taps.n_elem > n_rx)
        throw std::invalid_argument("transfer_power: more taps than frequency bins");
    double norm_sq = arma::accu(arma::square(arma::abs(taps)));
    if (!(norm_sq > 0.0))
        throw std::invalid_argument("transfer_power: zero tap vector");
    arma::cx_vec padded(n_rx, arma::fill::zeros);
    padded.head(taps.n_elem) = taps;
    arma::cx_vec h = arma::fft(padded);
    return (power / norm_sq) * arma::square(arma::abs(h));
}

} // namespace

VarianceProfile build_mccdma_uplink(const std::vector<arma::cx_vec>& taps,
                                    const arma::vec& powers, arma::uword n_rx) {
    if (taps.size() != powers.n_elem)
        throw std::invalid_argument("build_mccdma_uplink: one tap vector per user required");
    if (powers.n_elem < 2)
        throw std::invalid_argument("build_mccdma_uplink: need the user of interest and at least "
                                    "one interferer");
    if (powers.min() <= 0.0)
        throw std::invalid_argument("build_mccdma_uplink: powers must be positive");
    const arma::uword n_users = powers.n_elem - 1;
    arma::mat sigma_sq(n_rx, n_users + 1);
    const double load = double(n_users) / double(n_rx);
    for (arma::uword k = 0; k <= n_users; k++)
        sigma_sq.col(k) = load * transfer_power(taps[k], powers(k), n_rx);
    return VarianceProfile(n_rx, n_users, std::move(sigma_sq));
}

SeparableProfile build_mccdma_downlink(const arma::cx_vec& taps, const arma::vec& powers,
                                       arma::uword n_rx) {
    const double load = double(powers.n_elem - 1) / double(n_rx);
    arma::vec d = load * transfer_power(taps, 1.0, n_rx);
    return SeparableProfile(std::move(d), powers);
}

SeparableProfile build_cdma_flat(const arma::vec& powers, arma::uword n_rx) {
    if (n_rx == 0)
        throw std::invalid_argument("build_cdma_flat: n_rx must be positive");
    const double load = double(powers.n_elem - 1) / double(n_rx);
    return SeparableProfile(arma::vec(n_rx, arma::fill::ones), load * powers);
}

arma::vec build_power_classes(double base_power, arma::uword n_users, std::uint64_t seed) {
    if (!(base_power > 0.0))
        throw std::invalid_argument("build_power_classes: base_power must be positive");
    if (n_users == 0)
        throw std::invalid_argument("build_power_classes: n_users must be positive");

    static constexpr std::array<double, 5> multiplier = {1.0, 2.0, 4.0, 8.0, 16.0};
    static constexpr std::array<double, 5> frequency = {0.125, 0.25, 0.25, 0.125, 0.25};

    // Largest-remainder apportionment of K users to the five classes;
    // leftover slots go to the largest fractional parts, ties in class order.
    std::array<arma::uword, 5> count{};
    std::array<double, 5> fraction{};
    arma::uword assigned = 0;
    for (std::size_t c = 0; c < 5; c++) {
        double exact = frequency[c] * double(n_users);
        count[c] = arma::uword(exact);
        fraction[c] = exact - double(count[c]);
        assigned += count[c];
    }
    std::array<std::size_t, 5> order = {0, 1, 2, 3, 4};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fraction[a] > fraction[b]; });
    for (std::size_t i = 0; assigned < n_users; i++, assigned++)
        count[order[i % 5]]++;

    arma::vec powers(n_users);
    arma::uword pos = 0;
    for (std::size_t c = 0; c < 5; c++)
        for (arma::uword i = 0; i < count[c]; i++)
            powers(pos++) = multiplier[c] * base_power;

    // Platform-independent Fisher-Yates; std::shuffle's index law is
    // implementation-defined.
    std::mt19937_64 gen = derive_stream(seed, kStreamPowerShuffle, 0);
    for (arma::uword i = n_users - 1; i > 0; i--) {
        arma::uword j = arma::uword(gen() % (i + 1));
        std::swap(powers(i), powers(j));
    }
    return powers;
}

AssumptionReport check_assumptions(const VarianceProfile& profile, double fourth_moment) {
    AssumptionReport report{};
    report.a2_sigma_max = std::sqrt(profile.sigma_max_sq());

    double min_trace = profile.column_trace(0);
    for (arma::uword k = 1; k <= profile.n_users; k++)
        min_trace = std::min(min_trace, profile.column_trace(k));
    report.a3_min_column_trace = min_trace;

    const double k_users = double(profile.n_users);
    arma::vec interferer_row_sum =
        arma::sum(profile.sigma_sq.cols(1, profile.n_users), 1);
    report.a4_cross_trace =
        arma::dot(profile.sigma_sq.col(0), interferer_row_sum) / (k_users * k_users);

    const bool kurtosis_branch = fourth_moment > 1.0;
    const bool trace_branch = report.a4_cross_trace > 0.0;
    if (kurtosis_branch && trace_branch)
        report.a4_branch = A4Branch::Both;
    else if (kurtosis_branch)
        report.a4_branch = A4Branch::FourthMomentExceedsOne;
    else if (trace_branch)
        report.a4_branch = A4Branch::CrossTracePositive;
    else
        report.a4_branch = A4Branch::Neither;
    return report;
}

arma::vec exp_correlation_eigenvalues(double a, arma::uword n_rx) {
    if (n_rx == 0)
        throw std::invalid_argument("exp_correlation_eigenvalues: n_rx must be positive");
    if (!(a >= 0.0) || !(a < 1.0))
        throw std::invalid_argument("exp_correlation_eigenvalues: coefficient must lie in [0, 1)");
    arma::mat psi(n_rx, n_rx);
    for (arma::uword m = 0; m < n_rx; m++)
        for (arma::uword n = 0; n < n_rx; n++)
            psi(m, n) = std::pow(a, double(m > n ? m - n : n - m));
    arma::vec lambda;
    if (!arma::eig_sym(lambda, psi))
        throw std::runtime_error("exp_correlation_eigenvalues: eigensolver failed");
    return lambda;
}

SeparableProfile factor_separable(const VarianceProfile& profile, double rel_tol) {
    const arma::mat& s = profile.sigma_sq;
    if (s.min() <= 0.0)
        throw std::invalid_argument("factor_separable: profile must be strictly positive");

    // Canonical normalization d[0] = 1: row 0 is d_tilde itself, and each
    // d_n follows from the best-conditioned column.
    arma::vec d_tilde = s.row(0).t();
    arma::uword pivot = d_tilde.index_max();
    arma::vec d = s.col(pivot) / d_tilde(pivot);

    const double scale = s.max();
    for (arma::uword n = 0; n < profile.n_rx; n++)
        for (arma::uword k = 0; k <= profile.n_users; k++)
            if (std::abs(s(n, k) - d(n) * d_tilde(k)) > rel_tol * scale)
                throw std::invalid_argument("factor_separable: profile is not rank one");
    return SeparableProfile(std::move(d), std::move(d_tilde));
}

} // namespace lsa
