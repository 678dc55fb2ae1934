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

#include <catch2/catch_amalgamated.hpp>

#include "lsa/fluctuations.hpp"
#include "lsa/rng.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kGoldenRatioConj = 0.6180339887498949;  // (sqrt(5)-1)/2
constexpr double kOmegaSqGaussian = 0.44721359549995804; // delta^2/(1-delta^4)
constexpr double kOmegaSqQpsk = 0.06524758424985283;     // delta^6/(1-delta^4)

// deterministic "random" separable profile for cross-checks
lsa::SeparableProfile random_separable(std::uint64_t seed, arma::uword n, arma::uword k)
{
    std::mt19937_64 gen = lsa::derive_stream(seed, 77, 0);
    auto uniform = [&gen](double lo, double hi) {
        return lo + (hi - lo) * (double(gen() >> 11) * 0x1.0p-53);
    };
    arma::vec d(n), d_tilde(k + 1);
    for (auto& v : d)
        v = std::exp(uniform(-1.0, 1.0));
    for (auto& v : d_tilde)
        v = std::exp(uniform(-1.0, 1.0));
    return lsa::SeparableProfile(d, d_tilde);
}

} // namespace

TEST_CASE("build_A_Delta_g - empty interference collapses the system")
{
    arma::mat sigma_sq(3, 4, arma::fill::zeros);
    sigma_sq.col(0) = arma::vec{1.0, 2.0, 3.0};
    lsa::VarianceProfile profile(3, 3, sigma_sq);
    lsa::DeterministicEquivalent det = lsa::solve_general(profile, 1.0);

    lsa::CltSystem sys = lsa::build_A_Delta_g(profile, det);
    REQUIRE(arma::abs(sys.A).max() == 0.0);
    REQUIRE(arma::abs(sys.delta_diag - 1.0).max() <= 1e-15);
    REQUIRE(arma::abs(sys.g).max() == 0.0);
}

TEST_CASE("build_A_Delta_g - iid square profile scalar structure")
{
    const arma::uword k = 16;
    lsa::VarianceProfile profile = lsa::build_iid_profile(k, k);
    lsa::DeterministicEquivalent det = lsa::solve_general(profile, 1.0);
    lsa::CltSystem sys = lsa::build_A_Delta_g(profile, det);

    const double delta = kGoldenRatioConj;
    const double delta4 = delta * delta * delta * delta;
    // A_lm = delta^4 / K, Delta_ll = (1+delta)^2 = 1/delta^2, g_k = delta^2
    for (arma::uword l = 0; l < k; l++) {
        REQUIRE_THAT(sys.delta_diag(l), WithinRel(1.0 / (delta * delta), 1e-10));
        REQUIRE_THAT(sys.g(l), WithinRel(delta * delta, 1e-10));
        for (arma::uword m = 0; m < k; m++)
            REQUIRE_THAT(sys.A(l, m), WithinRel(delta4 / double(k), 1e-10));
    }
}

TEST_CASE("build_A_Delta_g - separable profile has the rank-one structure")
{
    lsa::SeparableProfile sep = random_separable(3, 12, 9);
    lsa::VarianceProfile profile = sep.materialize();
    lsa::DeterministicEquivalent det = lsa::solve_general(profile, 0.6);
    lsa::SeparableEquivalent eq = lsa::solve_separable(sep, 0.6);
    lsa::CltSystem sys = lsa::build_A_Delta_g(profile, det);

    // A = (gamma/K) Delta^-1 d_tilde d_tilde^T over the interferer columns
    arma::vec dt = sep.d_tilde.tail(sep.n_users());
    arma::mat outer = dt * dt.t();
    outer.each_col() /= sys.delta_diag;
    outer *= eq.gamma / double(sep.n_users());
    REQUIRE(arma::abs(sys.A - outer).max() <= 1e-10 * arma::abs(sys.A).max());

    // g = gamma * d_tilde_0 * d_tilde
    arma::vec g_closed = eq.gamma * sep.d_tilde(0) * dt;
    REQUIRE(arma::abs(sys.g - g_closed).max() <= 1e-10 * arma::abs(sys.g).max());
}

TEST_CASE("theta_squared - kurtosis-only case with empty interference")
{
    arma::mat sigma_sq(4, 3, arma::fill::zeros);
    sigma_sq.col(0) = arma::vec{1.0, 2.0, 0.5, 1.5};
    lsa::VarianceProfile profile(4, 2, sigma_sq);
    const double rho = 2.0;
    lsa::DeterministicEquivalent det = lsa::solve_general(profile, rho);

    lsa::FluctuationParams params = lsa::theta_squared(profile, det, 2.0);
    double tr_d0_sq = arma::accu(arma::square(sigma_sq.col(0)));
    REQUIRE(params.quad_term == 0.0);
    REQUIRE_THAT(params.theta_sq, WithinRel(tr_d0_sq / (2.0 * rho * rho), 1e-13));

    // unit-modulus symbols kill the kurtosis term entirely
    lsa::FluctuationParams psk = lsa::theta_squared(profile, det, 1.0);
    REQUIRE(psk.theta_sq == 0.0);
}

TEST_CASE("theta_squared - iid square profile closed forms")
{
    lsa::VarianceProfile profile = lsa::build_iid_profile(24, 24);
    lsa::DeterministicEquivalent det = lsa::solve_general(profile, 1.0);

    lsa::FluctuationParams gauss = lsa::theta_squared(profile, det, 2.0);
    REQUIRE_THAT(gauss.theta_sq, WithinRel(kOmegaSqGaussian, 1e-9));

    lsa::FluctuationParams psk = lsa::theta_squared(profile, det, 1.0);
    REQUIRE_THAT(psk.theta_sq, WithinRel(kOmegaSqQpsk, 1e-9));

    // decomposition is exact by construction
    REQUIRE(gauss.theta_sq == gauss.quad_term + gauss.kurtosis_term);
    REQUIRE(psk.kurtosis_term == 0.0);

    // kurtosis ordering (strict here since tr D_0^2 T^2 > 0)
    REQUIRE(psk.theta_sq < gauss.theta_sq);

    REQUIRE_THROWS_AS(lsa::theta_squared(profile, det, 0.5), std::invalid_argument);
}

TEST_CASE("omega_squared - closed forms and degenerate guard")
{
    lsa::SeparableProfile sep(arma::vec(16, arma::fill::ones), arma::vec(17, arma::fill::ones));
    lsa::SeparableEquivalent eq = lsa::solve_separable(sep, 1.0);

    REQUIRE_THAT(lsa::omega_squared(eq, 2.0), WithinRel(kOmegaSqGaussian, 1e-10));
    REQUIRE_THAT(lsa::omega_squared(eq, 1.0), WithinRel(kOmegaSqQpsk, 1e-10));

    lsa::SeparableEquivalent zero_gamma = eq;
    zero_gamma.gamma = 0.0;
    REQUIRE(lsa::omega_squared(zero_gamma, 2.0) == 0.0);

    lsa::SeparableEquivalent degenerate = eq;
    degenerate.gamma = degenerate.gamma_tilde = 1.0;
    degenerate.rho = 1.0;
    REQUIRE_THROWS_AS(lsa::omega_squared(degenerate, 2.0), lsa::DegenerateVarianceError);
}

TEST_CASE("theta_squared - separable equivalence theta^2 = d_tilde_0^2 omega^2")
{
    for (std::uint64_t seed : {11, 12, 13}) {
        lsa::SeparableProfile sep = random_separable(seed, 20, 14);
        lsa::VarianceProfile profile = sep.materialize();
        const double rho = 0.9;
        lsa::DeterministicEquivalent det = lsa::solve_general(profile, rho);
        lsa::SeparableEquivalent eq = lsa::solve_separable(sep, rho);

        for (double fourth_moment : {1.0, 2.0}) {
            double theta_sq = lsa::theta_squared(profile, det, fourth_moment).theta_sq;
            double omega_sq = lsa::omega_squared(eq, fourth_moment);
            double d0 = sep.d_tilde(0);
            REQUIRE_THAT(theta_sq, WithinRel(d0 * d0 * omega_sq, 1e-8));
        }
    }
}

TEST_CASE("clt_certificate - identity case and iid symmetry")
{
    lsa::CltCertificate unit = lsa::clt_certificate(arma::mat(5, 5, arma::fill::zeros));
    REQUIRE(unit.inv_nonnegative);
    REQUIRE_THAT(unit.inv_diag_min, WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(unit.inv_rowsum_norm, WithinAbs(1.0, 1e-14));

    lsa::VarianceProfile profile = lsa::build_iid_profile(8, 8);
    lsa::DeterministicEquivalent det = lsa::solve_general(profile, 1.0);
    lsa::CltSystem sys = lsa::build_A_Delta_g(profile, det);
    lsa::CltCertificate cert = lsa::clt_certificate(sys.A);
    REQUIRE(cert.inv_nonnegative);
    REQUIRE(cert.inv_diag_min >= 1.0 - 1e-12);
    REQUIRE(std::isfinite(cert.inv_rowsum_norm));

    // symmetric profile: all diagonal entries equal
    arma::mat inv = arma::inv(arma::eye(8, 8) - sys.A);
    REQUIRE(arma::abs(inv.diag() - inv(0, 0)).max() <= 1e-12);
}

TEST_CASE("clt_certificate - Sherman-Morrison agrees on rank-one systems")
{
    lsa::SeparableProfile sep = random_separable(21, 10, 8);
    lsa::VarianceProfile profile = sep.materialize();
    lsa::DeterministicEquivalent det = lsa::solve_general(profile, 1.1);
    lsa::SeparableEquivalent eq = lsa::solve_separable(sep, 1.1);
    lsa::CltSystem sys = lsa::build_A_Delta_g(profile, det);

    // (I - c u v^T)^-1 = I + c u v^T / (1 - c v^T u) with u = Delta^-1 d_tilde,
    // v = d_tilde, c = gamma/K
    arma::vec dt = sep.d_tilde.tail(sep.n_users());
    arma::vec u = dt / sys.delta_diag;
    const double c = eq.gamma / double(sep.n_users());
    arma::mat sherman = arma::eye(8, 8) + c * (u * dt.t()) / (1.0 - c * arma::dot(dt, u));
    arma::mat dense = arma::inv(arma::eye(8, 8) - sys.A);
    REQUIRE(arma::abs(sherman - dense).max() <= 1e-10 * arma::abs(dense).max());
}

TEST_CASE("theta_squared - positive whenever the non-degeneracy assumption holds")
{
    for (std::uint64_t seed : {31, 32}) {
        lsa::SeparableProfile sep = random_separable(seed, 16, 12);
        lsa::VarianceProfile profile = sep.materialize();
        lsa::DeterministicEquivalent det = lsa::solve_general(profile, 1.0);
        for (double fourth_moment : {1.0, 2.0}) {
            lsa::AssumptionReport report = lsa::check_assumptions(profile, fourth_moment);
            if (report.a4_branch != lsa::A4Branch::Neither)
                REQUIRE(lsa::theta_squared(profile, det, fourth_moment).theta_sq > 0.0);
        }
    }
}

TEST_CASE("outage_sinr - quantile arithmetic")
{
    REQUIRE_THAT(lsa::outage_sinr(0.7, 0.3, 16, 0.5), WithinAbs(0.7, 1e-14));
    REQUIRE(lsa::outage_sinr(0.7, 0.0, 16, 0.01) == 0.7);
    REQUIRE_THAT(lsa::outage_sinr(kGoldenRatioConj, kOmegaSqGaussian, 64, 0.01),
                 WithinRel(0.42356866540397953, 1e-12));
    REQUIRE(lsa::outage_sinr(1.0, 0.5, 32, 0.01) < 1.0);
    REQUIRE_THROWS_AS(lsa::outage_sinr(1.0, -0.1, 32, 0.01), std::invalid_argument);
    REQUIRE_THROWS_AS(lsa::outage_sinr(1.0, 0.1, 32, 0.0), std::invalid_argument);
}
