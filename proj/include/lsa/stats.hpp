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

#ifndef LSA_STATS_HPP
#define LSA_STATS_HPP

#include <armadillo>

namespace lsa {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile, accurate to a few ulp over (0, 1).
/// Throws std::invalid_argument outside (0, 1).
double normal_quantile(double p);

/// Sup-norm distance between the empirical CDF of `samples` and the
/// standard normal CDF (one-sample Kolmogorov-Smirnov statistic).
double ks_distance_normal(const arma::vec& samples);

/// Empirical quantile with linear interpolation between order statistics
/// (the common "type 7" definition). `level` in [0, 1].
double empirical_quantile(const arma::vec& samples, double level);

struct Histogram {
    arma::vec edges;   // n_bins + 1 edges, ascending
    arma::uvec counts; // per-bin counts; values outside [lo, hi) are dropped
};

Histogram make_histogram(const arma::vec& samples, arma::uword n_bins, double lo, double hi);

} // namespace lsa

#endif
