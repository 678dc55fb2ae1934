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

#include "lsa/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace lsa {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("normal_quantile: level must lie strictly inside (0, 1)");

    // Rational initial guess (Acklam), then one Halley step against the
    // erfc-based CDF; this reaches a few ulp over the whole open interval.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * arma::datum::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double ks_distance_normal(const arma::vec& samples) {
    const arma::uword m = samples.n_elem;
    if (m == 0)
        throw std::invalid_argument("ks_distance_normal: empty sample vector");

    arma::vec sorted = arma::sort(samples);
    double dist = 0.0;
    for (arma::uword i = 0; i < m; i++) {
        double f = normal_cdf(sorted(i));
        double hi = double(i + 1) / double(m) - f;
        double lo = f - double(i) / double(m);
        dist = std::max(dist, std::max(hi, lo));
    }
    return dist;
}

double empirical_quantile(const arma::vec& samples, double level) {
    const arma::uword m = samples.n_elem;
    if (m == 0)
        throw std::invalid_argument("empirical_quantile: empty sample vector");
    if (!(level >= 0.0) || !(level <= 1.0))
        throw std::invalid_argument("empirical_quantile: level must lie in [0, 1]");

    arma::vec sorted = arma::sort(samples);
    if (m == 1)
        return sorted(0);

    double h = level * double(m - 1);
    arma::uword i = arma::uword(std::floor(h));
    if (i >= m - 1)
        return sorted(m - 1);
    double frac = h - double(i);
    return sorted(i) + frac * (sorted(i + 1) - sorted(i));
}

Histogram make_histogram(const arma::vec& samples, arma::uword n_bins, double lo, double hi) {
    if (n_bins == 0)
        throw std::invalid_argument("make_histogram: n_bins must be positive");
    if (!(hi > lo))
        throw std::invalid_argument("make_histogram: upper edge must exceed lower edge");

    Histogram h;
    h.edges = arma::linspace(lo, hi, n_bins + 1);
    h.counts.zeros(n_bins);
    const double scale = double(n_bins) / (hi - lo);
    for (arma::uword i = 0; i < samples.n_elem; i++) {
        double x = samples(i);
        if (x < lo || x >= hi)
            continue;
        arma::uword bin = arma::uword((x - lo) * scale);
        if (bin >= n_bins)
            bin = n_bins - 1;
        h.counts(bin)++;
    }
    return h;
}

} // namespace lsa
