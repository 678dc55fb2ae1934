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

#include "lsa/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "lsa/stats.hpp"

namespace lsa {

namespace {

std::string format_double(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

arma::vec vec_from_json(const nlohmann::json &j, const char *field) {
    if (!j.contains(field) || !j.at(field).is_array())
        throw std::invalid_argument(std::string("profile JSON: missing array field '") + field +
                                    "'");
    const auto &arr = j.at(field);
    arma::vec v(arr.size());
    for (std::size_t i = 0; i < arr.size(); i++)
        v(i) = arr[i].get<double>();
    return v;
}

} // namespace

nlohmann::json profile_to_json(const VarianceProfile &profile) {
    nlohmann::json flat = nlohmann::json::array();
    for (arma::uword n = 0; n < profile.n_rx; n++)
        for (arma::uword k = 0; k <= profile.n_users; k++)
            flat.push_back(profile.sigma_sq(n, k));
    return {{"n_rx", profile.n_rx}, {"n_users", profile.n_users}, {"sigma_sq", std::move(flat)}};
}

VarianceProfile profile_from_json(const nlohmann::json &j) {
    if (!j.contains("n_rx") || !j.contains("n_users") || !j.contains("sigma_sq"))
        throw std::invalid_argument("profile JSON: needs n_rx, n_users, sigma_sq");
    arma::uword n_rx = j.at("n_rx").get<arma::uword>();
    arma::uword n_users = j.at("n_users").get<arma::uword>();
    const auto &flat = j.at("sigma_sq");
    if (!flat.is_array() || flat.size() != std::size_t(n_rx * (n_users + 1)))
        throw std::invalid_argument("profile JSON: sigma_sq must hold n_rx*(n_users+1) entries");
    arma::mat sigma_sq(n_rx, n_users + 1);
    std::size_t pos = 0;
    for (arma::uword n = 0; n < n_rx; n++)
        for (arma::uword k = 0; k <= n_users; k++)
            sigma_sq(n, k) = flat[pos++].get<double>();
    return VarianceProfile(n_rx, n_users, std::move(sigma_sq));
}

nlohmann::json separable_to_json(const SeparableProfile &sep) {
    return {{"d", std::vector<double>(sep.d.begin(), sep.d.end())},
            {"d_tilde", std::vector<double>(sep.d_tilde.begin(), sep.d_tilde.end())}};
}

SeparableProfile separable_from_json(const nlohmann::json &j) {
    return SeparableProfile(vec_from_json(j, "d"), vec_from_json(j, "d_tilde"));
}

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

std::string profile_digest(const VarianceProfile &profile) {
    return fnv1a_hex(profile_to_json(profile).dump());
}

void write_file_atomic(const std::string &path, const std::string &content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("write_file_atomic: cannot open " + tmp);
        out.write(content.data(), std::streamsize(content.size()));
        if (!out)
            throw std::runtime_error("write_file_atomic: short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string samples_csv(const SinrSampleSet &samples, const std::string &config_digest) {
    std::string out = "# seed=" + std::to_string(samples.seed) + " config_digest=" +
                      config_digest + " profile_digest=" + samples.profile_digest +
                      " rho=" + format_double(samples.rho) + " distribution=" +
                      samples.distribution + " n_users=" + std::to_string(samples.n_users) + "\n";
    out += "beta\n";
    for (arma::uword i = 0; i < samples.betas.n_elem; i++) {
        out += format_double(samples.betas(i));
        out += '\n';
    }
    return out;
}

std::string histogram_csv(const Histogram &hist, const std::string &config_digest) {
    std::string out = "# config_digest=" + config_digest + "\n";
    out += "bin_center,count\n";
    for (arma::uword b = 0; b + 1 < hist.edges.n_elem; b++) {
        out += format_double(0.5 * (hist.edges(b) + hist.edges(b + 1)));
        out += ',';
        out += std::to_string(hist.counts(b));
        out += '\n';
    }
    return out;
}

std::string qq_csv(const arma::vec &normalized, const std::string &config_digest) {
    const arma::uword m = normalized.n_elem;
    if (m == 0)
        throw std::invalid_argument("qq_csv: empty sample vector");
    arma::vec sorted = arma::sort(normalized);
    std::string out = "# config_digest=" + config_digest + "\n";
    out += "theoretical,empirical\n";
    for (arma::uword i = 0; i < m; i++) {
        double level = (double(i) + 0.5) / double(m);
        out += format_double(normal_quantile(level));
        out += ',';
        out += format_double(sorted(i));
        out += '\n';
    }
    return out;
}

} // namespace lsa
