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

#ifndef LSA_CONFIG_HPP
#define LSA_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <armadillo>
#include <json.hpp>

namespace lsa {

/// Config file is invalid; message names the offending field.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class ChannelModel { Iid, MimoKronecker, MccdmaUplink, MccdmaDownlink };

enum class SweepKind { None, Users, Snr };

std::string to_string(ChannelModel model);
ChannelModel channel_model_from_string(const std::string &name);

/// Flat, human-editable experiment description (JSON on disk). `n_rx` may be
/// the string "2K" to tie the receive dimension to the user count.
struct ExperimentConfig {
    ChannelModel model = ChannelModel::Iid;
    arma::uword n_users = 0;            // K (interferers)
    std::optional<arma::uword> n_rx;    // absent => "2K" rule
    double snr_db = 10.0;
    std::string distribution = "gaussian"; // or "qpsk"
    arma::uword n_trials = 10000;
    std::uint64_t seed = 1;

    // model parameters
    arma::uword n_taps = 5;       // MC-CDMA channel length L
    double base_power = 1.0;      // P; user 0 always transmits at P
    double corr_a = 0.1;          // MIMO exponential-correlation coefficient
    std::vector<double> powers;   // optional explicit powers (overrides classes)

    SweepKind sweep = SweepKind::None;
    std::vector<arma::uword> sweep_users; // used when sweep == Users
    std::vector<double> sweep_snr_db;     // used when sweep == Snr

    /// N, honoring the "2K" rule when n_rx is absent.
    arma::uword resolved_n_rx(arma::uword n_users_override) const;
    arma::uword resolved_n_rx() const { return resolved_n_rx(n_users); }

    /// Noise variance from the SNR convention rho = P * 10^(-snr_db/10).
    double rho() const;
    double rho(double snr_db_override) const;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Lossless (bit-exact doubles) JSON round-trip.
nlohmann::json config_to_json(const ExperimentConfig &config);
ExperimentConfig config_from_json(const nlohmann::json &j);

ExperimentConfig load_config(const std::string &path);

/// Digest of the canonical JSON form; embedded in every output file.
std::string config_digest(const ExperimentConfig &config);

} // namespace lsa

#endif
