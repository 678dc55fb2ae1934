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

#include "lsa/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "lsa/io.hpp"

namespace lsa {

std::string to_string(ChannelModel model) {
    switch (model) {
    case ChannelModel::Iid:
        return "iid";
    case ChannelModel::MimoKronecker:
        return "mimo_kronecker";
    case ChannelModel::MccdmaUplink:
        return "mccdma_uplink";
    case ChannelModel::MccdmaDownlink:
        return "mccdma_downlink";
    }
    throw std::logic_error("to_string: unknown channel model");
}

ChannelModel channel_model_from_string(const std::string &name) {
    if (name == "iid")
        return ChannelModel::Iid;
    if (name == "mimo_kronecker")
        return ChannelModel::MimoKronecker;
    if (name == "mccdma_uplink")
        return ChannelModel::MccdmaUplink;
    if (name == "mccdma_downlink")
        return ChannelModel::MccdmaDownlink;
    throw ConfigError("config field 'model': unknown value '" + name + "'");
}

namespace {

std::string sweep_to_string(SweepKind kind) {
    switch (kind) {
    case SweepKind::None:
        return "none";
    case SweepKind::Users:
        return "users";
    case SweepKind::Snr:
        return "snr";
    }
    throw std::logic_error("sweep_to_string: unknown sweep kind");
}

SweepKind sweep_from_string(const std::string &name) {
    if (name == "none")
        return SweepKind::None;
    if (name == "users")
        return SweepKind::Users;
    if (name == "snr")
        return SweepKind::Snr;
    throw ConfigError("config field 'sweep': unknown value '" + name + "'");
}

} // namespace

arma::uword ExperimentConfig::resolved_n_rx(arma::uword n_users_override) const {
    return n_rx ? *n_rx : 2 * n_users_override;
}

double ExperimentConfig::rho() const {
    return rho(snr_db);
}

double ExperimentConfig::rho(double snr_db_override) const {
    return base_power * std::pow(10.0, -snr_db_override / 10.0);
}

void ExperimentConfig::validate() const {
    if (n_users == 0)
        throw ConfigError("config field 'n_users': must be positive");
    if (resolved_n_rx() == 0)
        throw ConfigError("config field 'n_rx': must be positive");
    if (!std::isfinite(snr_db))
        throw ConfigError("config field 'snr_db': must be finite");
    if (distribution != "gaussian" && distribution != "qpsk")
        throw ConfigError("config field 'distribution': must be 'gaussian' or 'qpsk'");
    if (n_trials == 0)
        throw ConfigError("config field 'n_trials': must be positive");
    if (!(base_power > 0.0) || !std::isfinite(base_power))
        throw ConfigError("config field 'base_power': must be positive and finite");
    if (model == ChannelModel::MccdmaUplink || model == ChannelModel::MccdmaDownlink) {
        if (n_taps == 0)
            throw ConfigError("config field 'n_taps': must be positive");
        if (n_taps > resolved_n_rx())
            throw ConfigError("config field 'n_taps': must not exceed n_rx");
    }
    if (model == ChannelModel::MimoKronecker && (!(corr_a >= 0.0) || !(corr_a < 1.0)))
        throw ConfigError("config field 'corr_a': must lie in [0, 1)");
    if (!powers.empty()) {
        if (powers.size() != n_users + 1)
            throw ConfigError("config field 'powers': needs n_users + 1 entries "
                              "(user of interest first)");
        for (double p : powers)
            if (!(p > 0.0) || !std::isfinite(p))
                throw ConfigError("config field 'powers': entries must be positive and finite");
        if (sweep == SweepKind::Users)
            throw ConfigError("config field 'powers': incompatible with a users sweep");
    }
    if (sweep == SweepKind::Users) {
        if (sweep_users.empty())
            throw ConfigError("config field 'sweep_users': must be nonempty for a users sweep");
        for (arma::uword k : sweep_users)
            if (k == 0)
                throw ConfigError("config field 'sweep_users': entries must be positive");
        if (n_rx)
            throw ConfigError("config field 'n_rx': a users sweep requires the \"2K\" rule");
    }
    if (sweep == SweepKind::Snr) {
        if (sweep_snr_db.empty())
            throw ConfigError("config field 'sweep_snr_db': must be nonempty for an SNR sweep");
        for (double s : sweep_snr_db)
            if (!std::isfinite(s))
                throw ConfigError("config field 'sweep_snr_db': entries must be finite");
    }
}

nlohmann::json config_to_json(const ExperimentConfig &config) {
    nlohmann::json j;
    j["model"] = to_string(config.model);
    j["n_users"] = config.n_users;
    if (config.n_rx)
        j["n_rx"] = *config.n_rx;
    else
        j["n_rx"] = "2K";
    j["snr_db"] = config.snr_db;
    j["distribution"] = config.distribution;
    j["n_trials"] = config.n_trials;
    j["seed"] = config.seed;
    j["n_taps"] = config.n_taps;
    j["base_power"] = config.base_power;
    j["corr_a"] = config.corr_a;
    j["powers"] = config.powers;
    j["sweep"] = sweep_to_string(config.sweep);
    j["sweep_users"] = std::vector<std::uint64_t>(config.sweep_users.begin(),
                                                  config.sweep_users.end());
    j["sweep_snr_db"] = config.sweep_snr_db;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json &j) {
    static const std::set<std::string> known = {
        "model",  "n_users",    "n_rx",   "snr_db", "distribution", "n_trials",    "seed",
        "n_taps", "base_power", "corr_a", "powers", "sweep",        "sweep_users", "sweep_snr_db"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("config field '" + it.key() + "': not recognized");

    auto require = [&](const char *field) -> const nlohmann::json & {
        if (!j.contains(field))
            throw ConfigError(std::string("config field '") + field + "': missing");
        return j.at(field);
    };

    ExperimentConfig config;
    try {
        config.model = channel_model_from_string(require("model").get<std::string>());
        config.n_users = require("n_users").get<arma::uword>();
        const auto &n_rx = require("n_rx");
        if (n_rx.is_string()) {
            if (n_rx.get<std::string>() != "2K")
                throw ConfigError("config field 'n_rx': must be an integer or \"2K\"");
        } else {
            config.n_rx = n_rx.get<arma::uword>();
        }
        if (j.contains("snr_db"))
            config.snr_db = j.at("snr_db").get<double>();
        if (j.contains("distribution"))
            config.distribution = j.at("distribution").get<std::string>();
        if (j.contains("n_trials"))
            config.n_trials = j.at("n_trials").get<arma::uword>();
        if (j.contains("seed"))
            config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("n_taps"))
            config.n_taps = j.at("n_taps").get<arma::uword>();
        if (j.contains("base_power"))
            config.base_power = j.at("base_power").get<double>();
        if (j.contains("corr_a"))
            config.corr_a = j.at("corr_a").get<double>();
        if (j.contains("powers"))
            config.powers = j.at("powers").get<std::vector<double>>();
        if (j.contains("sweep"))
            config.sweep = sweep_from_string(j.at("sweep").get<std::string>());
        if (j.contains("sweep_users")) {
            auto users = j.at("sweep_users").get<std::vector<std::uint64_t>>();
            config.sweep_users.assign(users.begin(), users.end());
        }
        if (j.contains("sweep_snr_db"))
            config.sweep_snr_db = j.at("sweep_snr_db").get<std::vector<double>>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: type error: ") + e.what());
    }
    return config;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    ExperimentConfig config = config_from_json(j);
    config.validate();
    return config;
}

std::string config_digest(const ExperimentConfig &config) {
    return fnv1a_hex(config_to_json(config).dump());
}

} // namespace lsa
