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

#ifndef LSA_IO_HPP
#define LSA_IO_HPP

#include <cstdint>
#include <string>

#include <armadillo>
#include <json.hpp>

#include "lsa/montecarlo.hpp"
#include "lsa/profiles.hpp"

namespace lsa {

// --- JSON round-trips (bit-exact for finite doubles) ---------------------

nlohmann::json profile_to_json(const VarianceProfile &profile);   // row-major sigma_sq
VarianceProfile profile_from_json(const nlohmann::json &j);

nlohmann::json separable_to_json(const SeparableProfile &sep);
SeparableProfile separable_from_json(const nlohmann::json &j);

// --- Digests --------------------------------------------------------------

/// FNV-1a (64-bit) of the byte string, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string &bytes);

/// Digest of a profile via its canonical JSON serialization.
std::string profile_digest(const VarianceProfile &profile);

// --- File output -----------------------------------------------------------

/// Write `content` to `path` atomically (temp file + rename).
void write_file_atomic(const std::string &path, const std::string &content);

/// CSV with '#'-comment header (seed, digests, rho), then a "beta" column,
/// one sample per line at full double precision (%.17g).
std::string samples_csv(const SinrSampleSet &samples, const std::string &config_digest);

/// Two-column histogram CSV: bin_center,count.
std::string histogram_csv(const Histogram &hist, const std::string &config_digest);

/// Two-column Q-Q CSV: theoretical,empirical quantiles of the standardized
/// samples at levels (i - 0.5)/M.
std::string qq_csv(const arma::vec &normalized, const std::string &config_digest);

} // namespace lsa

#endif
