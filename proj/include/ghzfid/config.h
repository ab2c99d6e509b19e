// Copyright 2026 The ghzfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Flat `key = value` experiment configuration. Blank lines and text after
// '#' are ignored. Recognized keys:
//
//   L, N, M, trials, seed, threads       integers
//   target                              label such as +000
//   protocols (alias protocol)          comma list of proposed, guhne, dfe
//   process                             iid or dark_count
//   f, p_dark, delta                    reals
//   noise                               noise kind name
//   noise.<name>                        real noise parameter, e.g.
//                                       noise.baseline_fidelity = 0.9

#ifndef GHZFID_CONFIG_H
#define GHZFID_CONFIG_H

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghzfid/experiment.h"

namespace ghzfid {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Splits `key = value` lines. Throws std::invalid_argument with the line
/// number for a line without '=' or with an empty key.
KeyValues parse_key_values(std::istream &in);

/// Strict numeric parsing; throws std::invalid_argument on trailing text.
double parse_real(std::string_view text);
std::uint64_t parse_unsigned(std::string_view text);

/// Comma-separated reals, e.g. "0.1,0.2,0.3".
std::vector<double> parse_real_list(std::string_view text);

/// Sets one field. Throws std::invalid_argument for an unknown key or a
/// malformed value.
void apply_setting(ExperimentConfig &config, std::string_view key, std::string_view value);

/// Defaults overridden by every pair, in order. Not validated.
ExperimentConfig config_from_pairs(const KeyValues &pairs);
ExperimentConfig config_from_text(std::string_view text);

/// Reads a config file. Throws std::runtime_error when it cannot be opened.
ExperimentConfig load_config(const std::string &path);

/// Text that config_from_text parses back to an equal configuration.
std::string config_to_text(const ExperimentConfig &config);

}  // namespace ghzfid

#endif  // GHZFID_CONFIG_H
