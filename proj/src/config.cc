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

#include "ghzfid/config.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ghzfid {

namespace {

std::string_view trim(std::string_view s) {
    const char *ws = " \t\r\n";
    std::size_t b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    std::size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::size_t parse_count(std::string_view text) { return static_cast<std::size_t>(parse_unsigned(text)); }

constexpr std::string_view kNoisePrefix = "noise.";

}  // namespace

KeyValues parse_key_values(std::istream &in) {
    KeyValues out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view = line;
        std::size_t hash = view.find('#');
        if (hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        std::size_t eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected 'key = value'");
        }
        std::string_view key = trim(view.substr(0, eq));
        std::string_view value = trim(view.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
        }
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

double parse_real(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(std::string_view text) {
    text = trim(text);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (std::string_view item : split_commas(text)) {
        out.push_back(parse_real(item));
    }
    return out;
}

void apply_setting(ExperimentConfig &config, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "L") {
        config.num_qubits = parse_count(value);
    } else if (key == "N") {
        config.total_copies = parse_count(value);
    } else if (key == "M") {
        config.sampled_copies = parse_count(value);
    } else if (key == "trials") {
        config.trials = parse_count(value);
    } else if (key == "seed") {
        config.seed = parse_unsigned(value);
    } else if (key == "threads") {
        config.threads = parse_count(value);
    } else if (key == "target") {
        config.target = GhzLabel::from_str(value);
    } else if (key == "protocols" || key == "protocol") {
        std::vector<ProtocolKind> kinds;
        for (std::string_view name : split_commas(value)) {
            kinds.push_back(parse_protocol(name));
        }
        config.protocols = kinds;
    } else if (key == "process") {
        config.process = parse_process(value);
    } else if (key == "f") {
        config.fidelity = parse_real(value);
    } else if (key == "p_dark") {
        config.p_dark = parse_real(value);
    } else if (key == "delta") {
        config.delta = parse_real(value);
    } else if (key == "noise") {
        config.noise.kind = parse_noise_kind(value);
    } else if (key.starts_with(kNoisePrefix) && key.size() > kNoisePrefix.size()) {
        config.noise.parameters[std::string(key.substr(kNoisePrefix.size()))] = parse_real(value);
    } else {
        throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
    }
}

ExperimentConfig config_from_pairs(const KeyValues &pairs) {
    ExperimentConfig config;
    for (const auto &[key, value] : pairs) {
        apply_setting(config, key, value);
    }
    return config;
}

ExperimentConfig config_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return config_from_pairs(parse_key_values(in));
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    return config_from_pairs(parse_key_values(in));
}

std::string config_to_text(const ExperimentConfig &config) {
    std::ostringstream out;
    out << "L = " << config.num_qubits << '\n';
    out << "N = " << config.total_copies << '\n';
    out << "M = " << config.sampled_copies << '\n';
    if (config.target.has_value()) {
        out << "target = " << config.target->str() << '\n';
    }
    out << "protocols = ";
    for (std::size_t i = 0; i < config.protocols.size(); ++i) {
        out << (i > 0 ? "," : "") << protocol_name(config.protocols[i]);
    }
    out << '\n';
    out << "process = " << process_name(config.process) << '\n';
    out << "f = " << format_double(config.fidelity) << '\n';
    out << "p_dark = " << format_double(config.p_dark) << '\n';
    out << "delta = " << format_double(config.delta) << '\n';
    out << "noise = " << noise_kind_name(config.noise.kind) << '\n';
    for (const auto &[name, value] : config.noise.parameters) {
        out << kNoisePrefix << name << " = " << format_double(value) << '\n';
    }
    out << "trials = " << config.trials << '\n';
    out << "seed = " << config.seed << '\n';
    out << "threads = " << config.threads << '\n';
    return out.str();
}

}  // namespace ghzfid
