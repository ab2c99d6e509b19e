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

// Command line front end:
//
//   ghzfid verify
//   ghzfid trial --config FILE --seed U64 [--index I] [--set key=value ...]
//   ghzfid sweep --config FILE --param NAME --values V1,V2,... --trials N
//                --out CSV [--svg SVG] --seed U64 [--set key=value ...]

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghzfid/config.h"
#include "ghzfid/experiment.h"
#include "ghzfid/verify.h"

namespace {

using namespace ghzfid;

// File values first, then --set pairs, then the dedicated flags.
ExperimentConfig resolve_config(const std::string &path, const std::vector<std::string> &overrides,
                                std::optional<std::uint64_t> seed, std::optional<std::size_t> trials,
                                std::optional<std::size_t> threads) {
    ExperimentConfig config = load_config(path);
    for (const std::string &item : overrides) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got '" + item + "'");
        }
        apply_setting(config, item.substr(0, eq), item.substr(eq + 1));
    }
    if (seed) {
        config.seed = *seed;
    }
    if (trials) {
        config.trials = *trials;
    }
    if (threads) {
        config.threads = *threads;
    }
    config.validate();
    return config;
}

int run_verify() {
    bool ok = true;
    for (const OracleReport &report : run_all()) {
        std::cout << format_report(report) << '\n';
        ok = ok && report.pass;
    }
    std::cout << (ok ? "all oracle checks passed" : "oracle checks FAILED") << '\n';
    return ok ? 0 : 1;
}

int run_trial_command(const ExperimentConfig &config, std::uint64_t index) {
    std::cout << "protocol,trial,rounds,f_hat,fbar_sampled,fbar_unsampled,squared_error,measurement_error_term,"
                 "sampling_error_term,cross_term,analytic_variance,lower_bound\n";
    for (const TrialResult &r : run_trial_all(config, index)) {
        std::cout << protocol_name(r.protocol) << ',' << index << ',' << r.rounds << ',' << format_double(r.f_hat)
                  << ',' << format_double(r.fbar_sampled) << ',' << format_double(r.fbar_unsampled) << ','
                  << format_double(r.squared_error) << ',' << format_double(r.measurement_error_term) << ','
                  << format_double(r.sampling_error_term) << ',' << format_double(r.cross_term) << ','
                  << format_double(r.analytic_variance) << ',' << format_double(r.lower_bound) << '\n';
    }
    return 0;
}

int run_sweep_command(const ExperimentConfig &config, const std::string &param, const std::string &values,
                      const std::string &out, const std::string &svg) {
    std::vector<double> grid = parse_real_list(values);
    std::vector<SweepRow> rows = run_sweep(config, param, grid);
    emit_csv(rows, out);
    if (!svg.empty()) {
        emit_svg(rows, svg);
    }
    std::cerr << "wrote " << rows.size() << " rows to " << out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fidelity estimation of noisy GHZ states: oracles, trials and sweeps"};
    app.require_subcommand(1);

    app.add_subcommand("verify", "Run the exact oracle suite; exit code 1 on any failure");

    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;

    CLI::App *trial = app.add_subcommand("trial", "Run one trial of every configured protocol");
    std::uint64_t index = 0;
    trial->add_option("--config", config_path, "Config file of key = value lines")->required()->check(CLI::ExistingFile);
    trial->add_option("--seed", seed, "Master seed (overrides the file)")->required();
    trial->add_option("--index", index, "Trial index");
    trial->add_option("--set", overrides, "Extra key=value overrides");
    trial->add_option("--threads", threads, "Worker threads");

    CLI::App *sweep = app.add_subcommand("sweep", "Sweep one parameter and write CSV (and optionally SVG)");
    std::string param, values, out, svg;
    std::optional<std::size_t> trials;
    sweep->add_option("--config", config_path, "Config file of key = value lines")->required()->check(CLI::ExistingFile);
    sweep->add_option("--param", param, "p_dark, delta, f or M")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--trials", trials, "Trials per grid point")->required();
    sweep->add_option("--out", out, "CSV output path")->required();
    sweep->add_option("--svg", svg, "SVG output path");
    sweep->add_option("--seed", seed, "Master seed (overrides the file)")->required();
    sweep->add_option("--set", overrides, "Extra key=value overrides");
    sweep->add_option("--threads", threads, "Worker threads (does not change results)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("verify")) {
            return run_verify();
        }
        if (app.got_subcommand(trial)) {
            return run_trial_command(resolve_config(config_path, overrides, seed, std::nullopt, threads), index);
        }
        return run_sweep_command(resolve_config(config_path, overrides, seed, trials, threads), param, values, out,
                                 svg);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
