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

// Monte Carlo harness. A trial draws an N-copy ensemble (i.i.d. or driven
// by the dark-count chain), samples M copies uniformly at random, spends
// one round on each sampled copy and compares the estimate with the mean
// fidelity of the N - M copies that were not measured.
//
// Randomness of trial i is drawn from streams keyed by (seed, i): one for
// the ensemble, one for the subset and one per protocol for the rounds.
// All protocols in a trial therefore see the same ensemble and subset.

#ifndef GHZFID_EXPERIMENT_H
#define GHZFID_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghzfid/estimators.h"
#include "ghzfid/noise.h"
#include "ghzfid/rng.h"
#include "ghzfid/state.h"

namespace ghzfid {

enum class ProcessKind { kIid, kDarkCount };

ProcessKind parse_process(std::string_view name);
std::string_view process_name(ProcessKind kind);

struct ExperimentConfig {
    std::size_t num_qubits = 3;
    std::size_t total_copies = 2000;
    std::size_t sampled_copies = 1000;
    /// Defaults to "+0...0" when unset.
    std::optional<GhzLabel> target;
    std::vector<ProtocolKind> protocols = {ProtocolKind::kProposed, ProtocolKind::kGuhne, ProtocolKind::kDfe};
    ProcessKind process = ProcessKind::kDarkCount;
    NoiseSpec noise;
    /// Per-copy fidelity of the i.i.d. process.
    double fidelity = 0.8;
    /// Dark-count chain parameters.
    double p_dark = 0.1;
    double delta = 1.0;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    std::size_t threads = 0;

    GhzLabel resolved_target() const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Uniformly random m-subset of {0, ..., n-1}, sorted ascending. Throws
/// std::invalid_argument when m > n.
std::vector<std::size_t> sample_subset(std::size_t n, std::size_t m, Rng &rng);

/// The N copies of one trial: a pool of distinct states and, per copy, an
/// index into the pool.
struct Ensemble {
    std::vector<DensityMatrix> pool;
    std::vector<double> pool_fidelity;
    std::vector<std::size_t> copy_state;

    std::size_t size() const { return copy_state.size(); }
    const DensityMatrix &state(std::size_t copy) const { return pool[copy_state[copy]]; }
    double fidelity(std::size_t copy) const { return pool_fidelity[copy_state[copy]]; }
};

/// Ensemble of trial `trial_index`.
Ensemble build_ensemble(const ExperimentConfig &config, std::uint64_t trial_index);

struct TrialResult {
    ProtocolKind protocol = ProtocolKind::kProposed;
    std::size_t rounds = 0;
    double f_hat = 0.0;
    double fbar_sampled = 0.0;
    double fbar_unsampled = 0.0;
    /// (f_hat - fbar_unsampled)^2.
    double squared_error = 0.0;
    /// (f_hat - fbar_sampled)^2.
    double measurement_error_term = 0.0;
    /// (fbar_sampled - fbar_unsampled)^2.
    double sampling_error_term = 0.0;
    /// 2 (f_hat - fbar_sampled)(fbar_sampled - fbar_unsampled).
    double cross_term = 0.0;
    /// Exact conditional variance of f_hat given the sampled states.
    double analytic_variance = 0.0;
    /// sum over all N copies of (2 f + 1)(1 - f) / (2 M N).
    double lower_bound = 0.0;
};

/// One trial of config.protocols.front().
TrialResult run_trial(const ExperimentConfig &config, std::uint64_t trial_index);

/// One trial per protocol in config.protocols, all on the same ensemble
/// and subset.
std::vector<TrialResult> run_trial_all(const ExperimentConfig &config, std::uint64_t trial_index);

/// config.trials trials, run in parallel. Element [p][i] is trial i of
/// config.protocols[p].
std::vector<std::vector<TrialResult>> run_trials(const ExperimentConfig &config);

struct SweepRow {
    std::string parameter;
    double value = 0.0;
    ProtocolKind protocol = ProtocolKind::kProposed;
    std::size_t num_qubits = 0;
    std::size_t total_copies = 0;
    std::size_t sampled_copies = 0;
    double p_dark = 0.0;
    double delta = 0.0;
    double correlation = 0.0;
    std::size_t trials = 0;
    double mse = 0.0;
    double mse_stderr = 0.0;
    double bias = 0.0;
    double bias_stderr = 0.0;
    double analytic_variance = 0.0;
    double lower_bound = 0.0;
    /// Means of the error decomposition terms.
    double measurement_error = 0.0;
    double sampling_error = 0.0;
    double cross_term = 0.0;
    double cross_term_stderr = 0.0;
};

/// Aggregates the trials of one protocol into a row.
SweepRow summarize_trials(const ExperimentConfig &config, ProtocolKind protocol, std::span<const TrialResult> trials);

/// Applies parameter = value to a copy of config. parameter is one of
/// p_dark, delta, f, M.
ExperimentConfig with_parameter(const ExperimentConfig &config, std::string_view parameter, double value);

/// One row per value per protocol, ordered by value then by protocol as
/// listed in config.protocols. Throws std::invalid_argument for an unknown
/// parameter.
std::vector<SweepRow> run_sweep(const ExperimentConfig &config, std::string_view parameter,
                                std::span<const double> values);

inline constexpr std::string_view kCsvHeader =
    "protocol,L,N,M,p_dark,delta,correlation,trials,mse,mse_stderr,bias,bias_stderr,analytic_variance,lower_bound";

/// Shortest text that parses back to exactly x.
std::string format_double(double x);

std::string csv_text(std::span<const SweepRow> rows);
std::string svg_text(std::span<const SweepRow> rows);

/// Write the CSV / SVG text to path. Throws std::runtime_error when the
/// file cannot be written.
void emit_csv(std::span<const SweepRow> rows, const std::string &path);
void emit_svg(std::span<const SweepRow> rows, const std::string &path);

}  // namespace ghzfid

#endif  // GHZFID_EXPERIMENT_H
