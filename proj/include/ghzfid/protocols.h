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

// Local-Pauli fidelity estimation for a noisy GHZ target.
//
// Every measured copy gets one round. With probability 1/3 the round is a
// z-basis round: all nodes measure Z and the round is an error unless the
// joint outcome is t or ~t. Otherwise the nodes draw a uniformly random
// even-parity string k and measure sigma_xy(k) (Y where k_l = 1, X
// elsewhere); the product outcome c is an error when
//
//   c == -(-1)^{|k|/2 + k.t}   for target sign +
//   c == +(-1)^{|k|/2 + k.t}   for target sign -
//
// After M rounds with e errors the estimate is 1 - (3/2) e / M. Each round
// errs with probability (2/3)(1 - f) for a copy of fidelity f, whatever the
// noise, so the estimate is unbiased and its variance is
// sum_n (2 f_n + 1)(1 - f_n) / (2 M^2).

#ifndef GHZFID_PROTOCOLS_H
#define GHZFID_PROTOCOLS_H

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ghzfid/bitstring.h"
#include "ghzfid/rng.h"
#include "ghzfid/state.h"

namespace ghzfid {

struct RoundSettings {
    /// A_n = 1: xy round with string k. A_n = 0: z round (k unused).
    bool xy = false;
    BitString k;
};

/// A_n = 1 with probability 2/3; k uniform over even-parity strings.
/// Requires num_qubits >= 2.
RoundSettings draw_settings(std::size_t num_qubits, Rng &rng);

struct RoundRecord {
    std::size_t copy_index = 0;
    RoundSettings settings;
    /// z round: the L-bit outcome. xy round: the product outcome +1 / -1.
    std::variant<BitString, int> raw_outcome;
    std::uint8_t error_bit = 0;
};

/// Error rule of a z round.
bool z_outcome_is_error(const BitString &outcome, const GhzLabel &target);

/// Error rule of an xy round with string k and product outcome c.
bool xy_outcome_is_error(int c, const BitString &k, const GhzLabel &target);

/// Recomputes a record's error bit from its raw outcome.
bool recompute_error(const RoundRecord &record, const GhzLabel &target);

/// One z round: the outcome is drawn from the diagonal of rho.
RoundRecord z_round(const DensityMatrix &rho, const GhzLabel &target, Rng &rng);

/// One xy round: c = +1 with probability (1 + tr(rho sigma_xy(k))) / 2.
/// Throws std::invalid_argument for odd-parity k.
RoundRecord xy_round(const DensityMatrix &rho, const GhzLabel &target, const BitString &k, Rng &rng);

struct EstimateSummary {
    std::size_t rounds = 0;
    std::size_t errors = 0;
    double qber = 0.0;
    double f_hat = 0.0;
};

/// Summary for e errors in m rounds: qber = e / m, f_hat = 1 - 1.5 qber.
/// f_hat is not clamped; it reaches -1/2 when every round errs.
EstimateSummary summarize(std::size_t rounds, std::size_t errors);

/// Runs one round per copy, in order. Copies that share an address share
/// their precomputed outcome distributions. Throws std::invalid_argument
/// for an empty input. When `log` is given, every round is appended to it.
EstimateSummary run_protocol(std::span<const DensityMatrix *const> copies, const GhzLabel &target, Rng &rng,
                             std::vector<RoundRecord> *log = nullptr);
EstimateSummary run_protocol(std::span<const DensityMatrix> copies, const GhzLabel &target, Rng &rng,
                             std::vector<RoundRecord> *log = nullptr);

/// Probability that one round errs on rho, averaged over the settings
/// draw. Computed from the measurement model.
double round_error_probability(const DensityMatrix &rho, const GhzLabel &target);

/// (2/3)(1 - f).
double per_round_error_probability(double f);

/// Var[R_n] = (2 f + 1)(2 - 2 f) / 9.
double per_round_error_variance(double f);

/// sum_n (2 f_n + 1)(1 - f_n) / (2 M^2) over the M sampled fidelities.
/// Throws std::invalid_argument unless m == fidelities.size() and m > 0.
double theoretical_conditional_variance(std::span<const double> fidelities, std::size_t m);

/// sum_n (2 f_n + 1)(1 - f_n) / (2 M N) over all N fidelities.
/// Throws std::invalid_argument when m > N or m == 0.
double error_lower_bound(std::span<const double> fidelities, std::size_t m);

}  // namespace ghzfid

#endif  // GHZFID_PROTOCOLS_H
