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

// Noisy-copy generators.
//
// A copy is either clean (dark bit 0) or hit by a dark count (dark bit 1).
// The clean copy is the target mixed with orthogonal white noise down to
// the `baseline_fidelity` parameter (1 by default). What a dark count does
// to the copy is selected by NoiseKind:
//
//   perfect            no effect
//   white              replaced by I / 2^L
//   dephased           clean copy fully dephased in the z basis
//   dark-replaced      replaced by the product state |t><t|
//   adversarial-minus  replaced by the opposite-sign GHZ state
//   custom-mixture     replaced by a mix of orthogonal white noise and the
//                      opposite-sign GHZ state (weights `white`, `minus`)
//
// The same kinds define fixed-fidelity ensembles rho = f G + (1 - f) N for
// independence tests.

#ifndef GHZFID_NOISE_H
#define GHZFID_NOISE_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ghzfid/rng.h"
#include "ghzfid/state.h"

namespace ghzfid {

/// Two-state Markov chain of dark counts. Column-stochastic transition
/// matrix
///
///   [ 1 - delta p      delta (1 - p)     ]
///   [ delta p          1 - delta (1 - p) ]
///
/// with stationary law (1 - p, p) and lag-1 correlation 1 - delta.
struct DarkCountModel {
    double p_dark = 0.0;
    double delta = 1.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless p_dark is in [0, 1] and delta is
    /// in (0, min(1/p_dark, 1/(1 - p_dark))].
    void validate() const;

    /// Largest admissible delta for p_dark.
    static double max_delta(double p_dark);

    /// matrix[to][from].
    std::array<std::array<double, 2>, 2> transition_matrix() const;
};

/// Chain of n dark bits started from the stationary law, driven by the
/// model's own seed.
std::vector<std::uint8_t> dark_count_chain(const DarkCountModel &model, std::size_t n);

/// Same chain driven by an external stream; model.seed is ignored.
std::vector<std::uint8_t> dark_count_chain(const DarkCountModel &model, std::size_t n, Rng &rng);

enum class NoiseKind { kPerfect, kWhite, kDephased, kDarkReplaced, kAdversarialMinus, kCustomMixture };

NoiseKind parse_noise_kind(std::string_view name);
std::string_view noise_kind_name(NoiseKind kind);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::kWhite;
    std::map<std::string, double> parameters;

    /// parameters[name] or `fallback` when absent.
    double get(const std::string &name, double fallback) const;
    double baseline_fidelity() const { return get("baseline_fidelity", 1.0); }
};

/// f G + (1 - f) (I - G) / (2^L - 1).
DensityMatrix white_mixture(const GhzLabel &target, double f);

/// The clean copy (dark bit 0).
DensityMatrix baseline_state(const GhzLabel &target, const NoiseSpec &spec);

/// The copy after a dark count (dark bit 1).
DensityMatrix degraded_state(const GhzLabel &target, const NoiseSpec &spec);

DensityMatrix copy_state(std::uint8_t dark_bit, const GhzLabel &target, const NoiseSpec &spec);

/// Fidelity of copy_state(dark_bit, ...) from its closed form, without
/// building the state.
double copy_fidelity(std::uint8_t dark_bit, std::size_t num_qubits, const NoiseSpec &spec);

/// Smallest fidelity reachable by iid_state for this kind.
double min_feasible_fidelity(const NoiseSpec &spec);

/// One copy with fidelity exactly f and noise component of the given kind.
/// custom-mixture with parameter randomize=1 draws the white/minus split
/// from `rng`. Throws std::invalid_argument when f is infeasible.
DensityMatrix iid_state(double f, const GhzLabel &target, const NoiseSpec &spec, Rng *rng = nullptr);

/// n copies of fidelity f. Copy i draws from stream (seed, i), so the
/// ensemble does not depend on generation order.
std::vector<DensityMatrix> iid_ensemble(std::size_t n, double f, const GhzLabel &target, const NoiseSpec &spec,
                                        std::uint64_t seed);

/// N = (rho - f G) / (1 - f) for f = fidelity(rho, target) < 1.
Matrix noise_component(const DensityMatrix &rho, const GhzLabel &target);

}  // namespace ghzfid

#endif  // GHZFID_NOISE_H
