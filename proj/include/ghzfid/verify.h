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

// Sampling-free oracles. Each check rebuilds the objects it needs from
// dense matrices (explicit Kronecker products, explicit GHZ vectors,
// explicit outcome enumeration) and compares against the optimized code
// paths of the library.

#ifndef GHZFID_VERIFY_H
#define GHZFID_VERIFY_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghzfid/state.h"

namespace ghzfid {

struct OracleReport {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double elapsed_seconds = 0.0;
};

/// "PASS name deviation=... tolerance=... time=...s".
std::string format_report(const OracleReport &report);

/// Even-subset count 2^(L-1) and the even/odd superset counts 2^(L-|T|-1)
/// for every L <= l_max (at most 20). Exact integer comparison.
OracleReport check_subset_counts(std::size_t l_max);

/// Pauli expansion of every GHZ projector against its explicit vector
/// construction; tolerance 1e-12. Requires 2 <= L <= 5.
OracleReport check_bloch(std::size_t num_qubits);

/// The weighted xy observable for label j evaluates to +-1 on G^+-_j and
/// to 0 on every other label; tolerance 1e-12. Requires 2 <= L <= 5.
OracleReport check_weighted_observable(std::size_t num_qubits);

/// Twirls `num_states` random states on copies * L qubits. Checks the
/// library result against a naive twirl, that it is diagonal in the
/// (product) GHZ basis and that the GHZ-basis diagonal is unchanged;
/// tolerance 1e-10. Requires copies * L <= 4 for copies > 1.
OracleReport check_twirl(std::size_t num_qubits, std::size_t copies, std::size_t num_states = 20,
                         std::uint64_t seed = 7);

/// Exact expectation of one round's estimate and error bit on rho by
/// enumerating every setting and every Born-rule outcome. Checks
/// E[f_hat] = tr(rho G), Pr[r = 1] = (2/3)(1 - f) and agreement with the
/// library's round_error_probability; tolerance 1e-12. Requires L <= 4.
OracleReport check_exact_unbiasedness(std::size_t num_qubits, const DensityMatrix &state, const GhzLabel &target);

/// check_exact_unbiasedness on `num_states` random states and targets.
OracleReport check_random_unbiasedness(std::size_t num_qubits, std::size_t num_states, std::uint64_t seed = 11);

/// Per-round Bernoulli variance from the enumeration oracle against
/// (2f + 1)(2 - 2f) / 9 for each f; tolerance 1e-12. Requires L <= 4.
OracleReport check_variance_formula(std::size_t num_qubits, std::span<const double> fidelities);

/// Averages the conditional variance over all M-subsets of N random
/// fidelities and compares with the lower-bound formula, and the
/// per-subset variance with theoretical_conditional_variance;
/// tolerance 1e-12. Requires N <= 16.
OracleReport check_lower_bound(std::size_t n, std::size_t m, std::uint64_t seed = 13);

/// Exact round means of the two baseline estimators equal the fidelity on
/// random states, and their variances match enumeration; tolerance 1e-12.
OracleReport check_baselines(std::size_t num_qubits, std::size_t num_states = 10, std::uint64_t seed = 17);

/// Random density matrix on num_qubits qubits (Ginibre ensemble).
DensityMatrix random_density_matrix(std::size_t num_qubits, std::uint64_t seed, std::uint64_t index);

/// The default suite; completes in well under a minute.
std::vector<OracleReport> run_all();

}  // namespace ghzfid

#endif  // GHZFID_VERIFY_H
