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

// Probabilistic multirotation twirl. Each mask k (popcount 0 or 2) defines
// the rotation U_k = (x) sigma_xy(k_l); the channel T_k leaves the state
// alone or applies U_k with probability 1/2 each. Composing T_k over every
// mask removes all off-diagonal terms in the GHZ basis while keeping the
// diagonal, hence every GHZ fidelity.
//
// The channel is applied as the exact average (rho + U rho U^dagger) / 2,
// not by sampling Kraus branches.

#ifndef GHZFID_TWIRL_H
#define GHZFID_TWIRL_H

#include <span>
#include <vector>

#include "ghzfid/bitstring.h"
#include "ghzfid/state.h"

namespace ghzfid {

class RotationMask {
   public:
    /// Throws std::invalid_argument unless popcount(k) is 0 or 2.
    explicit RotationMask(BitString k);

    /// The 1 + L(L-1)/2 masks of length L in lexicographic order.
    static std::vector<RotationMask> all(std::size_t num_qubits);

    const BitString &bits() const { return k_; }
    std::size_t num_qubits() const { return k_.size(); }

   private:
    BitString k_;
};

/// (x)_l sigma_xy(k_l): Y where the mask is set, X elsewhere.
Matrix multirotation_unitary(const RotationMask &mask);

/// (rho + U rho U^dagger) / 2 for U = multirotation_unitary(mask).
DensityMatrix twirl_step(const DensityMatrix &rho, const RotationMask &mask);

/// Applies every mask in `order`, one copy group of mask.num_qubits()
/// qubits at a time. The state dimension must be a power of 2^L.
DensityMatrix twirl_in_order(const DensityMatrix &rho, std::span<const RotationMask> order);

/// twirl_in_order with the lexicographic mask set of length
/// `qubits_per_copy`. For a single copy qubits_per_copy equals the state's
/// qubit count; joint states of several copies are twirled group by group.
DensityMatrix full_twirl(const DensityMatrix &rho, std::size_t qubits_per_copy);
inline DensityMatrix full_twirl(const DensityMatrix &rho) { return full_twirl(rho, rho.num_qubits()); }

}  // namespace ghzfid

#endif  // GHZFID_TWIRL_H
