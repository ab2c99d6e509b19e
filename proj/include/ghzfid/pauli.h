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

#ifndef GHZFID_PAULI_H
#define GHZFID_PAULI_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghzfid/bitstring.h"
#include "ghzfid/state.h"

namespace ghzfid {

enum class Pauli : std::uint8_t { kI, kX, kY, kZ };

/// 2x2 matrix of a single-qubit Pauli.
Matrix pauli_matrix(Pauli p);

/// A real multiple of a tensor product of single-qubit Paulis. Letter 0
/// acts on the most significant qubit.
class PauliString {
   public:
    PauliString(std::vector<Pauli> letters, double coefficient = 1.0);

    /// Parses "XYZI"-style text; '_' is accepted for identity.
    static PauliString from_str(std::string_view text, double coefficient = 1.0);

    /// Z where k_l = 1, I where k_l = 0.
    static PauliString sigma_iz(const BitString &k);
    /// Y where k_l = 1, X where k_l = 0.
    static PauliString sigma_xy(const BitString &k);

    std::size_t size() const { return letters_.size(); }
    const std::vector<Pauli> &letters() const { return letters_; }
    double coefficient() const { return coefficient_; }

    /// Basis-index masks: bit set where the letter flips (X, Y) or carries
    /// a Z phase (Y, Z).
    std::uint32_t x_mask() const;
    std::uint32_t z_mask() const;

    Matrix to_matrix() const;
    std::string str() const;

    bool same_letters(const PauliString &other) const { return letters_ == other.letters_; }

   private:
    std::vector<Pauli> letters_;
    double coefficient_;
};

/// Product of two commuting strings; coefficients multiply and the phase
/// of the letter products is folded into the (real) coefficient. Throws
/// std::invalid_argument if the strings anticommute or differ in length.
PauliString operator*(const PauliString &a, const PauliString &b);

/// coefficient * tr(rho P). Runs in O(2^L) using the permutation structure
/// of Pauli strings.
double pauli_expectation(const DensityMatrix &rho, const PauliString &p);

struct BlochTerm {
    double coefficient;
    PauliString pauli;
};

/// Weighted Pauli expansion of a GHZ projector. For every even-parity k
/// there are two terms: (-1)^{k.t} / 2^L * sigma_iz(k) and
/// +-(-1)^{|k|/2 + k.t} / 2^L * sigma_xy(k).
std::vector<BlochTerm> bloch_terms(const GhzLabel &label);

/// Dense sum of coefficient * matrix over all terms.
Matrix sum_terms(std::span<const BlochTerm> terms);

}  // namespace ghzfid

#endif  // GHZFID_PAULI_H
