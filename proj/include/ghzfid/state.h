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

#ifndef GHZFID_STATE_H
#define GHZFID_STATE_H

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghzfid/bitstring.h"

namespace ghzfid {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tolerance {
/// Max elementwise |rho - rho^dagger| accepted for a density matrix.
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
inline constexpr double kMinEigenvalue = -1e-10;
/// Largest imaginary residue discarded from a real-valued trace.
inline constexpr double kImaginary = 1e-12;
}  // namespace tolerance

/// Kronecker product; `a` acts on the more significant qubits.
Matrix kron(const Matrix &a, const Matrix &b);

/// Largest absolute entry.
double max_abs(const Matrix &m);

/// Real part of tr(a * b), after checking the imaginary residue is below
/// tolerance::kImaginary. Throws std::domain_error otherwise.
double real_trace_product(const Matrix &a, const Matrix &b);

/// Number of qubits n with 2^n == dim; throws if dim is not a power of two.
std::size_t qubits_for_dimension(std::size_t dim);

/// A validated density matrix: Hermitian, unit trace and positive
/// semidefinite within the tolerances above. Immutable once built.
class DensityMatrix {
   public:
    /// Validates and wraps `m`. Throws std::invalid_argument on any
    /// violated invariant.
    static DensityMatrix from_matrix(Matrix m);

    /// I / 2^n.
    static DensityMatrix maximally_mixed(std::size_t num_qubits);

    /// |b><b| for a computational basis string.
    static DensityMatrix basis_state(const BitString &b);

    const Matrix &matrix() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t num_qubits() const { return num_qubits_; }
    Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

   private:
    DensityMatrix(Matrix m, std::size_t num_qubits) : m_(std::move(m)), num_qubits_(num_qubits) {}

    Matrix m_;
    std::size_t num_qubits_ = 0;
};

/// Convex combination sum_i w_i rho_i. Weights must be non-negative and sum
/// to one.
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states);

enum class Sign { kPlus, kMinus };

inline int sign_value(Sign s) { return s == Sign::kPlus ? +1 : -1; }
inline Sign opposite(Sign s) { return s == Sign::kPlus ? Sign::kMinus : Sign::kPlus; }
inline char sign_char(Sign s) { return s == Sign::kPlus ? '+' : '-'; }

/// Names the GHZ state (|t> +- |~t>)/sqrt(2). The leading bit of t is 0.
class GhzLabel {
   public:
    /// Throws std::invalid_argument if t starts with 1.
    GhzLabel(Sign sign, BitString t);

    /// Parses "+010" / "-00" style labels.
    static GhzLabel from_str(std::string_view text);

    /// All 2^L labels, ordered by t index and then + before -. This is the
    /// ordering used by ghz_overlap_matrix.
    static std::vector<GhzLabel> all(std::size_t num_qubits);

    Sign sign() const { return sign_; }
    const BitString &t() const { return t_; }
    std::size_t num_qubits() const { return t_.size(); }

    /// Position of this label in GhzLabel::all(L).
    std::size_t basis_index() const;

    std::string str() const;

    bool operator==(const GhzLabel &other) const = default;

   private:
    Sign sign_;
    BitString t_;
};

Vector ghz_vector(const GhzLabel &label);

/// The projector onto (|t> +- |~t>)/sqrt(2).
DensityMatrix ghz_density(const GhzLabel &label);

/// Coefficients c_ab = <G_a| rho |G_b> for every ordered pair of GHZ labels,
/// indexed in GhzLabel::all order.
Matrix ghz_overlap_matrix(const Matrix &rho);
inline Matrix ghz_overlap_matrix(const DensityMatrix &rho) { return ghz_overlap_matrix(rho.matrix()); }

/// Inverse of ghz_overlap_matrix: sum_ab c_ab |G_a><G_b|.
Matrix from_ghz_coefficients(const Matrix &coefficients);

/// <G|rho|G> for the target label. Throws std::domain_error if the result
/// falls outside [-1e-10, 1 + 1e-10].
double fidelity(const DensityMatrix &rho, const GhzLabel &target);

/// Partial trace of an n-group register onto one group of `group_qubits`
/// qubits. Group 0 is the most significant.
Matrix reduce_to_group(const Matrix &rho, std::size_t group_qubits, std::size_t group);

}  // namespace ghzfid

#endif  // GHZFID_STATE_H
