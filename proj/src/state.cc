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

#include "ghzfid/state.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ghzfid {

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

double real_trace_product(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw std::invalid_argument("trace product of incompatible matrices");
    }
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        acc += a.row(i).transpose().cwiseProduct(b.col(i)).sum();
    }
    if (std::abs(acc.imag()) > tolerance::kImaginary) {
        std::ostringstream msg;
        msg << "expected a real trace, imaginary part " << acc.imag();
        throw std::domain_error(msg.str());
    }
    return acc.real();
}

std::size_t qubits_for_dimension(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if ((std::size_t{1} << n) != dim || dim < 2) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return n;
}

DensityMatrix DensityMatrix::from_matrix(Matrix m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    std::size_t n = qubits_for_dimension(static_cast<std::size_t>(m.rows()));
    if (n > kMaxQubits) {
        throw std::invalid_argument("density matrix exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    double herm = max_abs(m - m.adjoint());
    if (herm > tolerance::kHermitian) {
        throw std::invalid_argument("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0)) > tolerance::kTrace) {
        std::ostringstream msg;
        msg << "density matrix trace is " << tr << ", expected 1";
        throw std::invalid_argument(msg.str());
    }
    Matrix sym = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    double lowest = eig.eigenvalues().minCoeff();
    if (lowest < tolerance::kMinEigenvalue) {
        std::ostringstream msg;
        msg << "density matrix is not positive semidefinite (min eigenvalue " << lowest << ")";
        throw std::invalid_argument(msg.str());
    }
    return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
    BitString check(num_qubits);
    std::size_t d = std::size_t{1} << num_qubits;
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d), num_qubits);
}

DensityMatrix DensityMatrix::basis_state(const BitString &b) {
    std::size_t d = std::size_t{1} << b.size();
    Matrix m = Matrix::Zero(d, d);
    m(b.index(), b.index()) = 1.0;
    return DensityMatrix(std::move(m), b.size());
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw std::invalid_argument("mix needs one weight per state");
    }
    Matrix acc = Matrix::Zero(states[0].dim(), states[0].dim());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (weights[i] < 0.0) {
            throw std::invalid_argument("negative mixing weight");
        }
        if (states[i].dim() != states[0].dim()) {
            throw std::invalid_argument("mixing states of different dimension");
        }
        acc += weights[i] * states[i].matrix();
    }
    return DensityMatrix::from_matrix(std::move(acc));
}

GhzLabel::GhzLabel(Sign sign, BitString t) : sign_(sign), t_(std::move(t)) {
    if (t_.size() == 0) {
        throw std::invalid_argument("GHZ label needs a non-empty string");
    }
    if (t_[0]) {
        throw std::invalid_argument("GHZ label string must start with 0, got " + t_.str());
    }
}

GhzLabel GhzLabel::from_str(std::string_view text) {
    if (text.size() < 2 || (text[0] != '+' && text[0] != '-')) {
        throw std::invalid_argument("GHZ label must look like +010 or -00, got '" + std::string(text) + "'");
    }
    return GhzLabel(text[0] == '+' ? Sign::kPlus : Sign::kMinus, BitString::from_str(text.substr(1)));
}

std::vector<GhzLabel> GhzLabel::all(std::size_t num_qubits) {
    BitString check(num_qubits);
    std::vector<GhzLabel> out;
    std::uint32_t half = 1U << (num_qubits - 1);
    out.reserve(2 * half);
    for (std::uint32_t v = 0; v < half; ++v) {
        BitString t = BitString::from_index(v, num_qubits);
        out.emplace_back(Sign::kPlus, t);
        out.emplace_back(Sign::kMinus, t);
    }
    return out;
}

std::size_t GhzLabel::basis_index() const { return 2 * t_.index() + (sign_ == Sign::kMinus ? 1 : 0); }

std::string GhzLabel::str() const { return std::string(1, sign_char(sign_)) + t_.str(); }

Vector ghz_vector(const GhzLabel &label) {
    std::size_t d = std::size_t{1} << label.num_qubits();
    Vector v = Vector::Zero(d);
    double amp = 1.0 / std::sqrt(2.0);
    v(label.t().index()) = amp;
    v(label.t().complement().index()) = sign_value(label.sign()) * amp;
    return v;
}

DensityMatrix ghz_density(const GhzLabel &label) {
    Vector v = ghz_vector(label);
    return DensityMatrix::from_matrix(v * v.adjoint());
}

namespace {

// Each GHZ basis vector has two nonzero amplitudes, so the basis change is
// done entrywise instead of with dense products.
struct GhzColumn {
    std::size_t lo;
    std::size_t hi;
    double hi_sign;
};

std::vector<GhzColumn> ghz_columns(std::size_t num_qubits) {
    std::vector<GhzColumn> cols;
    for (const GhzLabel &g : GhzLabel::all(num_qubits)) {
        cols.push_back({g.t().index(), g.t().complement().index(), static_cast<double>(sign_value(g.sign()))});
    }
    return cols;
}

}  // namespace

Matrix ghz_overlap_matrix(const Matrix &rho) {
    std::size_t n = qubits_for_dimension(static_cast<std::size_t>(rho.rows()));
    std::vector<GhzColumn> cols = ghz_columns(n);
    std::size_t d = cols.size();
    Matrix c(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        const GhzColumn &ga = cols[a];
        for (std::size_t b = 0; b < d; ++b) {
            const GhzColumn &gb = cols[b];
            Complex v = rho(ga.lo, gb.lo) + gb.hi_sign * rho(ga.lo, gb.hi) + ga.hi_sign * rho(ga.hi, gb.lo) +
                        ga.hi_sign * gb.hi_sign * rho(ga.hi, gb.hi);
            c(a, b) = 0.5 * v;
        }
    }
    return c;
}

Matrix from_ghz_coefficients(const Matrix &coefficients) {
    std::size_t n = qubits_for_dimension(static_cast<std::size_t>(coefficients.rows()));
    std::vector<GhzColumn> cols = ghz_columns(n);
    std::size_t d = cols.size();
    Matrix rho = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        const GhzColumn &ga = cols[a];
        for (std::size_t b = 0; b < d; ++b) {
            const GhzColumn &gb = cols[b];
            Complex v = 0.5 * coefficients(a, b);
            rho(ga.lo, gb.lo) += v;
            rho(ga.lo, gb.hi) += gb.hi_sign * v;
            rho(ga.hi, gb.lo) += ga.hi_sign * v;
            rho(ga.hi, gb.hi) += ga.hi_sign * gb.hi_sign * v;
        }
    }
    return rho;
}

double fidelity(const DensityMatrix &rho, const GhzLabel &target) {
    if (rho.num_qubits() != target.num_qubits()) {
        throw std::invalid_argument("fidelity: state has " + std::to_string(rho.num_qubits()) +
                                    " qubits, target has " + std::to_string(target.num_qubits()));
    }
    std::size_t lo = target.t().index();
    std::size_t hi = target.t().complement().index();
    double s = sign_value(target.sign());
    Complex v = 0.5 * (rho(lo, lo) + rho(hi, hi) + s * (rho(lo, hi) + rho(hi, lo)));
    if (std::abs(v.imag()) > tolerance::kImaginary) {
        throw std::domain_error("fidelity has an imaginary residue");
    }
    double f = v.real();
    if (f < -1e-10 || f > 1.0 + 1e-10) {
        throw std::domain_error("fidelity " + std::to_string(f) + " outside [0, 1]");
    }
    return f;
}

Matrix reduce_to_group(const Matrix &rho, std::size_t group_qubits, std::size_t group) {
    std::size_t total = qubits_for_dimension(static_cast<std::size_t>(rho.rows()));
    if (group_qubits == 0 || total % group_qubits != 0) {
        throw std::invalid_argument("register does not split into groups of " + std::to_string(group_qubits));
    }
    std::size_t groups = total / group_qubits;
    if (group >= groups) {
        throw std::out_of_range("group index out of range");
    }
    std::size_t dk = std::size_t{1} << group_qubits;
    std::size_t shift = (groups - 1 - group) * group_qubits;
    std::size_t keep_mask = (dk - 1) << shift;
    std::size_t d = static_cast<std::size_t>(rho.rows());
    Matrix out = Matrix::Zero(dk, dk);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if ((i & ~keep_mask) != (j & ~keep_mask)) {
                continue;
            }
            out((i & keep_mask) >> shift, (j & keep_mask) >> shift) += rho(i, j);
        }
    }
    return out;
}

}  // namespace ghzfid
