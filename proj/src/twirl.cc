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

#include "ghzfid/twirl.h"

#include <stdexcept>

#include "ghzfid/pauli.h"

namespace ghzfid {

RotationMask::RotationMask(BitString k) : k_(std::move(k)) {
    std::size_t w = k_.popcount();
    if (w != 0 && w != 2) {
        throw std::invalid_argument("rotation mask must have popcount 0 or 2, got " + k_.str());
    }
}

std::vector<RotationMask> RotationMask::all(std::size_t num_qubits) {
    std::vector<RotationMask> out;
    for (std::uint32_t v = 0; v < (1U << num_qubits); ++v) {
        BitString k = BitString::from_index(v, num_qubits);
        std::size_t w = k.popcount();
        if (w == 0 || w == 2) {
            out.emplace_back(k);
        }
    }
    return out;
}

Matrix multirotation_unitary(const RotationMask &mask) { return PauliString::sigma_xy(mask.bits()).to_matrix(); }

namespace {

Matrix identity(std::size_t qubits) {
    std::size_t d = std::size_t{1} << qubits;
    return Matrix::Identity(d, d);
}

Matrix embed(const Matrix &u, std::size_t group, std::size_t groups, std::size_t group_qubits) {
    Matrix out = group == 0 ? u : identity(group_qubits);
    for (std::size_t g = 1; g < groups; ++g) {
        out = kron(out, g == group ? u : identity(group_qubits));
    }
    return out;
}

}  // namespace

DensityMatrix twirl_step(const DensityMatrix &rho, const RotationMask &mask) {
    if (rho.num_qubits() != mask.num_qubits()) {
        throw std::invalid_argument("twirl_step: state has " + std::to_string(rho.num_qubits()) +
                                    " qubits, mask has " + std::to_string(mask.num_qubits()));
    }
    Matrix u = multirotation_unitary(mask);
    return DensityMatrix::from_matrix(0.5 * (rho.matrix() + u * rho.matrix() * u.adjoint()));
}

DensityMatrix twirl_in_order(const DensityMatrix &rho, std::span<const RotationMask> order) {
    if (order.empty()) {
        return rho;
    }
    std::size_t group_qubits = order.front().num_qubits();
    if (rho.num_qubits() % group_qubits != 0) {
        throw std::invalid_argument("state of " + std::to_string(rho.num_qubits()) +
                                    " qubits does not split into copies of " + std::to_string(group_qubits));
    }
    std::size_t groups = rho.num_qubits() / group_qubits;
    Matrix m = rho.matrix();
    for (std::size_t g = 0; g < groups; ++g) {
        for (const RotationMask &mask : order) {
            if (mask.num_qubits() != group_qubits) {
                throw std::invalid_argument("mask lengths differ within one twirl");
            }
            Matrix u = embed(multirotation_unitary(mask), g, groups, group_qubits);
            m = 0.5 * (m + u * m * u.adjoint());
        }
    }
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix full_twirl(const DensityMatrix &rho, std::size_t qubits_per_copy) {
    std::vector<RotationMask> masks = RotationMask::all(qubits_per_copy);
    return twirl_in_order(rho, masks);
}

}  // namespace ghzfid
