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

#include "ghzfid/pauli.h"

#include <bit>
#include <stdexcept>

namespace ghzfid {

Matrix pauli_matrix(Pauli p) {
    Matrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (p) {
        case Pauli::kI:
            m << 1, 0, 0, 1;
            break;
        case Pauli::kX:
            m << 0, 1, 1, 0;
            break;
        case Pauli::kY:
            m << 0, -i, i, 0;
            break;
        case Pauli::kZ:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

PauliString::PauliString(std::vector<Pauli> letters, double coefficient)
    : letters_(std::move(letters)), coefficient_(coefficient) {
    if (letters_.empty() || letters_.size() > kMaxQubits) {
        throw std::invalid_argument("Pauli string length must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
}

PauliString PauliString::from_str(std::string_view text, double coefficient) {
    std::vector<Pauli> letters;
    for (char c : text) {
        switch (c) {
            case 'I':
            case '_':
                letters.push_back(Pauli::kI);
                break;
            case 'X':
                letters.push_back(Pauli::kX);
                break;
            case 'Y':
                letters.push_back(Pauli::kY);
                break;
            case 'Z':
                letters.push_back(Pauli::kZ);
                break;
            default:
                throw std::invalid_argument("not a Pauli string: '" + std::string(text) + "'");
        }
    }
    return PauliString(std::move(letters), coefficient);
}

PauliString PauliString::sigma_iz(const BitString &k) {
    std::vector<Pauli> letters(k.size());
    for (std::size_t l = 0; l < k.size(); ++l) {
        letters[l] = k[l] ? Pauli::kZ : Pauli::kI;
    }
    return PauliString(std::move(letters));
}

PauliString PauliString::sigma_xy(const BitString &k) {
    std::vector<Pauli> letters(k.size());
    for (std::size_t l = 0; l < k.size(); ++l) {
        letters[l] = k[l] ? Pauli::kY : Pauli::kX;
    }
    return PauliString(std::move(letters));
}

std::uint32_t PauliString::x_mask() const {
    std::uint32_t mask = 0;
    std::size_t n = letters_.size();
    for (std::size_t l = 0; l < n; ++l) {
        if (letters_[l] == Pauli::kX || letters_[l] == Pauli::kY) {
            mask |= 1U << (n - 1 - l);
        }
    }
    return mask;
}

std::uint32_t PauliString::z_mask() const {
    std::uint32_t mask = 0;
    std::size_t n = letters_.size();
    for (std::size_t l = 0; l < n; ++l) {
        if (letters_[l] == Pauli::kZ || letters_[l] == Pauli::kY) {
            mask |= 1U << (n - 1 - l);
        }
    }
    return mask;
}

Matrix PauliString::to_matrix() const {
    Matrix m = pauli_matrix(letters_[0]);
    for (std::size_t l = 1; l < letters_.size(); ++l) {
        m = kron(m, pauli_matrix(letters_[l]));
    }
    return coefficient_ * m;
}

std::string PauliString::str() const {
    std::string out;
    for (Pauli p : letters_) {
        out.push_back("IXYZ"[static_cast<int>(p)]);
    }
    return out;
}

PauliString operator*(const PauliString &a, const PauliString &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("product of Pauli strings with different lengths");
    }
    // Power of i picked up by each single-qubit product, indexed [a][b].
    static constexpr int kPhase[4][4] = {{0, 0, 0, 0}, {0, 0, 1, 3}, {0, 3, 0, 1}, {0, 1, 3, 0}};
    static constexpr Pauli kLetter[4][4] = {{Pauli::kI, Pauli::kX, Pauli::kY, Pauli::kZ},
                                            {Pauli::kX, Pauli::kI, Pauli::kZ, Pauli::kY},
                                            {Pauli::kY, Pauli::kZ, Pauli::kI, Pauli::kX},
                                            {Pauli::kZ, Pauli::kY, Pauli::kX, Pauli::kI}};
    std::vector<Pauli> letters(a.size());
    int power = 0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        auto x = static_cast<int>(a.letters()[l]);
        auto y = static_cast<int>(b.letters()[l]);
        power += kPhase[x][y];
        letters[l] = kLetter[x][y];
    }
    power &= 3;
    if (power == 1 || power == 3) {
        throw std::invalid_argument("product of anticommuting Pauli strings " + a.str() + " and " + b.str());
    }
    double sign = power == 2 ? -1.0 : 1.0;
    return PauliString(std::move(letters), sign * a.coefficient() * b.coefficient());
}

double pauli_expectation(const DensityMatrix &rho, const PauliString &p) {
    if (rho.num_qubits() != p.size()) {
        throw std::invalid_argument("pauli_expectation: state has " + std::to_string(rho.num_qubits()) +
                                    " qubits, observable has " + std::to_string(p.size()));
    }
    // P|c> = i^{#Y} (-1)^{|c & z|} |c ^ x>, so tr(rho P) = sum_c phase(c) rho[c, c ^ x].
    std::uint32_t x = p.x_mask();
    std::uint32_t z = p.z_mask();
    int num_y = std::popcount(x & z);
    static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Complex acc = 0.0;
    for (std::uint32_t c = 0; c < rho.dim(); ++c) {
        Complex v = rho(c, c ^ x);
        acc += (std::popcount(c & z) & 1) ? -v : v;
    }
    acc *= kIPowers[num_y & 3];
    if (std::abs(acc.imag()) > tolerance::kImaginary) {
        throw std::domain_error("Pauli expectation has an imaginary residue");
    }
    return p.coefficient() * acc.real();
}

std::vector<BlochTerm> bloch_terms(const GhzLabel &label) {
    std::size_t n = label.num_qubits();
    double norm = 1.0 / static_cast<double>(std::size_t{1} << n);
    std::vector<BlochTerm> terms;
    for (const BitString &k : even_parity_strings(n)) {
        double phase = k.dot(label.t()) ? -1.0 : 1.0;
        double half_weight = ((k.popcount() / 2) & 1) ? -1.0 : 1.0;
        terms.push_back({phase * norm, PauliString::sigma_iz(k)});
        terms.push_back({sign_value(label.sign()) * half_weight * phase * norm, PauliString::sigma_xy(k)});
    }
    return terms;
}

Matrix sum_terms(std::span<const BlochTerm> terms) {
    if (terms.empty()) {
        throw std::invalid_argument("sum_terms of an empty expansion");
    }
    std::size_t d = std::size_t{1} << terms[0].pauli.size();
    Matrix acc = Matrix::Zero(d, d);
    for (const BlochTerm &t : terms) {
        acc += t.coefficient * t.pauli.to_matrix();
    }
    return acc;
}

}  // namespace ghzfid
