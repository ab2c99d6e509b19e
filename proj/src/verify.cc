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

#include "ghzfid/verify.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ghzfid/estimators.h"
#include "ghzfid/pauli.h"
#include "ghzfid/protocols.h"
#include "ghzfid/rng.h"
#include "ghzfid/twirl.h"

namespace ghzfid {

namespace {

// ---- Naive dense building blocks, deliberately independent of the library.

Matrix naive_kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

Matrix single(char letter) {
    const Complex i(0.0, 1.0);
    Matrix m(2, 2);
    switch (letter) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -i, i, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::logic_error("bad Pauli letter");
    }
    return m;
}

// Letter 0 acts on the most significant qubit.
Matrix naive_pauli(const std::string &letters) {
    Matrix m = single(letters[0]);
    for (std::size_t l = 1; l < letters.size(); ++l) {
        m = naive_kron(m, single(letters[l]));
    }
    return m;
}

bool bit_of(std::uint32_t value, std::size_t pos, std::size_t n) { return ((value >> (n - 1 - pos)) & 1U) != 0; }

// Y where k has a one, X elsewhere.
std::string xy_letters(std::uint32_t k, std::size_t n) {
    std::string s;
    for (std::size_t l = 0; l < n; ++l) {
        s.push_back(bit_of(k, l, n) ? 'Y' : 'X');
    }
    return s;
}

std::string iz_letters(std::uint32_t k, std::size_t n) {
    std::string s;
    for (std::size_t l = 0; l < n; ++l) {
        s.push_back(bit_of(k, l, n) ? 'Z' : 'I');
    }
    return s;
}

// (|t> + sign |~t>) / sqrt 2 from its two basis amplitudes.
Vector naive_ghz(std::uint32_t t, bool minus, std::size_t n) {
    std::size_t d = std::size_t{1} << n;
    Vector v = Vector::Zero(d);
    v(t) = 1.0 / std::numbers::sqrt2;
    v(t ^ (d - 1)) += (minus ? -1.0 : 1.0) / std::numbers::sqrt2;
    return v;
}

Matrix projector(const Vector &v) { return v * v.adjoint(); }

double real_trace(const Matrix &a, const Matrix &b) { return (a * b).trace().real(); }

// All GHZ vectors of n qubits, t with leading zero, sign + then -.
std::vector<Vector> ghz_basis(std::size_t n) {
    std::vector<Vector> out;
    for (std::uint32_t t = 0; t < (1U << (n - 1)); ++t) {
        out.push_back(naive_ghz(t, false, n));
        out.push_back(naive_ghz(t, true, n));
    }
    return out;
}

double max_off_diagonal(const Matrix &rho, const std::vector<Vector> &basis) {
    double worst = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (a != b) {
                worst = std::max(worst, std::abs(basis[a].dot(rho * basis[b])));
            }
        }
    }
    return worst;
}

// Outcome distribution of a two-outcome observable O (eigenvalues +-1).
double prob_plus(const Matrix &rho, const Matrix &o) {
    Matrix id = Matrix::Identity(o.rows(), o.cols());
    return real_trace(rho, 0.5 * (id + o));
}

std::uint32_t target_index(const GhzLabel &target) { return static_cast<std::uint32_t>(target.t().index()); }

// Exact moments of one round of the proposed protocol by enumeration.
struct RoundMoments {
    double error_probability = 0.0;
    double estimate_mean = 0.0;
};

RoundMoments enumerate_round(const Matrix &rho, const GhzLabel &target) {
    std::size_t n = target.num_qubits();
    std::size_t d = std::size_t{1} << n;
    std::uint32_t t = target_index(target);
    std::uint32_t t_bar = t ^ static_cast<std::uint32_t>(d - 1);
    double s = target.sign() == Sign::kPlus ? 1.0 : -1.0;
    double p_err = 0.0;
    // z setting, probability 1/3: error unless the outcome is t or ~t.
    for (std::uint32_t b = 0; b < d; ++b) {
        double born = rho(b, b).real();
        if (b != t && b != t_bar) {
            p_err += born / 3.0;
        }
    }
    // xy settings, probability (2/3) / 2^(L-1) each.
    double weight = (2.0 / 3.0) / static_cast<double>(d / 2);
    for (std::uint32_t k = 0; k < d; ++k) {
        if (std::popcount(k) % 2 != 0) {
            continue;
        }
        Matrix o = naive_pauli(xy_letters(k, n));
        double plus = prob_plus(rho, o);
        int half = std::popcount(k) / 2 + std::popcount(k & t);
        double e = half % 2 == 0 ? 1.0 : -1.0;
        // Outcome c is an error when c != s e.
        double p_wrong = s * e > 0 ? 1.0 - plus : plus;
        p_err += weight * p_wrong;
    }
    return {p_err, 1.0 - 1.5 * p_err};
}

Matrix white_state(const Matrix &g, double f) {
    std::size_t d = static_cast<std::size_t>(g.rows());
    Matrix id = Matrix::Identity(d, d);
    return f * g + (1.0 - f) * (id - g) / static_cast<double>(d - 1);
}

GhzLabel random_label(std::size_t n, Rng &rng) {
    auto t = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << (n - 1)));
    return GhzLabel(rng.below(2) == 0 ? Sign::kPlus : Sign::kMinus, BitString::from_index(t, n));
}

OracleReport timed(const std::string &name, double tolerance, const std::function<double()> &body) {
    auto start = std::chrono::steady_clock::now();
    OracleReport r;
    r.name = name;
    r.tolerance = tolerance;
    r.max_deviation = body();
    r.pass = r.max_deviation <= tolerance;
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

void require_range(std::size_t n, std::size_t lo, std::size_t hi, const char *what) {
    if (n < lo || n > hi) {
        throw std::invalid_argument(std::string(what) + " needs " + std::to_string(lo) + " <= L <= " +
                                    std::to_string(hi) + ", got " + std::to_string(n));
    }
}

}  // namespace

std::string format_report(const OracleReport &report) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s %s deviation=%.3e tolerance=%.1e time=%.3fs", report.pass ? "PASS" : "FAIL",
                  report.name.c_str(), report.max_deviation, report.tolerance, report.elapsed_seconds);
    return buf;
}

DensityMatrix random_density_matrix(std::size_t num_qubits, std::uint64_t seed, std::uint64_t index) {
    Rng rng(seed, {0x72686fULL, index});
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t d = std::size_t{1} << num_qubits;
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double re = normal(rng.engine());
            double im = normal(rng.engine());
            a(i, j) = Complex(re, im);
        }
    }
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    // Symmetrize away rounding so the Hermiticity check is exact.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix::from_matrix(rho);
}

OracleReport check_subset_counts(std::size_t l_max) {
    if (l_max > 20) {
        throw std::invalid_argument("subset enumeration is capped at L = 20");
    }
    return timed("subset_counts(L<=" + std::to_string(l_max) + ")", 0.0, [&] {
        double worst = 0.0;
        for (std::size_t n = 1; n <= l_max; ++n) {
            std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1);
            std::uint64_t even = 0;
            for (std::uint32_t s = 0; s <= full; ++s) {
                even += std::popcount(s) % 2 == 0 ? 1 : 0;
            }
            worst = std::max(worst, std::abs(static_cast<double>(even) - std::ldexp(1.0, static_cast<int>(n) - 1)));
            // Supersets of T with even / odd cardinality. By symmetry only
            // |T| matters, so T is taken as the first |T| qubits; for small
            // L every T is enumerated.
            for (std::uint32_t tmask = 0; tmask <= full; ++tmask) {
                std::size_t size = static_cast<std::size_t>(std::popcount(tmask));
                bool prefix = tmask == (((1U << size) - 1) << (n - size));
                if (size >= n || (n > 10 && !prefix)) {
                    continue;
                }
                std::uint64_t even_sup = 0;
                std::uint64_t odd_sup = 0;
                std::uint32_t rest = full & ~tmask;
                // Iterate over all subsets of the complement.
                for (std::uint32_t extra = rest;; extra = (extra - 1) & rest) {
                    std::uint32_t s = tmask | extra;
                    (std::popcount(s) % 2 == 0 ? even_sup : odd_sup) += 1;
                    if (extra == 0) {
                        break;
                    }
                }
                double expected = std::ldexp(1.0, static_cast<int>(n - size) - 1);
                worst = std::max(worst, std::abs(static_cast<double>(even_sup) - expected));
                worst = std::max(worst, std::abs(static_cast<double>(odd_sup) - expected));
            }
        }
        return worst;
    });
}

OracleReport check_bloch(std::size_t num_qubits) {
    require_range(num_qubits, 2, 5, "check_bloch");
    return timed("bloch(L=" + std::to_string(num_qubits) + ")", 1e-12, [&] {
        std::size_t n = num_qubits;
        double worst = 0.0;
        for (const GhzLabel &label : GhzLabel::all(n)) {
            Matrix expected = projector(naive_ghz(target_index(label), label.sign() == Sign::kMinus, n));
            // Library expansion, summed with naive matrices.
            std::size_t d = std::size_t{1} << n;
            Matrix sum = Matrix::Zero(d, d);
            for (const BlochTerm &term : bloch_terms(label)) {
                sum += term.coefficient * naive_pauli(term.pauli.str());
            }
            worst = std::max(worst, (sum - expected).cwiseAbs().maxCoeff());
            // Closed-form expansion, independent of bloch_terms.
            Matrix direct = Matrix::Zero(d, d);
            double s = label.sign() == Sign::kPlus ? 1.0 : -1.0;
            std::uint32_t t = target_index(label);
            for (std::uint32_t k = 0; k < d; ++k) {
                if (std::popcount(k) % 2 != 0) {
                    continue;
                }
                double phase = std::popcount(k & t) % 2 == 0 ? 1.0 : -1.0;
                double half = (std::popcount(k) / 2) % 2 == 0 ? 1.0 : -1.0;
                direct += phase * (naive_pauli(iz_letters(k, n)) + s * half * naive_pauli(xy_letters(k, n)));
            }
            direct /= static_cast<double>(d);
            worst = std::max(worst, (direct - expected).cwiseAbs().maxCoeff());
            worst = std::max(worst, (ghz_density(label).matrix() - expected).cwiseAbs().maxCoeff());
        }
        return worst;
    });
}

OracleReport check_weighted_observable(std::size_t num_qubits) {
    require_range(num_qubits, 2, 5, "check_weighted_observable");
    return timed("weighted_observable(L=" + std::to_string(num_qubits) + ")", 1e-12, [&] {
        std::size_t n = num_qubits;
        std::size_t d = std::size_t{1} << n;
        std::vector<Vector> basis = ghz_basis(n);
        double worst = 0.0;
        for (std::uint32_t j = 0; j < d / 2; ++j) {
            Matrix w = Matrix::Zero(d, d);
            for (std::uint32_t k = 0; k < d; ++k) {
                if (std::popcount(k) % 2 != 0) {
                    continue;
                }
                int exponent = std::popcount(k) / 2 + std::popcount(k & j);
                w += (exponent % 2 == 0 ? 1.0 : -1.0) * naive_pauli(xy_letters(k, n));
            }
            w /= static_cast<double>(d / 2);
            for (std::size_t b = 0; b < basis.size(); ++b) {
                auto label_t = static_cast<std::uint32_t>(b / 2);
                bool minus = (b % 2) == 1;
                double expected = label_t == j ? (minus ? -1.0 : 1.0) : 0.0;
                double value = real_trace(w, projector(basis[b]));
                worst = std::max(worst, std::abs(value - expected));
            }
        }
        return worst;
    });
}

OracleReport check_twirl(std::size_t num_qubits, std::size_t copies, std::size_t num_states, std::uint64_t seed) {
    require_range(num_qubits, 2, 5, "check_twirl");
    if (copies < 1 || (copies > 1 && copies * num_qubits > 4)) {
        throw std::invalid_argument("joint twirl checks are limited to 4 qubits in total");
    }
    std::string name = "twirl(L=" + std::to_string(num_qubits) + ",copies=" + std::to_string(copies) +
                       ",states=" + std::to_string(num_states) + ")";
    return timed(name, 1e-10, [&] {
        std::size_t n = num_qubits;
        std::size_t total = n * copies;
        std::size_t d = std::size_t{1} << n;
        // Product GHZ basis over all copies.
        std::vector<Vector> single_basis = ghz_basis(n);
        std::vector<Vector> basis = single_basis;
        for (std::size_t c = 1; c < copies; ++c) {
            std::vector<Vector> next;
            for (const Vector &a : basis) {
                for (const Vector &b : single_basis) {
                    next.push_back(naive_kron(a, b));
                }
            }
            basis = next;
        }
        // Naive unitaries: every mask of popcount 0 or 2, on every copy.
        std::vector<Matrix> unitaries;
        for (std::size_t c = 0; c < copies; ++c) {
            for (std::uint32_t k = 0; k < d; ++k) {
                int w = std::popcount(k);
                if (w != 0 && w != 2) {
                    continue;
                }
                std::string letters(total, 'I');
                std::string local = xy_letters(k, n);
                std::copy(local.begin(), local.end(), letters.begin() + static_cast<std::ptrdiff_t>(c * n));
                unitaries.push_back(naive_pauli(letters));
            }
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < num_states; ++i) {
            DensityMatrix rho = random_density_matrix(total, seed, i);
            Matrix naive = rho.matrix();
            for (const Matrix &u : unitaries) {
                naive = (0.5 * (naive + u * naive * u.adjoint())).eval();
            }
            Matrix lib = full_twirl(rho, n).matrix();
            worst = std::max(worst, (lib - naive).cwiseAbs().maxCoeff());
            worst = std::max(worst, max_off_diagonal(lib, basis));
            for (const Vector &v : basis) {
                Complex before = v.dot(rho.matrix() * v);
                Complex after = v.dot(lib * v);
                worst = std::max(worst, std::abs(before - after));
            }
        }
        return worst;
    });
}

OracleReport check_exact_unbiasedness(std::size_t num_qubits, const DensityMatrix &state, const GhzLabel &target) {
    require_range(num_qubits, 2, 4, "check_exact_unbiasedness");
    if (state.num_qubits() != num_qubits || target.num_qubits() != num_qubits) {
        throw std::invalid_argument("state and target must have L qubits");
    }
    return timed("exact_unbiasedness(L=" + std::to_string(num_qubits) + "," + target.str() + ")", 1e-12, [&] {
        Matrix g = projector(naive_ghz(target_index(target), target.sign() == Sign::kMinus, num_qubits));
        double f = real_trace(state.matrix(), g);
        RoundMoments moments = enumerate_round(state.matrix(), target);
        double worst = std::abs(moments.estimate_mean - f);
        worst = std::max(worst, std::abs(moments.error_probability - 2.0 * (1.0 - f) / 3.0));
        worst = std::max(worst, std::abs(moments.error_probability - round_error_probability(state, target)));
        return worst;
    });
}

OracleReport check_random_unbiasedness(std::size_t num_qubits, std::size_t num_states, std::uint64_t seed) {
    require_range(num_qubits, 2, 4, "check_random_unbiasedness");
    std::string name =
        "exact_unbiasedness(L=" + std::to_string(num_qubits) + ",random_states=" + std::to_string(num_states) + ")";
    return timed(name, 1e-12, [&] {
        Rng rng(seed, {0x6c6162ULL});
        double worst = 0.0;
        for (std::size_t i = 0; i < num_states; ++i) {
            DensityMatrix rho = random_density_matrix(num_qubits, seed, i);
            GhzLabel target = random_label(num_qubits, rng);
            worst = std::max(worst, check_exact_unbiasedness(num_qubits, rho, target).max_deviation);
        }
        return worst;
    });
}

OracleReport check_variance_formula(std::size_t num_qubits, std::span<const double> fidelities) {
    require_range(num_qubits, 2, 4, "check_variance_formula");
    return timed("variance_formula(L=" + std::to_string(num_qubits) + ")", 1e-12, [&] {
        GhzLabel target(Sign::kPlus, BitString(num_qubits));
        Matrix g = projector(naive_ghz(0, false, num_qubits));
        double worst = 0.0;
        for (double f : fidelities) {
            RoundMoments moments = enumerate_round(white_state(g, f), target);
            double p = moments.error_probability;
            double variance = p * (1.0 - p);
            double formula = (2.0 * f + 1.0) * (2.0 - 2.0 * f) / 9.0;
            worst = std::max(worst, std::abs(variance - formula));
            worst = std::max(worst, std::abs(per_round_error_variance(f) - formula));
            worst = std::max(worst, std::abs(per_round_error_probability(f) - p));
        }
        return worst;
    });
}

OracleReport check_lower_bound(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n > 16 || m == 0 || m > n) {
        throw std::invalid_argument("check_lower_bound needs 0 < M <= N <= 16");
    }
    std::string name = "lower_bound(N=" + std::to_string(n) + ",M=" + std::to_string(m) + ")";
    return timed(name, 1e-12, [&] {
        Rng rng(seed, {0x6c62ULL});
        std::vector<double> f(n);
        for (double &x : f) {
            x = rng.uniform();
        }
        double worst = 0.0;
        double sum = 0.0;
        std::size_t subsets = 0;
        for (std::uint32_t s = 0; s < (1U << n); ++s) {
            if (static_cast<std::size_t>(std::popcount(s)) != m) {
                continue;
            }
            std::vector<double> picked;
            double variance = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if ((s >> i) & 1U) {
                    picked.push_back(f[i]);
                    // Var of the M-round estimate: (9/4) sum p(1-p) / M^2.
                    double p = 2.0 * (1.0 - f[i]) / 3.0;
                    variance += 2.25 * p * (1.0 - p);
                }
            }
            variance /= static_cast<double>(m * m);
            worst = std::max(worst, std::abs(variance - theoretical_conditional_variance(picked, m)));
            sum += variance;
            ++subsets;
        }
        double average = sum / static_cast<double>(subsets);
        worst = std::max(worst, std::abs(average - error_lower_bound(f, m)));
        return worst;
    });
}

OracleReport check_baselines(std::size_t num_qubits, std::size_t num_states, std::uint64_t seed) {
    require_range(num_qubits, 2, 4, "check_baselines");
    std::string name = "baselines(L=" + std::to_string(num_qubits) + ")";
    return timed(name, 1e-12, [&] {
        std::size_t n = num_qubits;
        std::size_t d = std::size_t{1} << n;
        Rng rng(seed, {0x626173ULL});
        double worst = 0.0;
        for (std::size_t i = 0; i < num_states; ++i) {
            DensityMatrix rho = random_density_matrix(n, seed, i);
            GhzLabel target = random_label(n, rng);
            std::uint32_t t = target_index(target);
            std::uint32_t t_bar = t ^ static_cast<std::uint32_t>(d - 1);
            double s = target.sign() == Sign::kPlus ? 1.0 : -1.0;
            Matrix g = projector(naive_ghz(t, target.sign() == Sign::kMinus, n));
            double f = real_trace(rho.matrix(), g);

            // Population / coherence estimator.
            double pop = rho(t, t).real() + rho(t_bar, t_bar).real();
            double mean = 0.5 * pop;
            double second = 0.5 * pop;
            Matrix x = single('X');
            Matrix y = single('Y');
            for (std::size_t k = 0; k < n; ++k) {
                Matrix o;
                for (std::size_t l = 0; l < n; ++l) {
                    double theta = static_cast<double>(k) * std::numbers::pi / static_cast<double>(n);
                    if (bit_of(t, l, n)) {
                        theta = -theta;
                    }
                    Matrix local = std::cos(theta) * x + std::sin(theta) * y;
                    o = l == 0 ? local : naive_kron(o, local);
                }
                double plus = prob_plus(rho.matrix(), o);
                double sign = s * (k % 2 == 0 ? 1.0 : -1.0);
                double w = 1.0 / (2.0 * static_cast<double>(n));
                mean += w * sign * (plus - (1.0 - plus));
                second += w;
            }
            GuhneEstimator guhne(target);
            worst = std::max(worst, std::abs(mean - f));
            worst = std::max(worst, std::abs(guhne.round_mean(rho) - f));
            worst = std::max(worst, std::abs(guhne.round_variance(rho) - (second - mean * mean)));

            // Stabilizer sampling estimator: products of the generators.
            std::vector<Matrix> generators;
            generators.push_back(s * naive_pauli(std::string(n, 'X')));
            for (std::size_t l = 1; l < n; ++l) {
                std::string letters(n, 'I');
                letters[0] = 'Z';
                letters[l] = 'Z';
                generators.push_back((bit_of(t, l, n) ? -1.0 : 1.0) * naive_pauli(letters));
            }
            DfeEstimator dfe(target);
            double dfe_mean = 0.0;
            for (std::size_t mask = 0; mask < d; ++mask) {
                Matrix stab = Matrix::Identity(d, d);
                for (std::size_t gi = 0; gi < n; ++gi) {
                    if ((mask >> gi) & 1U) {
                        stab = (stab * generators[gi]).eval();
                    }
                }
                const PauliString &lib = dfe.stabilizers()[mask];
                worst = std::max(worst, (lib.coefficient() * naive_pauli(lib.str()) - stab).cwiseAbs().maxCoeff());
                double plus = prob_plus(rho.matrix(), stab);
                dfe_mean += (2.0 * plus - 1.0) / static_cast<double>(d);
            }
            worst = std::max(worst, std::abs(dfe_mean - f));
            worst = std::max(worst, std::abs(dfe.round_mean(rho) - f));
            worst = std::max(worst, std::abs(dfe.round_variance(rho) - (1.0 - dfe_mean * dfe_mean)));
        }
        return worst;
    });
}

std::vector<OracleReport> run_all() {
    std::vector<OracleReport> out;
    out.push_back(check_subset_counts(20));
    for (std::size_t n = 2; n <= 5; ++n) {
        out.push_back(check_bloch(n));
        out.push_back(check_weighted_observable(n));
    }
    out.push_back(check_twirl(3, 1, 200));
    out.push_back(check_twirl(2, 2, 20));
    for (std::size_t n = 2; n <= 4; ++n) {
        out.push_back(check_random_unbiasedness(n, 50));
        out.push_back(check_baselines(n));
    }
    const double grid[] = {0.0, 0.25, 0.5, 0.8, 1.0};
    out.push_back(check_variance_formula(3, grid));
    out.push_back(check_lower_bound(10, 4));
    return out;
}

}  // namespace ghzfid
