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

#include "ghzfid/noise.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghzfid {

double DarkCountModel::max_delta(double p_dark) {
    double inf = std::numeric_limits<double>::infinity();
    double a = p_dark > 0.0 ? 1.0 / p_dark : inf;
    double b = p_dark < 1.0 ? 1.0 / (1.0 - p_dark) : inf;
    return std::min(a, b);
}

void DarkCountModel::validate() const {
    if (!(p_dark >= 0.0 && p_dark <= 1.0)) {
        throw std::invalid_argument("p_dark must be in [0, 1], got " + std::to_string(p_dark));
    }
    // Small slack so grid values such as delta = 1/0.7 survive rounding.
    if (!(delta > 0.0 && delta <= max_delta(p_dark) * (1.0 + 1e-12))) {
        throw std::invalid_argument("delta must be in (0, " + std::to_string(max_delta(p_dark)) + "] for p_dark " +
                                    std::to_string(p_dark) + ", got " + std::to_string(delta));
    }
}

std::array<std::array<double, 2>, 2> DarkCountModel::transition_matrix() const {
    validate();
    double up = std::min(1.0, delta * p_dark);
    double down = std::min(1.0, delta * (1.0 - p_dark));
    return {{{1.0 - up, down}, {up, 1.0 - down}}};
}

std::vector<std::uint8_t> dark_count_chain(const DarkCountModel &model, std::size_t n) {
    Rng rng(model.seed, {0x6461726bULL});
    return dark_count_chain(model, n, rng);
}

std::vector<std::uint8_t> dark_count_chain(const DarkCountModel &model, std::size_t n, Rng &rng) {
    auto t = model.transition_matrix();
    std::vector<std::uint8_t> chain(n);
    if (n == 0) {
        return chain;
    }
    std::uint8_t state = rng.bernoulli(model.p_dark) ? 1 : 0;
    chain[0] = state;
    for (std::size_t i = 1; i < n; ++i) {
        // t[1][state] is the probability of landing in the dark state.
        state = rng.bernoulli(t[1][state]) ? 1 : 0;
        chain[i] = state;
    }
    return chain;
}

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "perfect") return NoiseKind::kPerfect;
    if (name == "white") return NoiseKind::kWhite;
    if (name == "dephased") return NoiseKind::kDephased;
    if (name == "dark-replaced") return NoiseKind::kDarkReplaced;
    if (name == "adversarial-minus") return NoiseKind::kAdversarialMinus;
    if (name == "custom-mixture") return NoiseKind::kCustomMixture;
    throw std::invalid_argument("unknown noise kind '" + std::string(name) + "'");
}

std::string_view noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::kPerfect:
            return "perfect";
        case NoiseKind::kWhite:
            return "white";
        case NoiseKind::kDephased:
            return "dephased";
        case NoiseKind::kDarkReplaced:
            return "dark-replaced";
        case NoiseKind::kAdversarialMinus:
            return "adversarial-minus";
        case NoiseKind::kCustomMixture:
            return "custom-mixture";
    }
    throw std::invalid_argument("unknown noise kind");
}

double NoiseSpec::get(const std::string &name, double fallback) const {
    auto it = parameters.find(name);
    return it == parameters.end() ? fallback : it->second;
}

namespace {

double dimension(const GhzLabel &target) { return static_cast<double>(std::size_t{1} << target.num_qubits()); }

Matrix target_projector(const GhzLabel &target) { return ghz_density(target).matrix(); }

Matrix opposite_projector(const GhzLabel &target) {
    return ghz_density(GhzLabel(opposite(target.sign()), target.t())).matrix();
}

// (I - G) / (2^L - 1).
Matrix orthogonal_white(const GhzLabel &target) {
    double d = dimension(target);
    Matrix g = target_projector(target);
    return (Matrix::Identity(g.rows(), g.cols()) - g) / (d - 1.0);
}

void check_fidelity_range(double f) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw std::invalid_argument("fidelity must be in [0, 1], got " + std::to_string(f));
    }
}

Matrix custom_component(const GhzLabel &target, double white_weight, double minus_weight) {
    if (white_weight < 0.0 || minus_weight < 0.0 || white_weight + minus_weight <= 0.0) {
        throw std::invalid_argument("custom-mixture needs non-negative weights 'white' and 'minus' with positive sum");
    }
    double total = white_weight + minus_weight;
    return (white_weight * orthogonal_white(target) + minus_weight * opposite_projector(target)) / total;
}

}  // namespace

DensityMatrix white_mixture(const GhzLabel &target, double f) {
    check_fidelity_range(f);
    return DensityMatrix::from_matrix(f * target_projector(target) + (1.0 - f) * orthogonal_white(target));
}

DensityMatrix baseline_state(const GhzLabel &target, const NoiseSpec &spec) {
    return white_mixture(target, spec.baseline_fidelity());
}

DensityMatrix degraded_state(const GhzLabel &target, const NoiseSpec &spec) {
    switch (spec.kind) {
        case NoiseKind::kPerfect:
            return baseline_state(target, spec);
        case NoiseKind::kWhite:
            return DensityMatrix::maximally_mixed(target.num_qubits());
        case NoiseKind::kDephased: {
            Matrix m = baseline_state(target, spec).matrix().diagonal().asDiagonal();
            return DensityMatrix::from_matrix(std::move(m));
        }
        case NoiseKind::kDarkReplaced:
            return DensityMatrix::basis_state(target.t());
        case NoiseKind::kAdversarialMinus:
            return DensityMatrix::from_matrix(opposite_projector(target));
        case NoiseKind::kCustomMixture:
            return DensityMatrix::from_matrix(custom_component(target, spec.get("white", 1.0), spec.get("minus", 0.0)));
    }
    throw std::invalid_argument("unknown noise kind");
}

DensityMatrix copy_state(std::uint8_t dark_bit, const GhzLabel &target, const NoiseSpec &spec) {
    if (dark_bit > 1) {
        throw std::invalid_argument("dark bit must be 0 or 1");
    }
    return dark_bit == 0 ? baseline_state(target, spec) : degraded_state(target, spec);
}

double copy_fidelity(std::uint8_t dark_bit, std::size_t num_qubits, const NoiseSpec &spec) {
    double f0 = spec.baseline_fidelity();
    check_fidelity_range(f0);
    if (dark_bit == 0) {
        return f0;
    }
    double d = static_cast<double>(std::size_t{1} << num_qubits);
    switch (spec.kind) {
        case NoiseKind::kPerfect:
            return f0;
        case NoiseKind::kWhite:
            return 1.0 / d;
        case NoiseKind::kDephased:
            // diag(G) = (G+ + G-)/2 keeps half the fidelity; the white part
            // keeps its share of the t / ~t populations.
            return f0 / 2.0 + (1.0 - f0) / (2.0 * (d - 1.0));
        case NoiseKind::kDarkReplaced:
            return 0.5;
        case NoiseKind::kAdversarialMinus:
        case NoiseKind::kCustomMixture:
            return 0.0;
    }
    throw std::invalid_argument("unknown noise kind");
}

double min_feasible_fidelity(const NoiseSpec &spec) {
    switch (spec.kind) {
        case NoiseKind::kPerfect:
            return 1.0;
        case NoiseKind::kDephased:
        case NoiseKind::kDarkReplaced:
            return 0.5;
        case NoiseKind::kWhite:
        case NoiseKind::kAdversarialMinus:
        case NoiseKind::kCustomMixture:
            return 0.0;
    }
    throw std::invalid_argument("unknown noise kind");
}

DensityMatrix iid_state(double f, const GhzLabel &target, const NoiseSpec &spec, Rng *rng) {
    check_fidelity_range(f);
    double floor = min_feasible_fidelity(spec);
    if (f < floor) {
        throw std::invalid_argument("fidelity " + std::to_string(f) + " is not reachable with " +
                                    std::string(noise_kind_name(spec.kind)) + " noise (minimum " +
                                    std::to_string(floor) + ")");
    }
    Matrix g = target_projector(target);
    switch (spec.kind) {
        case NoiseKind::kPerfect:
            return DensityMatrix::from_matrix(g);
        case NoiseKind::kWhite:
            return white_mixture(target, f);
        case NoiseKind::kDephased: {
            // (1 - p) G + p diag(G) with p = 2 (1 - f); diag(G) = (G + G')/2.
            double p = 2.0 * (1.0 - f);
            Matrix diag = g.diagonal().asDiagonal();
            return DensityMatrix::from_matrix((1.0 - p) * g + p * diag);
        }
        case NoiseKind::kDarkReplaced: {
            double p = 2.0 * (1.0 - f);
            return DensityMatrix::from_matrix((1.0 - p) * g + p * DensityMatrix::basis_state(target.t()).matrix());
        }
        case NoiseKind::kAdversarialMinus:
            return DensityMatrix::from_matrix(f * g + (1.0 - f) * opposite_projector(target));
        case NoiseKind::kCustomMixture: {
            double white = spec.get("white", 1.0);
            double minus = spec.get("minus", 0.0);
            if (spec.get("randomize", 0.0) != 0.0) {
                if (rng == nullptr) {
                    throw std::invalid_argument("randomized custom-mixture needs a random stream");
                }
                white = rng->uniform();
                minus = 1.0 - white;
            }
            return DensityMatrix::from_matrix(f * g + (1.0 - f) * custom_component(target, white, minus));
        }
    }
    throw std::invalid_argument("unknown noise kind");
}

std::vector<DensityMatrix> iid_ensemble(std::size_t n, double f, const GhzLabel &target, const NoiseSpec &spec,
                                        std::uint64_t seed) {
    std::vector<DensityMatrix> out;
    out.reserve(n);
    bool per_copy = spec.kind == NoiseKind::kCustomMixture && spec.get("randomize", 0.0) != 0.0;
    if (!per_copy) {
        DensityMatrix rho = iid_state(f, target, spec);
        out.assign(n, rho);
        return out;
    }
    Rng root(seed, {0x696964ULL});
    for (std::size_t i = 0; i < n; ++i) {
        Rng copy_rng = root.split(i);
        out.push_back(iid_state(f, target, spec, &copy_rng));
    }
    return out;
}

Matrix noise_component(const DensityMatrix &rho, const GhzLabel &target) {
    double f = fidelity(rho, target);
    if (f >= 1.0 - 1e-12) {
        throw std::invalid_argument("noise component undefined for a fidelity-1 state");
    }
    return (rho.matrix() - f * target_projector(target)) / (1.0 - f);
}

}  // namespace ghzfid
