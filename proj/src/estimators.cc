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

#include "ghzfid/estimators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ghzfid {

namespace {

constexpr std::size_t kSelfCheckMaxQubits = 8;
constexpr double kSelfCheckTolerance = 1e-10;

void check_qubits(const DensityMatrix &rho, const GhzLabel &target) {
    if (rho.num_qubits() != target.num_qubits()) {
        throw std::invalid_argument("state has " + std::to_string(rho.num_qubits()) + " qubits, target has " +
                                    std::to_string(target.num_qubits()));
    }
}

void check_nonempty(std::span<const DensityMatrix *const> copies) {
    if (copies.empty()) {
        throw std::invalid_argument("an estimate needs at least one copy");
    }
}

// Probability mass of |t> and |~t>.
double population(const DensityMatrix &rho, const GhzLabel &target) {
    std::size_t lo = target.t().index();
    std::size_t hi = target.t().complement().index();
    return rho(lo, lo).real() + rho(hi, hi).real();
}

EstimateSummary score_summary(std::size_t rounds, std::size_t errors, double score_sum) {
    EstimateSummary s;
    s.rounds = rounds;
    s.errors = errors;
    s.qber = static_cast<double>(errors) / static_cast<double>(rounds);
    s.f_hat = score_sum / static_cast<double>(rounds);
    return s;
}

// Looks up (or computes once) a per-state value keyed by address.
template <typename T, typename F>
const T &cached(std::unordered_map<const DensityMatrix *, T> &cache, const DensityMatrix *rho, F &&compute) {
    auto it = cache.find(rho);
    if (it == cache.end()) {
        it = cache.emplace(rho, compute(*rho)).first;
    }
    return it->second;
}

}  // namespace

ProtocolKind parse_protocol(std::string_view name) {
    if (name == "proposed") {
        return ProtocolKind::kProposed;
    }
    if (name == "guhne") {
        return ProtocolKind::kGuhne;
    }
    if (name == "dfe") {
        return ProtocolKind::kDfe;
    }
    throw std::invalid_argument("unknown protocol '" + std::string(name) + "' (expected proposed, guhne or dfe)");
}

std::string_view protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::kProposed:
            return "proposed";
        case ProtocolKind::kGuhne:
            return "guhne";
        case ProtocolKind::kDfe:
            return "dfe";
    }
    throw std::invalid_argument("bad protocol kind");
}

EstimateSummary Estimator::estimate(std::span<const DensityMatrix> copies, Rng &rng) const {
    std::vector<const DensityMatrix *> ptrs;
    ptrs.reserve(copies.size());
    for (const DensityMatrix &c : copies) {
        ptrs.push_back(&c);
    }
    return estimate(std::span<const DensityMatrix *const>(ptrs), rng);
}

ProposedEstimator::ProposedEstimator(GhzLabel target) : Estimator(std::move(target)) {
    if (this->target().num_qubits() < 2) {
        throw std::invalid_argument("the protocol needs at least 2 qubits");
    }
}

EstimateSummary ProposedEstimator::estimate(std::span<const DensityMatrix *const> copies, Rng &rng) const {
    return run_protocol(copies, target(), rng);
}

double ProposedEstimator::round_mean(const DensityMatrix &rho) const {
    return 1.0 - 1.5 * round_error_probability(rho, target());
}

double ProposedEstimator::round_variance(const DensityMatrix &rho) const {
    // Score 1 - 1.5 r with r Bernoulli(p).
    double p = round_error_probability(rho, target());
    return 2.25 * p * (1.0 - p);
}

GuhneEstimator::GuhneEstimator(GhzLabel target) : Estimator(std::move(target)) {
    if (this->target().num_qubits() < 2) {
        throw std::invalid_argument("the protocol needs at least 2 qubits");
    }
    if (this->target().num_qubits() <= kSelfCheckMaxQubits) {
        double dev = max_abs(decomposition_sum() - ghz_density(this->target()).matrix());
        if (dev > kSelfCheckTolerance) {
            throw std::logic_error("coherence decomposition does not reproduce the target (deviation " +
                                   std::to_string(dev) + ")");
        }
    }
}

std::vector<double> GuhneEstimator::angles(std::size_t k) const {
    std::size_t n = target().num_qubits();
    if (k >= n) {
        throw std::out_of_range("coherence setting " + std::to_string(k) + " out of range");
    }
    double base = static_cast<double>(k) * std::numbers::pi / static_cast<double>(n);
    std::vector<double> theta(n);
    for (std::size_t l = 0; l < n; ++l) {
        theta[l] = target().t()[l] ? -base : base;
    }
    return theta;
}

double GuhneEstimator::coherence_expectation(const DensityMatrix &rho, std::size_t k) const {
    check_qubits(rho, target());
    std::vector<double> theta = angles(k);
    std::size_t n = theta.size();
    std::size_t d = rho.dim();
    std::size_t all = d - 1;
    // O = (x)_l M(theta_l) only links |a> with |~a>; <a|O|~a> carries
    // exp(-i theta_l) where a_l = 0 and exp(+i theta_l) where a_l = 1.
    Complex acc = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        double phase = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            bool bit = ((a >> (n - 1 - l)) & 1U) != 0;
            phase += bit ? theta[l] : -theta[l];
        }
        acc += rho(a ^ all, a) * std::polar(1.0, phase);
    }
    if (std::abs(acc.imag()) > tolerance::kImaginary) {
        throw std::domain_error("coherence expectation has an imaginary residue");
    }
    return acc.real();
}

Matrix GuhneEstimator::coherence_operator(std::size_t k) const {
    std::vector<double> theta = angles(k);
    Matrix x = pauli_matrix(Pauli::kX);
    Matrix y = pauli_matrix(Pauli::kY);
    Matrix op = std::cos(theta[0]) * x + std::sin(theta[0]) * y;
    for (std::size_t l = 1; l < theta.size(); ++l) {
        op = kron(op, std::cos(theta[l]) * x + std::sin(theta[l]) * y);
    }
    return op;
}

Matrix GuhneEstimator::decomposition_sum() const {
    std::size_t n = target().num_qubits();
    std::size_t d = std::size_t{1} << n;
    Matrix acc = Matrix::Zero(d, d);
    acc(target().t().index(), target().t().index()) = 0.5;
    acc(target().t().complement().index(), target().t().complement().index()) = 0.5;
    double s = sign_value(target().sign());
    for (std::size_t k = 0; k < n; ++k) {
        double w = s * ((k & 1) ? -1.0 : 1.0) / (2.0 * static_cast<double>(n));
        acc += w * coherence_operator(k);
    }
    return acc;
}

EstimateSummary GuhneEstimator::estimate(std::span<const DensityMatrix *const> copies, Rng &rng) const {
    check_nonempty(copies);
    struct Prepared {
        double population;
        std::vector<double> coherence;
    };
    std::unordered_map<const DensityMatrix *, Prepared> cache;
    std::size_t n = target().num_qubits();
    double s = sign_value(target().sign());
    std::size_t errors = 0;
    double score_sum = 0.0;
    for (const DensityMatrix *rho : copies) {
        const Prepared &p = cached(cache, rho, [&](const DensityMatrix &r) {
            check_qubits(r, target());
            Prepared out{population(r, target()), {}};
            for (std::size_t k = 0; k < n; ++k) {
                out.coherence.push_back(coherence_expectation(r, k));
            }
            return out;
        });
        if (rng.bernoulli(0.5)) {
            // z outcome lands on t or ~t with probability p.population.
            bool hit = rng.bernoulli(std::clamp(p.population, 0.0, 1.0));
            score_sum += hit ? 1.0 : 0.0;
            errors += hit ? 0 : 1;
        } else {
            auto k = static_cast<std::size_t>(rng.below(n));
            int c = rng.bernoulli(std::clamp(0.5 * (1.0 + p.coherence[k]), 0.0, 1.0)) ? 1 : -1;
            double score = s * ((k & 1) ? -1.0 : 1.0) * c;
            score_sum += score;
            errors += score < 0 ? 1 : 0;
        }
    }
    return score_summary(copies.size(), errors, score_sum);
}

double GuhneEstimator::round_mean(const DensityMatrix &rho) const {
    std::size_t n = target().num_qubits();
    double s = sign_value(target().sign());
    double coherence = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        coherence += ((k & 1) ? -1.0 : 1.0) * coherence_expectation(rho, k);
    }
    return 0.5 * population(rho, target()) + s * coherence / (2.0 * static_cast<double>(n));
}

double GuhneEstimator::round_variance(const DensityMatrix &rho) const {
    // Population scores are 0/1 (second moment P), coherence scores +-1.
    double mean = round_mean(rho);
    return 0.5 * population(rho, target()) + 0.5 - mean * mean;
}

DfeEstimator::DfeEstimator(GhzLabel target) : Estimator(std::move(target)) {
    std::size_t n = this->target().num_qubits();
    if (n < 2) {
        throw std::invalid_argument("the protocol needs at least 2 qubits");
    }
    std::vector<PauliString> generators;
    generators.push_back(PauliString(std::vector<Pauli>(n, Pauli::kX), sign_value(this->target().sign())));
    for (std::size_t l = 1; l < n; ++l) {
        std::vector<Pauli> letters(n, Pauli::kI);
        letters[0] = Pauli::kZ;
        letters[l] = Pauli::kZ;
        generators.push_back(PauliString(std::move(letters), this->target().t()[l] ? -1.0 : 1.0));
    }
    std::size_t count = std::size_t{1} << n;
    stabilizers_.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        PauliString acc(std::vector<Pauli>(n, Pauli::kI));
        for (std::size_t g = 0; g < n; ++g) {
            if ((mask >> g) & 1U) {
                acc = acc * generators[g];
            }
        }
        stabilizers_.push_back(std::move(acc));
    }
}

EstimateSummary DfeEstimator::estimate(std::span<const DensityMatrix *const> copies, Rng &rng) const {
    check_nonempty(copies);
    std::unordered_map<const DensityMatrix *, std::vector<double>> cache;
    std::size_t errors = 0;
    double score_sum = 0.0;
    for (const DensityMatrix *rho : copies) {
        const std::vector<double> &ex = cached(cache, rho, [&](const DensityMatrix &r) {
            check_qubits(r, target());
            std::vector<double> out;
            out.reserve(stabilizers_.size());
            for (const PauliString &p : stabilizers_) {
                out.push_back(pauli_expectation(r, p));
            }
            return out;
        });
        auto j = static_cast<std::size_t>(rng.below(stabilizers_.size()));
        int c = rng.bernoulli(std::clamp(0.5 * (1.0 + ex[j]), 0.0, 1.0)) ? 1 : -1;
        score_sum += c;
        errors += c < 0 ? 1 : 0;
    }
    return score_summary(copies.size(), errors, score_sum);
}

double DfeEstimator::round_mean(const DensityMatrix &rho) const {
    check_qubits(rho, target());
    double acc = 0.0;
    for (const PauliString &p : stabilizers_) {
        acc += pauli_expectation(rho, p);
    }
    return acc / static_cast<double>(stabilizers_.size());
}

double DfeEstimator::round_variance(const DensityMatrix &rho) const {
    double mean = round_mean(rho);
    return 1.0 - mean * mean;
}

std::unique_ptr<Estimator> make_estimator(ProtocolKind kind, const GhzLabel &target) {
    switch (kind) {
        case ProtocolKind::kProposed:
            return std::make_unique<ProposedEstimator>(target);
        case ProtocolKind::kGuhne:
            return std::make_unique<GuhneEstimator>(target);
        case ProtocolKind::kDfe:
            return std::make_unique<DfeEstimator>(target);
    }
    throw std::invalid_argument("bad protocol kind");
}

}  // namespace ghzfid
