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

#include "ghzfid/protocols.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "ghzfid/pauli.h"

namespace ghzfid {

RoundSettings draw_settings(std::size_t num_qubits, Rng &rng) {
    if (num_qubits < 2) {
        throw std::invalid_argument("the protocol needs at least 2 qubits");
    }
    RoundSettings s;
    s.k = BitString(num_qubits);
    // A_n = 0 with probability 1/3.
    s.xy = rng.below(3) != 0;
    if (s.xy) {
        std::uint64_t half = std::uint64_t{1} << (num_qubits - 1);
        // Free choice of the last L-1 bits, first bit fixes the parity.
        auto low = static_cast<std::uint32_t>(rng.below(half));
        std::uint32_t v = low | (static_cast<std::uint32_t>(std::popcount(low) & 1) << (num_qubits - 1));
        s.k = BitString::from_index(v, num_qubits);
    }
    return s;
}

bool z_outcome_is_error(const BitString &outcome, const GhzLabel &target) {
    return outcome != target.t() && outcome != target.t().complement();
}

bool xy_outcome_is_error(int c, const BitString &k, const GhzLabel &target) {
    if (k.parity()) {
        throw std::invalid_argument("xy setting needs an even-parity string, got " + k.str());
    }
    if (c != 1 && c != -1) {
        throw std::invalid_argument("xy outcome must be +1 or -1");
    }
    // e = (-1)^{|k|/2 + k.t} is the outcome the target itself produces for
    // sign +; the minus target produces -e.
    bool odd = (((k.popcount() / 2) & 1U) != 0) != k.dot(target.t());
    int e = odd ? -1 : 1;
    int expected = target.sign() == Sign::kPlus ? e : -e;
    return c != expected;
}

bool recompute_error(const RoundRecord &record, const GhzLabel &target) {
    if (record.settings.xy) {
        return xy_outcome_is_error(std::get<int>(record.raw_outcome), record.settings.k, target);
    }
    return z_outcome_is_error(std::get<BitString>(record.raw_outcome), target);
}

namespace {

void check_qubits(const DensityMatrix &rho, const GhzLabel &target) {
    if (rho.num_qubits() != target.num_qubits()) {
        throw std::invalid_argument("state has " + std::to_string(rho.num_qubits()) + " qubits, target has " +
                                    std::to_string(target.num_qubits()));
    }
}

std::uint32_t sample_from_cdf(const std::vector<double> &cdf, Rng &rng) {
    double u = rng.uniform() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        --it;
    }
    return static_cast<std::uint32_t>(it - cdf.begin());
}

std::vector<double> diagonal_cdf(const DensityMatrix &rho) {
    std::vector<double> cdf(rho.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        acc += std::max(0.0, rho(i, i).real());
        cdf[i] = acc;
    }
    return cdf;
}

// Outcome distributions of one copy for every setting of the protocol.
struct PreparedCopy {
    std::vector<double> z_cdf;
    // Indexed by the even string's low L-1 bits.
    std::vector<double> xy_expectation;
};

PreparedCopy prepare(const DensityMatrix &rho) {
    PreparedCopy p;
    p.z_cdf = diagonal_cdf(rho);
    std::size_t n = rho.num_qubits();
    std::size_t half = std::size_t{1} << (n - 1);
    p.xy_expectation.resize(half);
    for (const BitString &k : even_parity_strings(n)) {
        std::size_t slot = k.index() & (half - 1);
        p.xy_expectation[slot] = pauli_expectation(rho, PauliString::sigma_xy(k));
    }
    return p;
}

RoundRecord sample_round(const PreparedCopy &p, const RoundSettings &settings, const GhzLabel &target, Rng &rng) {
    RoundRecord rec;
    rec.settings = settings;
    std::size_t n = target.num_qubits();
    if (!settings.xy) {
        BitString outcome = BitString::from_index(sample_from_cdf(p.z_cdf, rng), n);
        rec.error_bit = z_outcome_is_error(outcome, target) ? 1 : 0;
        rec.raw_outcome = outcome;
    } else {
        std::size_t half = std::size_t{1} << (n - 1);
        double expectation = p.xy_expectation[settings.k.index() & (half - 1)];
        int c = rng.bernoulli(0.5 * (1.0 + expectation)) ? 1 : -1;
        rec.error_bit = xy_outcome_is_error(c, settings.k, target) ? 1 : 0;
        rec.raw_outcome = c;
    }
    return rec;
}

}  // namespace

RoundRecord z_round(const DensityMatrix &rho, const GhzLabel &target, Rng &rng) {
    check_qubits(rho, target);
    PreparedCopy p;
    p.z_cdf = diagonal_cdf(rho);
    RoundSettings s;
    s.k = BitString(target.num_qubits());
    return sample_round(p, s, target, rng);
}

RoundRecord xy_round(const DensityMatrix &rho, const GhzLabel &target, const BitString &k, Rng &rng) {
    check_qubits(rho, target);
    if (k.size() != target.num_qubits() || k.parity()) {
        throw std::invalid_argument("xy round needs an even-parity string of length " +
                                    std::to_string(target.num_qubits()));
    }
    RoundRecord rec;
    rec.settings = RoundSettings{true, k};
    double expectation = pauli_expectation(rho, PauliString::sigma_xy(k));
    int c = rng.bernoulli(0.5 * (1.0 + expectation)) ? 1 : -1;
    rec.raw_outcome = c;
    rec.error_bit = xy_outcome_is_error(c, k, target) ? 1 : 0;
    return rec;
}

EstimateSummary summarize(std::size_t rounds, std::size_t errors) {
    if (rounds == 0) {
        throw std::invalid_argument("cannot summarize zero rounds");
    }
    if (errors > rounds) {
        throw std::invalid_argument("more errors than rounds");
    }
    EstimateSummary s;
    s.rounds = rounds;
    s.errors = errors;
    s.qber = static_cast<double>(errors) / static_cast<double>(rounds);
    s.f_hat = 1.0 - 1.5 * s.qber;
    return s;
}

EstimateSummary run_protocol(std::span<const DensityMatrix *const> copies, const GhzLabel &target, Rng &rng,
                             std::vector<RoundRecord> *log) {
    if (copies.empty()) {
        throw std::invalid_argument("run_protocol needs at least one copy");
    }
    std::unordered_map<const DensityMatrix *, PreparedCopy> prepared;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < copies.size(); ++i) {
        const DensityMatrix *rho = copies[i];
        auto it = prepared.find(rho);
        if (it == prepared.end()) {
            check_qubits(*rho, target);
            it = prepared.emplace(rho, prepare(*rho)).first;
        }
        RoundSettings settings = draw_settings(target.num_qubits(), rng);
        RoundRecord rec = sample_round(it->second, settings, target, rng);
        rec.copy_index = i;
        errors += rec.error_bit;
        if (log != nullptr) {
            log->push_back(std::move(rec));
        }
    }
    return summarize(copies.size(), errors);
}

EstimateSummary run_protocol(std::span<const DensityMatrix> copies, const GhzLabel &target, Rng &rng,
                             std::vector<RoundRecord> *log) {
    std::vector<const DensityMatrix *> ptrs;
    ptrs.reserve(copies.size());
    for (const DensityMatrix &c : copies) {
        ptrs.push_back(&c);
    }
    return run_protocol(std::span<const DensityMatrix *const>(ptrs), target, rng, log);
}

double round_error_probability(const DensityMatrix &rho, const GhzLabel &target) {
    check_qubits(rho, target);
    std::size_t lo = target.t().index();
    std::size_t hi = target.t().complement().index();
    double z_error = 1.0 - rho(lo, lo).real() - rho(hi, hi).real();
    std::vector<BitString> ks = even_parity_strings(target.num_qubits());
    double xy_error = 0.0;
    for (const BitString &k : ks) {
        double ex = pauli_expectation(rho, PauliString::sigma_xy(k));
        // Pr[c = +1] = (1 + ex) / 2.
        double p_plus = 0.5 * (1.0 + ex);
        xy_error += xy_outcome_is_error(+1, k, target) ? p_plus : 1.0 - p_plus;
    }
    xy_error /= static_cast<double>(ks.size());
    return z_error / 3.0 + 2.0 * xy_error / 3.0;
}

double per_round_error_probability(double f) { return 2.0 * (1.0 - f) / 3.0; }

double per_round_error_variance(double f) { return (2.0 * f + 1.0) * (2.0 - 2.0 * f) / 9.0; }

double theoretical_conditional_variance(std::span<const double> fidelities, std::size_t m) {
    if (m == 0 || m != fidelities.size()) {
        throw std::invalid_argument("conditional variance needs M = number of sampled fidelities > 0");
    }
    double acc = 0.0;
    for (double f : fidelities) {
        acc += (2.0 * f + 1.0) * (1.0 - f);
    }
    double md = static_cast<double>(m);
    return acc / (2.0 * md * md);
}

double error_lower_bound(std::span<const double> fidelities, std::size_t m) {
    std::size_t n = fidelities.size();
    if (m == 0 || m > n) {
        throw std::invalid_argument("lower bound needs 0 < M <= N, got M=" + std::to_string(m) +
                                    " N=" + std::to_string(n));
    }
    double acc = 0.0;
    for (double f : fidelities) {
        acc += (2.0 * f + 1.0) * (1.0 - f);
    }
    return acc / (2.0 * static_cast<double>(m) * static_cast<double>(n));
}

}  // namespace ghzfid
