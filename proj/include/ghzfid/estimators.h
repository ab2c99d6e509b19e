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

// Common interface over the proposed protocol and the two baselines. Every
// estimator spends exactly one measurement round per copy it is given.

#ifndef GHZFID_ESTIMATORS_H
#define GHZFID_ESTIMATORS_H

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ghzfid/pauli.h"
#include "ghzfid/protocols.h"

namespace ghzfid {

enum class ProtocolKind { kProposed, kGuhne, kDfe };

/// "proposed", "guhne" or "dfe".
ProtocolKind parse_protocol(std::string_view name);
std::string_view protocol_name(ProtocolKind kind);

class Estimator {
   public:
    virtual ~Estimator() = default;

    virtual ProtocolKind kind() const = 0;
    const GhzLabel &target() const { return target_; }

    /// One round per copy; returns the round and error counts and the
    /// fidelity estimate.
    virtual EstimateSummary estimate(std::span<const DensityMatrix *const> copies, Rng &rng) const = 0;
    EstimateSummary estimate(std::span<const DensityMatrix> copies, Rng &rng) const;

    /// Exact mean of one round's score on rho (equals the fidelity for an
    /// unbiased estimator).
    virtual double round_mean(const DensityMatrix &rho) const = 0;

    /// Exact variance of one round's score on rho. The estimate averages M
    /// scores, so its conditional variance is sum_n round_variance / M^2.
    virtual double round_variance(const DensityMatrix &rho) const = 0;

   protected:
    explicit Estimator(GhzLabel target) : target_(std::move(target)) {}

   private:
    GhzLabel target_;
};

/// Wraps run_protocol. Round score: 1 - 1.5 r.
class ProposedEstimator final : public Estimator {
   public:
    explicit ProposedEstimator(GhzLabel target);
    ProtocolKind kind() const override { return ProtocolKind::kProposed; }
    EstimateSummary estimate(std::span<const DensityMatrix *const> copies, Rng &rng) const override;
    using Estimator::estimate;
    double round_mean(const DensityMatrix &rho) const override;
    double round_variance(const DensityMatrix &rho) const override;
};

/// Population plus coherence decomposition
///
///   G = (|t><t| + |~t><~t|) / 2 + (s / 2L) sum_{k<L} (-1)^k (x)_l M(theta_{k,l})
///
/// with M(theta) = cos(theta) X + sin(theta) Y and theta_{k,l} =
/// (-1)^{t_l} k pi / L. A round is a z-basis population measurement with
/// probability 1/2 (score 1 if the outcome is t or ~t, else 0) or, with
/// probability 1/(2L) each, the coherence setting k (score s (-1)^k c).
/// The constructor checks the decomposition against ghz_density for L <= 8
/// and throws std::logic_error on mismatch.
class GuhneEstimator final : public Estimator {
   public:
    explicit GuhneEstimator(GhzLabel target);
    ProtocolKind kind() const override { return ProtocolKind::kGuhne; }
    EstimateSummary estimate(std::span<const DensityMatrix *const> copies, Rng &rng) const override;
    using Estimator::estimate;
    double round_mean(const DensityMatrix &rho) const override;
    double round_variance(const DensityMatrix &rho) const override;

    /// tr(rho (x)_l M(theta_{k,l})).
    double coherence_expectation(const DensityMatrix &rho, std::size_t k) const;

    /// Dense operator of coherence setting k.
    Matrix coherence_operator(std::size_t k) const;

    /// Dense sum of the decomposition; equals ghz_density(target).
    Matrix decomposition_sum() const;

   private:
    std::vector<double> angles(std::size_t k) const;
};

/// Direct fidelity estimation with uniform sampling over the target's
/// stabilizer group. A round measures one random stabilizer locally and
/// scores its +-1 product outcome.
class DfeEstimator final : public Estimator {
   public:
    explicit DfeEstimator(GhzLabel target);
    ProtocolKind kind() const override { return ProtocolKind::kDfe; }
    EstimateSummary estimate(std::span<const DensityMatrix *const> copies, Rng &rng) const override;
    using Estimator::estimate;
    double round_mean(const DensityMatrix &rho) const override;
    double round_variance(const DensityMatrix &rho) const override;

    /// The 2^L signed stabilizers, built as products of the generators
    /// s X...X and Z_1 Z_l (-1)^{t_l}.
    const std::vector<PauliString> &stabilizers() const { return stabilizers_; }

   private:
    std::vector<PauliString> stabilizers_;
};

std::unique_ptr<Estimator> make_estimator(ProtocolKind kind, const GhzLabel &target);

}  // namespace ghzfid

#endif  // GHZFID_ESTIMATORS_H
