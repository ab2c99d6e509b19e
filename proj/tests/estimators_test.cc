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

#include <cmath>
#include <set>
#include <stdexcept>

#include "gtest/gtest.h"
#include "ghzfid/noise.h"
#include "ghzfid/verify.h"

using namespace ghzfid;

namespace {

constexpr ProtocolKind kAllKinds[] = {ProtocolKind::kProposed, ProtocolKind::kGuhne, ProtocolKind::kDfe};

struct Moments {
    double mean;
    double variance;
    double sigma_mean;
};

Moments repeat_estimate(const Estimator &est, const std::vector<DensityMatrix> &copies, std::size_t reps,
                        std::uint64_t seed) {
    Rng rng(seed);
    double sum = 0, sum_sq = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        double f = est.estimate(copies, rng).f_hat;
        sum += f;
        sum_sq += f * f;
    }
    double n = static_cast<double>(reps);
    double mean = sum / n;
    double var = (sum_sq - n * mean * mean) / (n - 1);
    return {mean, var, std::sqrt(var / n)};
}

}  // namespace

TEST(estimators, names_round_trip) {
    for (ProtocolKind kind : kAllKinds) {
        EXPECT_EQ(parse_protocol(protocol_name(kind)), kind);
        EXPECT_EQ(make_estimator(kind, GhzLabel::from_str("+00"))->kind(), kind);
    }
    EXPECT_THROW(parse_protocol("stabilizer"), std::invalid_argument);
}

TEST(estimators, guhne_decomposition_reproduces_projector) {
    for (std::size_t n = 2; n <= 5; ++n) {
        for (const GhzLabel &label : GhzLabel::all(n)) {
            GuhneEstimator est(label);
            EXPECT_LT(max_abs(est.decomposition_sum() - ghz_density(label).matrix()), 1e-12) << label.str();
        }
    }
}

TEST(estimators, guhne_coherence_expectation_matches_dense_operator) {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t i = 0; i < 10; ++i) {
            DensityMatrix rho = random_density_matrix(n, 40, n * 100 + i);
            for (const GhzLabel &label : GhzLabel::all(n)) {
                GuhneEstimator est(label);
                for (std::size_t k = 0; k < n; ++k) {
                    double dense = real_trace_product(rho.matrix(), est.coherence_operator(k));
                    EXPECT_NEAR(est.coherence_expectation(rho, k), dense, 1e-12);
                }
            }
        }
    }
}

TEST(estimators, dfe_stabilizers_average_to_projector) {
    for (std::size_t n = 2; n <= 5; ++n) {
        for (const GhzLabel &label : GhzLabel::all(n)) {
            DfeEstimator est(label);
            const auto &group = est.stabilizers();
            ASSERT_EQ(group.size(), std::size_t{1} << n);
            std::set<std::string> distinct;
            Matrix sum = Matrix::Zero(group[0].to_matrix().rows(), group[0].to_matrix().cols());
            DensityMatrix g = ghz_density(label);
            for (const PauliString &s : group) {
                distinct.insert(s.str());
                sum += s.to_matrix();
                EXPECT_NEAR(pauli_expectation(g, s), 1.0, 1e-12) << label.str() << ' ' << s.str();
            }
            EXPECT_EQ(distinct.size(), group.size());
            sum /= static_cast<double>(group.size());
            EXPECT_LT(max_abs(sum - g.matrix()), 1e-12) << label.str();
        }
    }
}

TEST(estimators, round_means_equal_fidelity) {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t i = 0; i < 10; ++i) {
            DensityMatrix rho = random_density_matrix(n, 41, n * 100 + i);
            for (const GhzLabel &label : GhzLabel::all(n)) {
                double f = fidelity(rho, label);
                for (ProtocolKind kind : kAllKinds) {
                    EXPECT_NEAR(make_estimator(kind, label)->round_mean(rho), f, 1e-12);
                }
            }
        }
    }
}

TEST(estimators, variance_ordering_holds_for_every_state) {
    // Proposed <= Guhne <= DFE per round, on arbitrary states.
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t i = 0; i < 30; ++i) {
            DensityMatrix rho = random_density_matrix(n, 42, n * 100 + i);
            GhzLabel label = GhzLabel::all(n)[i % (std::size_t{1} << n)];
            double vp = ProposedEstimator(label).round_variance(rho);
            double vg = GuhneEstimator(label).round_variance(rho);
            double vd = DfeEstimator(label).round_variance(rho);
            EXPECT_LE(vp, vg + 1e-12);
            EXPECT_LE(vg, vd + 1e-12);
        }
    }
}

TEST(estimators, variance_examples_on_white_noise) {
    GhzLabel target = GhzLabel::from_str("+000");
    DensityMatrix rho = white_mixture(target, 0.8);
    // Score 1 - 1.5 r: (9/4)(2f + 1)(2 - 2f)/9 = (2f + 1)(1 - f)/2.
    EXPECT_NEAR(ProposedEstimator(target).round_variance(rho), 2.6 * 0.2 / 2.0, 1e-12);
    // Noise orthogonal to the target puts 1/7 of its weight on {t, ~t}.
    double population = 0.8 + 0.2 / 7.0;
    EXPECT_NEAR(GuhneEstimator(target).round_variance(rho), population / 2 + 0.5 - 0.64, 1e-12);
    EXPECT_NEAR(DfeEstimator(target).round_variance(rho), 1 - 0.64, 1e-12);
}

TEST(estimators, pure_target_is_exact_for_proposed_and_dfe) {
    GhzLabel target = GhzLabel::from_str("-0101");
    std::vector<DensityMatrix> copies(30, ghz_density(target));
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        EXPECT_EQ(ProposedEstimator(target).estimate(copies, rng).f_hat, 1.0);
        EXPECT_EQ(DfeEstimator(target).estimate(copies, rng).f_hat, 1.0);
    }
    // Guhne's coherence scores fluctuate even on the target, but stay unbiased.
    Moments g = repeat_estimate(GuhneEstimator(target), copies, 20000, 4);
    EXPECT_NEAR(g.mean, 1.0, 4 * g.sigma_mean);
}

TEST(estimators, proposed_matches_run_protocol) {
    GhzLabel target = GhzLabel::from_str("+010");
    std::vector<DensityMatrix> copies;
    for (std::uint64_t i = 0; i < 40; ++i) {
        copies.push_back(random_density_matrix(3, 43, i));
    }
    Rng a(9), b(9);
    EstimateSummary x = ProposedEstimator(target).estimate(copies, a);
    EstimateSummary y = run_protocol(copies, target, b);
    EXPECT_EQ(x.errors, y.errors);
    EXPECT_EQ(x.f_hat, y.f_hat);
}

TEST(estimators, monte_carlo_unbiased_and_variance_matches) {
    GhzLabel target = GhzLabel::from_str("+010");
    std::vector<DensityMatrix> copies = iid_ensemble(8, 0.75, target, NoiseSpec{NoiseKind::kDephased, {}}, 5);
    std::size_t reps = 100000;
    for (ProtocolKind kind : kAllKinds) {
        auto est = make_estimator(kind, target);
        double expected_var = 0;
        for (const DensityMatrix &c : copies) {
            expected_var += est->round_variance(c);
        }
        expected_var /= 64.0;
        Moments m = repeat_estimate(*est, copies, reps, 50 + static_cast<std::uint64_t>(kind));
        EXPECT_NEAR(m.mean, 0.75, 4 * m.sigma_mean) << protocol_name(kind);
        // Sample variance has relative error ~ sqrt(2 / reps) < 0.5%.
        EXPECT_NEAR(m.variance / expected_var, 1.0, 0.03) << protocol_name(kind);
    }
}

TEST(estimators, unbiased_on_heterogeneous_random_copies) {
    GhzLabel target = GhzLabel::from_str("-011");
    std::vector<DensityMatrix> copies;
    double fbar = 0;
    for (std::uint64_t i = 0; i < 6; ++i) {
        copies.push_back(random_density_matrix(3, 44, i));
        fbar += fidelity(copies.back(), target) / 6.0;
    }
    for (ProtocolKind kind : kAllKinds) {
        Moments m = repeat_estimate(*make_estimator(kind, target), copies, 100000, 60 + static_cast<std::uint64_t>(kind));
        EXPECT_NEAR(m.mean, fbar, 4 * m.sigma_mean) << protocol_name(kind);
    }
}

TEST(estimators, rejects_mismatched_copies) {
    Rng rng(1);
    std::vector<DensityMatrix> wrong(2, DensityMatrix::maximally_mixed(2));
    std::vector<DensityMatrix> none;
    for (ProtocolKind kind : kAllKinds) {
        auto est = make_estimator(kind, GhzLabel::from_str("+000"));
        EXPECT_THROW(est->estimate(wrong, rng), std::invalid_argument);
        EXPECT_THROW(est->estimate(none, rng), std::invalid_argument);
    }
}
