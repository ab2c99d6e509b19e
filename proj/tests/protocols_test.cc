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

#include <cmath>
#include <map>
#include <stdexcept>

#include "gtest/gtest.h"
#include "ghzfid/noise.h"
#include "ghzfid/pauli.h"
#include "ghzfid/verify.h"

using namespace ghzfid;

namespace {

// Mean and standard error of f_hat over independent runs on fixed copies.
struct McResult {
    double mean;
    double sigma;
};

McResult repeat_protocol(const std::vector<DensityMatrix> &copies, const GhzLabel &target, std::size_t trials,
                         std::uint64_t seed) {
    Rng rng(seed);
    double sum = 0, sum_sq = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        double f = run_protocol(copies, target, rng).f_hat;
        sum += f;
        sum_sq += f * f;
    }
    double n = static_cast<double>(trials);
    double mean = sum / n;
    double var = (sum_sq - n * mean * mean) / (n - 1);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST(protocols, settings_distribution) {
    Rng rng(1);
    std::size_t n = 1000000;
    std::size_t z = 0;
    std::map<std::string, std::size_t> ks;
    for (std::size_t i = 0; i < n; ++i) {
        RoundSettings s = draw_settings(3, rng);
        if (!s.xy) {
            ++z;
        } else {
            ASSERT_FALSE(s.k.parity());
            ++ks[s.k.str()];
        }
    }
    double p = static_cast<double>(z) / static_cast<double>(n);
    EXPECT_NEAR(p, 1.0 / 3.0, 4 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / static_cast<double>(n)));
    ASSERT_EQ(ks.size(), 4U);
    double xy = static_cast<double>(n - z);
    for (const char *k : {"000", "011", "101", "110"}) {
        double frac = static_cast<double>(ks[k]) / xy;
        EXPECT_NEAR(frac, 0.25, 4 * std::sqrt(0.25 * 0.75 / xy)) << k;
    }
}

TEST(protocols, two_qubit_settings) {
    Rng rng(2);
    std::map<std::string, std::size_t> ks;
    for (int i = 0; i < 100000; ++i) {
        RoundSettings s = draw_settings(2, rng);
        if (s.xy) {
            ++ks[s.k.str()];
        }
    }
    ASSERT_EQ(ks.size(), 2U);
    EXPECT_GT(ks["00"], 0U);
    EXPECT_GT(ks["11"], 0U);
    EXPECT_THROW(draw_settings(1, rng), std::invalid_argument);
}

TEST(protocols, z_round_examples) {
    Rng rng(3);
    GhzLabel target = GhzLabel::from_str("+000");
    DensityMatrix g = ghz_density(target);
    for (int i = 0; i < 1000; ++i) {
        RoundRecord r = z_round(g, target, rng);
        std::string out = std::get<BitString>(r.raw_outcome).str();
        ASSERT_TRUE(out == "000" || out == "111");
        ASSERT_EQ(r.error_bit, 0);
    }
    DensityMatrix flipped = DensityMatrix::basis_state(BitString::from_str("010"));
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(z_round(flipped, target, rng).error_bit, 1);
    }
    DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
    std::size_t n = 400000, correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        correct += z_round(mixed, target, rng).error_bit == 0 ? 1 : 0;
    }
    EXPECT_NEAR(static_cast<double>(correct) / n, 0.25, 4 * std::sqrt(0.25 * 0.75 / n));
}

TEST(protocols, xy_round_examples) {
    Rng rng(4);
    GhzLabel target = GhzLabel::from_str("+000");
    DensityMatrix g = ghz_density(target);
    for (int i = 0; i < 100; ++i) {
        RoundRecord r = xy_round(g, target, BitString::from_str("000"), rng);
        ASSERT_EQ(std::get<int>(r.raw_outcome), 1);
        ASSERT_EQ(r.error_bit, 0);
    }
    // The opposite-sign state errs deterministically on every even k.
    DensityMatrix minus = ghz_density(GhzLabel::from_str("-000"));
    for (const BitString &k : even_parity_strings(3)) {
        for (int i = 0; i < 50; ++i) {
            ASSERT_EQ(xy_round(minus, target, k, rng).error_bit, 1);
        }
    }
    EXPECT_THROW(xy_round(g, target, BitString::from_str("100"), rng), std::invalid_argument);
}

TEST(protocols, other_label_gives_fair_coin) {
    Rng rng(5);
    GhzLabel target = GhzLabel::from_str("+000");
    DensityMatrix other = ghz_density(GhzLabel::from_str("+011"));
    std::vector<BitString> ks = even_parity_strings(3);
    std::size_t n = 200000, errors = 0;
    for (std::size_t i = 0; i < n; ++i) {
        errors += xy_round(other, target, ks[rng.below(ks.size())], rng).error_bit;
    }
    EXPECT_NEAR(static_cast<double>(errors) / n, 0.5, 4 * std::sqrt(0.25 / n));
}

TEST(protocols, error_rule_for_both_signs) {
    // Every GHZ label is deterministic on every setting: exact error
    // probability is 0 on the target, 1 on the opposite sign.
    for (std::size_t n = 2; n <= 4; ++n) {
        for (const GhzLabel &target : GhzLabel::all(n)) {
            GhzLabel flipped(opposite(target.sign()), target.t());
            EXPECT_NEAR(round_error_probability(ghz_density(target), target), 0.0, 1e-12) << target.str();
            // The opposite sign errs on every xy round and on no z round.
            EXPECT_NEAR(round_error_probability(ghz_density(flipped), target), 2.0 / 3.0, 1e-12) << target.str();
        }
    }
}

TEST(protocols, recorded_error_bits_are_recomputable) {
    Rng rng(6);
    GhzLabel target = GhzLabel::from_str("-0110");
    std::vector<DensityMatrix> copies;
    for (std::uint64_t i = 0; i < 20; ++i) {
        copies.push_back(random_density_matrix(4, 8, i));
    }
    std::vector<RoundRecord> log;
    EstimateSummary s = run_protocol(copies, target, rng, &log);
    ASSERT_EQ(log.size(), copies.size());
    std::size_t errors = 0;
    for (std::size_t i = 0; i < log.size(); ++i) {
        EXPECT_EQ(log[i].copy_index, i);
        EXPECT_EQ(recompute_error(log[i], target), log[i].error_bit == 1);
        errors += log[i].error_bit;
    }
    EXPECT_EQ(s.errors, errors);
}

TEST(protocols, summary_arithmetic) {
    EstimateSummary s = summarize(100, 10);
    EXPECT_DOUBLE_EQ(s.qber, 0.1);
    EXPECT_DOUBLE_EQ(s.f_hat, 0.85);
    EXPECT_DOUBLE_EQ(summarize(4, 4).f_hat, -0.5);
    EXPECT_DOUBLE_EQ(summarize(4, 0).f_hat, 1.0);
    EXPECT_THROW(summarize(0, 0), std::invalid_argument);
    EXPECT_THROW(summarize(3, 4), std::invalid_argument);
}

TEST(protocols, pure_copies_never_err) {
    Rng rng(7);
    GhzLabel target = GhzLabel::from_str("-01");
    std::vector<DensityMatrix> copies(50, ghz_density(target));
    for (int i = 0; i < 100; ++i) {
        EstimateSummary s = run_protocol(copies, target, rng);
        ASSERT_EQ(s.errors, 0U);
        ASSERT_EQ(s.f_hat, 1.0);
    }
    std::vector<DensityMatrix> none;
    EXPECT_THROW(run_protocol(none, target, rng), std::invalid_argument);
    std::vector<DensityMatrix> wrong(1, DensityMatrix::maximally_mixed(3));
    EXPECT_THROW(run_protocol(wrong, target, rng), std::invalid_argument);
}

TEST(protocols, unbiased_on_iid_copies) {
    GhzLabel target = GhzLabel::from_str("+000");
    std::vector<DensityMatrix> copies = iid_ensemble(10, 0.7, target, NoiseSpec{NoiseKind::kWhite, {}}, 0);
    McResult r = repeat_protocol(copies, target, 100000, 11);
    EXPECT_NEAR(r.mean, 0.7, 4 * r.sigma);
}

TEST(protocols, unbiased_on_adversarial_mixed_ensemble) {
    // Heterogeneous copies, including worst-case noise.
    GhzLabel target = GhzLabel::from_str("+010");
    std::vector<DensityMatrix> copies;
    double fbar = 0;
    for (double f : {0.2, 0.5, 0.9, 1.0}) {
        copies.push_back(iid_state(f, target, NoiseSpec{NoiseKind::kAdversarialMinus, {}}));
        fbar += f / 4;
    }
    copies.push_back(random_density_matrix(3, 1, 0));
    fbar = fbar * 4.0 / 5.0 + fidelity(copies.back(), target) / 5.0;
    McResult r = repeat_protocol(copies, target, 100000, 12);
    EXPECT_NEAR(r.mean, fbar, 4 * r.sigma);
}

TEST(protocols, adversarial_error_rate) {
    // f = 0.7 adversarial copies: Pr[r = 1] = 0.2, checked over 10^6 rounds.
    GhzLabel target = GhzLabel::from_str("+000");
    DensityMatrix rho = iid_state(0.7, target, NoiseSpec{NoiseKind::kAdversarialMinus, {}});
    std::vector<const DensityMatrix *> copies(1000000, &rho);
    Rng rng(13);
    EstimateSummary s = run_protocol(std::span<const DensityMatrix *const>(copies), target, rng);
    EXPECT_NEAR(s.qber, 0.2, 4 * std::sqrt(0.2 * 0.8 / 1e6));
}

TEST(protocols, exact_error_probability_matches_formula) {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t i = 0; i < 20; ++i) {
            DensityMatrix rho = random_density_matrix(n, 30 + n, i);
            for (const GhzLabel &target : GhzLabel::all(n)) {
                double f = fidelity(rho, target);
                EXPECT_NEAR(round_error_probability(rho, target), per_round_error_probability(f), 1e-12);
            }
        }
    }
}

TEST(protocols, closed_form_examples) {
    EXPECT_EQ(per_round_error_probability(1.0), 0.0);
    EXPECT_DOUBLE_EQ(per_round_error_probability(0.0), 2.0 / 3.0);
    EXPECT_NEAR(per_round_error_probability(0.7), 0.2, 1e-15);
    EXPECT_EQ(per_round_error_variance(1.0), 0.0);
    EXPECT_DOUBLE_EQ(per_round_error_variance(0.5), 2.0 / 9.0);
    EXPECT_DOUBLE_EQ(per_round_error_variance(0.0), 2.0 / 9.0);
    EXPECT_DOUBLE_EQ(per_round_error_variance(0.25), 0.25);

    std::vector<double> ones(7, 1.0);
    EXPECT_EQ(theoretical_conditional_variance(ones, 7), 0.0);
    std::vector<double> half = {0.5};
    EXPECT_DOUBLE_EQ(theoretical_conditional_variance(half, 1), 0.5);
    EXPECT_THROW(theoretical_conditional_variance(half, 2), std::invalid_argument);

    EXPECT_EQ(error_lower_bound(ones, 3), 0.0);
    std::vector<double> nines(2000, 0.9);
    EXPECT_NEAR(error_lower_bound(nines, 1000), 1.4e-4, 1e-15);
    EXPECT_THROW(error_lower_bound(nines, 2001), std::invalid_argument);
    EXPECT_THROW(error_lower_bound(nines, 0), std::invalid_argument);
}

TEST(protocols, variance_formula_consistency) {
    // (9 / 4M^2) sum Var[R_n] equals the closed-form conditional variance.
    std::vector<double> fs = {0.1, 0.35, 0.8, 0.99, 1.0};
    double m = static_cast<double>(fs.size());
    double sum = 0;
    for (double f : fs) {
        sum += per_round_error_variance(f);
    }
    EXPECT_NEAR(theoretical_conditional_variance(fs, fs.size()), 9.0 / (4.0 * m * m) * sum, 1e-15);
    // With M = N and equal fidelities the bound coincides with the variance.
    std::vector<double> eq(6, 0.6);
    EXPECT_NEAR(error_lower_bound(eq, 6), theoretical_conditional_variance(eq, 6), 1e-15);
}
