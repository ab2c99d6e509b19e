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

#include <stdexcept>

#include "gtest/gtest.h"
#include "ghzfid/noise.h"
#include "ghzfid/pauli.h"

using namespace ghzfid;

namespace {

void expect_pass(const OracleReport &r) {
    EXPECT_TRUE(r.pass) << format_report(r);
    EXPECT_LE(r.max_deviation, r.tolerance) << r.name;
}

}  // namespace

TEST(verify, subset_counts) { expect_pass(check_subset_counts(20)); }

TEST(verify, bloch_and_weighted_observable) {
    for (std::size_t n = 2; n <= 5; ++n) {
        expect_pass(check_bloch(n));
        expect_pass(check_weighted_observable(n));
    }
}

TEST(verify, twirl_single_and_joint) {
    expect_pass(check_twirl(2, 1));
    expect_pass(check_twirl(3, 1));
    expect_pass(check_twirl(2, 2));
}

TEST(verify, exact_unbiasedness_examples) {
    GhzLabel target = GhzLabel::from_str("+00");
    expect_pass(check_exact_unbiasedness(2, ghz_density(target), target));
    expect_pass(check_exact_unbiasedness(2, DensityMatrix::maximally_mixed(2), target));
    GhzLabel t3 = GhzLabel::from_str("-011");
    expect_pass(check_exact_unbiasedness(3, white_mixture(t3, 0.6), t3));
    for (std::size_t n = 2; n <= 4; ++n) {
        expect_pass(check_random_unbiasedness(n, 20));
    }
}

TEST(verify, variance_lower_bound_and_baselines) {
    std::vector<double> fs = {0.0, 0.3, 0.5, 0.8, 1.0};
    expect_pass(check_variance_formula(3, fs));
    expect_pass(check_lower_bound(10, 4));
    expect_pass(check_lower_bound(12, 12));
    expect_pass(check_baselines(3));
}

TEST(verify, two_qubit_weighted_observable_example) {
    // XX - YY has expectation +2 on G^+_00, so (XX - YY) / 2 reads +1.
    DensityMatrix g = ghz_density(GhzLabel::from_str("+00"));
    double xx = pauli_expectation(g, PauliString::from_str("XX"));
    double yy = pauli_expectation(g, PauliString::from_str("YY"));
    EXPECT_NEAR((xx - yy) / 2, 1.0, 1e-12);
    DensityMatrix m = ghz_density(GhzLabel::from_str("-00"));
    EXPECT_NEAR((pauli_expectation(m, PauliString::from_str("XX")) - pauli_expectation(m, PauliString::from_str("YY"))) / 2,
                -1.0, 1e-12);
    DensityMatrix o = ghz_density(GhzLabel::from_str("+01"));
    EXPECT_NEAR((pauli_expectation(o, PauliString::from_str("XX")) - pauli_expectation(o, PauliString::from_str("YY"))) / 2,
                0.0, 1e-12);
}

TEST(verify, random_density_matrices_are_valid_and_reproducible) {
    for (std::size_t n = 1; n <= 4; ++n) {
        DensityMatrix a = random_density_matrix(n, 3, 5);
        DensityMatrix b = random_density_matrix(n, 3, 5);
        EXPECT_EQ(max_abs(a.matrix() - b.matrix()), 0.0);
        EXPECT_GT(max_abs(a.matrix() - random_density_matrix(n, 3, 6).matrix()), 0.0);
    }
}

TEST(verify, argument_limits) {
    EXPECT_THROW(check_bloch(6), std::invalid_argument);
    EXPECT_THROW(check_exact_unbiasedness(5, DensityMatrix::maximally_mixed(5), GhzLabel::from_str("+00000")),
                 std::invalid_argument);
    EXPECT_THROW(check_lower_bound(17, 3), std::invalid_argument);
}

TEST(verify, full_suite_and_report_format) {
    std::vector<OracleReport> reports = run_all();
    ASSERT_FALSE(reports.empty());
    for (const OracleReport &r : reports) {
        expect_pass(r);
        EXPECT_EQ(format_report(r).rfind("PASS " + r.name, 0), 0U);
    }
    OracleReport bad{"demo", 1.0, 0.5, false, 0.0};
    EXPECT_EQ(format_report(bad).rfind("FAIL demo", 0), 0U);
}
