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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. All tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ghzfid/config.h"
#include "ghzfid/experiment.h"
#include "ghzfid/twirl.h"
#include "ghzfid/verify.h"

namespace {

using namespace ghzfid;

// Exactness.
constexpr double kBlochTolerance = 1e-12;
constexpr double kTwirlOffDiagonalTolerance = 1e-10;
constexpr double kTwirlFidelityTolerance = 1e-12;
constexpr double kJointTwirlTolerance = 1e-10;
constexpr double kUnbiasednessTolerance = 1e-12;
// Statistics.
constexpr double kVarianceRelativeTolerance = 0.05;
constexpr double kBoundUpperFactor = 1.05;
constexpr double kSigmas = 3.0;
constexpr double kMseDecadeLow = 1e-4;
constexpr double kMseDecadeHigh = 1e-3;
// Sizes.
constexpr std::size_t kTwirlStates = 1000;
constexpr std::size_t kUnbiasednessStates = 100;
constexpr std::size_t kVarianceTrials = 100000;
constexpr std::size_t kSweepTrials = 10000;
constexpr std::size_t kAdversarialTrials = 100000;
// Runtime budgets in seconds.
constexpr double kBudget1 = 10, kBudget2 = 30, kBudget3 = 60, kBudget45 = 300, kBudget6 = 1800;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

double mean_of(const std::vector<double> &xs) {
    double s = 0;
    for (double x : xs) {
        s += x;
    }
    return s / static_cast<double>(xs.size());
}

double variance_of(const std::vector<double> &xs) {
    double m = mean_of(xs);
    double s = 0;
    for (double x : xs) {
        s += (x - m) * (x - m);
    }
    return s / static_cast<double>(xs.size() - 1);
}

double stderr_of(const std::vector<double> &xs) { return std::sqrt(variance_of(xs) / static_cast<double>(xs.size())); }

Outcome with_budget(Outcome o, double seconds, double budget) {
    o.detail += " time=" + num(seconds) + "s budget=" + num(budget) + "s";
    o.pass = o.pass && seconds < budget;
    return o;
}

Outcome criterion1() {
    double dev = 0;
    bool ok = true;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (const OracleReport &r : {check_bloch(n), check_weighted_observable(n)}) {
            dev = std::max(dev, r.max_deviation);
            ok = ok && r.pass;
        }
    }
    return {ok && dev < kBlochTolerance, "L=2..5 max deviation=" + num(dev) + " tol=" + num(kBlochTolerance)};
}

Outcome criterion2() {
    double off = 0, dfid = 0;
    std::vector<GhzLabel> labels = GhzLabel::all(3);
    for (std::size_t i = 0; i < kTwirlStates; ++i) {
        DensityMatrix rho = random_density_matrix(3, 2026, i);
        DensityMatrix tw = full_twirl(rho);
        Matrix c = ghz_overlap_matrix(tw);
        for (Eigen::Index a = 0; a < c.rows(); ++a) {
            for (Eigen::Index b = 0; b < c.cols(); ++b) {
                if (a != b) {
                    off = std::max(off, std::abs(c(a, b)));
                }
            }
        }
        for (const GhzLabel &label : labels) {
            dfid = std::max(dfid, std::abs(fidelity(tw, label) - fidelity(rho, label)));
        }
    }
    OracleReport joint = check_twirl(2, 2, 20, 2026);
    bool ok = off < kTwirlOffDiagonalTolerance && dfid < kTwirlFidelityTolerance && joint.pass &&
              joint.max_deviation < kJointTwirlTolerance;
    return {ok, std::to_string(kTwirlStates) + " L=3 states off-diagonal=" + num(off) + " fidelity change=" +
                    num(dfid) + "; 2x(L=2) joint deviation=" + num(joint.max_deviation)};
}

Outcome criterion3() {
    OracleReport r = check_random_unbiasedness(3, kUnbiasednessStates, 2026);
    return {r.pass && r.max_deviation < kUnbiasednessTolerance,
            std::to_string(kUnbiasednessStates) + " L=3 states max deviation=" + num(r.max_deviation) +
                " tol=" + num(kUnbiasednessTolerance)};
}

ExperimentConfig iid_config(NoiseKind kind, std::size_t trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.num_qubits = 3;
    c.total_copies = 2000;
    c.sampled_copies = 1000;
    c.protocols = {ProtocolKind::kProposed};
    c.process = ProcessKind::kIid;
    c.noise = NoiseSpec{kind, {}};
    c.fidelity = 0.8;
    c.trials = trials;
    c.seed = seed;
    return c;
}

// Criteria 4 and 5 share one run.
std::pair<Outcome, Outcome> criteria4and5() {
    ExperimentConfig c = iid_config(NoiseKind::kWhite, kVarianceTrials, 404);
    std::vector<TrialResult> results = run_trials(c).front();
    std::vector<double> f_hat, excess;
    double bound = 0;
    for (const TrialResult &r : results) {
        f_hat.push_back(r.f_hat);
        excess.push_back(r.squared_error - r.sampling_error_term);
        bound += r.lower_bound;
    }
    bound /= static_cast<double>(results.size());
    const double expected_var = 1000 * (2.6 * 0.2) / (2 * 1e6);
    double var = variance_of(f_hat);
    double rel = std::abs(var / expected_var - 1.0);
    Outcome four{rel < kVarianceRelativeTolerance,
                 "Var[f_hat]=" + num(var) + " target=" + num(expected_var) + " relative deviation=" + num(rel) +
                     " tol=" + num(kVarianceRelativeTolerance)};

    const double expected_bound = 2000 * (2.6 * 0.2) / (2.0 * 1000 * 2000);
    double m = mean_of(excess), se = stderr_of(excess);
    bool ok = std::abs(bound - expected_bound) < 1e-15 && m >= bound - kSigmas * se && m <= bound * kBoundUpperFactor;
    Outcome five{ok, "MSE - sampling=" + num(m) + " +- " + num(se) + " bound=" + num(bound) + " window=[bound-3se, " +
                         num(kBoundUpperFactor) + "*bound]"};
    return {four, five};
}

// True unless b exceeds a by more than 3 combined standard errors.
bool not_above(const SweepRow &a_row, const SweepRow &b_row) {
    double se = std::hypot(a_row.mse_stderr, b_row.mse_stderr);
    return b_row.mse <= a_row.mse + kSigmas * se;
}

Outcome criterion6() {
    ExperimentConfig base = load_config(std::string(GHZFID_CONFIG_DIR) + "/dark_count.conf");
    base.trials = kSweepTrials;
    std::vector<double> p_values = {0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<double> delta_values = {1.5, 1.25, 1.0, 0.75, 0.5};  // correlation -0.5 .. 0.5
    ExperimentConfig at_delta = with_parameter(base, "delta", 0.5);
    ExperimentConfig at_p = with_parameter(base, "p_dark", 0.5);
    std::vector<SweepRow> p_rows = run_sweep(at_delta, "p_dark", p_values);
    std::vector<SweepRow> d_rows = run_sweep(at_p, "delta", delta_values);
    std::size_t np = base.protocols.size();

    bool a = true, b = true, c = true, d = true;
    double lo = 1, hi = 0;
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t i = 0; i + 1 < p_values.size(); ++i) {
            // Nondecreasing in P_d: the next point is not below this one.
            const SweepRow &cur = p_rows[i * np + p], &next = p_rows[(i + 1) * np + p];
            a = a && not_above(next, cur);
        }
        for (std::size_t i = 0; i + 1 < delta_values.size(); ++i) {
            // Correlation grows along the grid; MSE must not grow with it.
            b = b && not_above(d_rows[i * np + p], d_rows[(i + 1) * np + p]);
        }
    }
    for (const std::vector<SweepRow> *rows : {&p_rows, &d_rows}) {
        for (std::size_t i = 0; i < rows->size(); i += np) {
            // Rows at one grid point are in config order: proposed, guhne, dfe.
            for (std::size_t p = 0; p + 1 < np; ++p) {
                c = c && not_above((*rows)[i + p + 1], (*rows)[i + p]);
            }
        }
        for (const SweepRow &r : *rows) {
            lo = std::min(lo, r.mse);
            hi = std::max(hi, r.mse);
            d = d && r.mse >= kMseDecadeLow && r.mse <= kMseDecadeHigh;
        }
    }
    bool order_ok = base.protocols == std::vector<ProtocolKind>{ProtocolKind::kProposed, ProtocolKind::kGuhne,
                                                                ProtocolKind::kDfe};
    auto flag = [](bool x) { return std::string(x ? "ok" : "FAIL"); };
    return {a && b && c && d && order_ok,
            "(a) P_d monotone " + flag(a) + ", (b) correlation " + flag(b) + ", (c) ordering " + flag(c && order_ok) +
                ", (d) MSE in [" + num(lo) + ", " + num(hi) + "] " + flag(d)};
}

Outcome criterion7() {
    ExperimentConfig c = iid_config(NoiseKind::kAdversarialMinus, kAdversarialTrials, 707);
    std::vector<TrialResult> results = run_trials(c).front();
    SweepRow row = summarize_trials(c, ProtocolKind::kProposed, results);
    return {std::abs(row.bias) < kSigmas * row.bias_stderr,
            "adversarial-minus f=0.8 bias=" + num(row.bias) + " stderr=" + num(row.bias_stderr)};
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion8() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("ghzfid_acceptance_" + std::to_string(std::chrono::steady_clock::now()
                                                                                           .time_since_epoch()
                                                                                           .count()));
    fs::create_directories(dir);
    std::string config = std::string(GHZFID_CONFIG_DIR) + "/dark_count.conf";
    std::vector<std::string> outputs;
    for (const char *name : {"first.csv", "second.csv"}) {
        fs::path out = dir / name;
        std::string cmd = std::string("\"") + GHZFID_CLI_PATH + "\" sweep --config \"" + config +
                          "\" --param p_dark --values 0.2,0.6 --trials 500 --seed 8 --out \"" + out.string() +
                          "\" 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) {
            fs::remove_all(dir);
            return {false, "sweep command failed: " + cmd};
        }
        outputs.push_back(slurp(out));
    }
    fs::remove_all(dir);
    bool same = outputs[0] == outputs[1];
    bool header = outputs[0].rfind(std::string(kCsvHeader) + "\n", 0) == 0;
    return {same && header && outputs[0].size() > kCsvHeader.size() + 1,
            "two CLI sweeps " + std::string(same ? "byte-identical" : "DIFFER") + " (" +
                std::to_string(outputs[0].size()) + " bytes)"};
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    auto seconds_since = [](clock::time_point t) {
        return std::chrono::duration<double>(clock::now() - t).count();
    };
    bool all = true;
    auto report = [&all](int id, const std::string &what, const Outcome &o) {
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " " << what << ": " << o.detail
                  << std::endl;
    };
    auto run = [&](int id, const std::string &what, double budget, const std::function<Outcome()> &fn) {
        auto t = clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(id, what, budget > 0 ? with_budget(o, seconds_since(t), budget) : o);
    };

    run(1, "GHZ Pauli expansion and weighted observable", kBudget1, criterion1);
    run(2, "twirl contract", kBudget2, criterion2);
    run(3, "exact unbiasedness and error probability", kBudget3, criterion3);
    {
        auto t = clock::now();
        std::pair<Outcome, Outcome> both;
        try {
            both = criteria4and5();
        } catch (const std::exception &e) {
            both.first = both.second = {false, std::string("exception: ") + e.what()};
        }
        double s = seconds_since(t);
        report(4, "variance achievement", with_budget(both.first, s, kBudget45));
        report(5, "lower-bound attainment", with_budget(both.second, s, kBudget45));
    }
    run(6, "dark-count comparison sweeps", kBudget6, criterion6);
    run(7, "adversarial-noise robustness", 0, criterion7);
    run(8, "determinism of the sweep command", 0, criterion8);

    std::cout << (all ? "all acceptance criteria passed" : "acceptance criteria FAILED") << std::endl;
    return all ? 0 : 1;
}
