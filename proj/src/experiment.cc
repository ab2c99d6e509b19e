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

#include "ghzfid/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ghzfid {

namespace {

// Stream tags under (seed, trial).
constexpr std::uint64_t kEnsembleStream = 0x656e73;
constexpr std::uint64_t kSubsetStream = 0x737562;
constexpr std::uint64_t kRoundStream = 0x726e64;

double mean(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Standard error of the mean of xs (0 for fewer than two samples).
double stderr_of_mean(std::span<const double> xs) {
    std::size_t n = xs.size();
    if (n < 2) {
        return 0.0;
    }
    double mu = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mu) * (x - mu);
    }
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

std::vector<std::unique_ptr<Estimator>> make_estimators(const ExperimentConfig &config) {
    std::vector<std::unique_ptr<Estimator>> out;
    for (ProtocolKind kind : config.protocols) {
        out.push_back(make_estimator(kind, config.resolved_target()));
    }
    return out;
}

// Runs every estimator on the sampled copies of one trial.
std::vector<TrialResult> trial_with(const ExperimentConfig &config,
                                    std::span<const std::unique_ptr<Estimator>> estimators,
                                    std::uint64_t trial_index) {
    Ensemble ensemble = build_ensemble(config, trial_index);
    std::size_t n = config.total_copies;
    std::size_t m = config.sampled_copies;
    Rng subset_rng(config.seed, {kSubsetStream, trial_index});
    std::vector<std::size_t> subset = sample_subset(n, m, subset_rng);

    std::vector<bool> sampled(n, false);
    std::vector<const DensityMatrix *> copies;
    copies.reserve(m);
    double sum_sampled = 0.0;
    for (std::size_t i : subset) {
        sampled[i] = true;
        copies.push_back(&ensemble.state(i));
        sum_sampled += ensemble.fidelity(i);
    }
    double sum_unsampled = 0.0;
    double bound_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = ensemble.fidelity(i);
        if (!sampled[i]) {
            sum_unsampled += f;
        }
        bound_sum += (2.0 * f + 1.0) * (1.0 - f);
    }
    double fbar_sampled = sum_sampled / static_cast<double>(m);
    double fbar_unsampled = sum_unsampled / static_cast<double>(n - m);
    double lower_bound = bound_sum / (2.0 * static_cast<double>(m) * static_cast<double>(n));

    // Number of sampled copies in each pool state, for the analytic variance.
    std::vector<std::size_t> pool_count(ensemble.pool.size(), 0);
    for (std::size_t i : subset) {
        ++pool_count[ensemble.copy_state[i]];
    }

    std::vector<TrialResult> results;
    for (std::size_t p = 0; p < estimators.size(); ++p) {
        const Estimator &est = *estimators[p];
        Rng round_rng(config.seed, {kRoundStream, static_cast<std::uint64_t>(est.kind()), trial_index});
        EstimateSummary summary = est.estimate(std::span<const DensityMatrix *const>(copies), round_rng);
        if (summary.rounds != m) {
            throw std::logic_error("estimator spent " + std::to_string(summary.rounds) + " rounds on " +
                                   std::to_string(m) + " copies");
        }
        double variance = 0.0;
        for (std::size_t s = 0; s < ensemble.pool.size(); ++s) {
            if (pool_count[s] > 0) {
                variance += static_cast<double>(pool_count[s]) * est.round_variance(ensemble.pool[s]);
            }
        }
        TrialResult r;
        r.protocol = est.kind();
        r.rounds = summary.rounds;
        r.f_hat = summary.f_hat;
        r.fbar_sampled = fbar_sampled;
        r.fbar_unsampled = fbar_unsampled;
        double measurement = r.f_hat - fbar_sampled;
        double sampling = fbar_sampled - fbar_unsampled;
        r.squared_error = (r.f_hat - fbar_unsampled) * (r.f_hat - fbar_unsampled);
        r.measurement_error_term = measurement * measurement;
        r.sampling_error_term = sampling * sampling;
        r.cross_term = 2.0 * measurement * sampling;
        r.analytic_variance = variance / (static_cast<double>(m) * static_cast<double>(m));
        r.lower_bound = lower_bound;
        results.push_back(r);
    }
    return results;
}

}  // namespace

ProcessKind parse_process(std::string_view name) {
    if (name == "iid") {
        return ProcessKind::kIid;
    }
    if (name == "dark_count") {
        return ProcessKind::kDarkCount;
    }
    throw std::invalid_argument("unknown process '" + std::string(name) + "' (expected iid or dark_count)");
}

std::string_view process_name(ProcessKind kind) {
    return kind == ProcessKind::kIid ? "iid" : "dark_count";
}

GhzLabel ExperimentConfig::resolved_target() const {
    if (target.has_value()) {
        return *target;
    }
    return GhzLabel(Sign::kPlus, BitString(num_qubits));
}

void ExperimentConfig::validate() const {
    if (num_qubits < 2 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("L must be in [2, " + std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
    if (sampled_copies < 1 || sampled_copies >= total_copies) {
        throw std::invalid_argument("need 1 <= M < N, got M=" + std::to_string(sampled_copies) +
                                    " N=" + std::to_string(total_copies));
    }
    if (target.has_value() && target->num_qubits() != num_qubits) {
        throw std::invalid_argument("target " + target->str() + " does not have L=" + std::to_string(num_qubits) +
                                    " qubits");
    }
    if (protocols.empty()) {
        throw std::invalid_argument("no protocol selected");
    }
    if (trials < 1) {
        throw std::invalid_argument("trials must be positive");
    }
    if (process == ProcessKind::kIid) {
        if (!(fidelity >= min_feasible_fidelity(noise) && fidelity <= 1.0)) {
            throw std::invalid_argument("fidelity " + std::to_string(fidelity) + " is not reachable with " +
                                        std::string(noise_kind_name(noise.kind)) + " noise");
        }
    } else {
        DarkCountModel{p_dark, delta, seed}.validate();
    }
}

std::vector<std::size_t> sample_subset(std::size_t n, std::size_t m, Rng &rng) {
    if (m > n) {
        throw std::invalid_argument("cannot sample " + std::to_string(m) + " of " + std::to_string(n) + " copies");
    }
    // Partial Fisher-Yates: the first m slots end up a uniform m-subset.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(m);
    std::sort(perm.begin(), perm.end());
    return perm;
}

Ensemble build_ensemble(const ExperimentConfig &config, std::uint64_t trial_index) {
    GhzLabel target = config.resolved_target();
    std::size_t n = config.total_copies;
    Rng rng(config.seed, {kEnsembleStream, trial_index});
    Ensemble e;
    if (config.process == ProcessKind::kDarkCount) {
        DarkCountModel model{config.p_dark, config.delta, config.seed};
        std::vector<std::uint8_t> chain = dark_count_chain(model, n, rng);
        e.pool.push_back(copy_state(0, target, config.noise));
        e.pool.push_back(copy_state(1, target, config.noise));
        e.copy_state.assign(chain.begin(), chain.end());
    } else if (config.noise.kind == NoiseKind::kCustomMixture && config.noise.get("randomize", 0.0) != 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            Rng copy_rng = rng.split(i);
            e.pool.push_back(iid_state(config.fidelity, target, config.noise, &copy_rng));
        }
        e.copy_state.resize(n);
        std::iota(e.copy_state.begin(), e.copy_state.end(), 0);
    } else {
        e.pool.push_back(iid_state(config.fidelity, target, config.noise));
        e.copy_state.assign(n, 0);
    }
    for (const DensityMatrix &rho : e.pool) {
        e.pool_fidelity.push_back(fidelity(rho, target));
    }
    return e;
}

TrialResult run_trial(const ExperimentConfig &config, std::uint64_t trial_index) {
    config.validate();
    ExperimentConfig single = config;
    single.protocols = {config.protocols.front()};
    return run_trial_all(single, trial_index).front();
}

std::vector<TrialResult> run_trial_all(const ExperimentConfig &config, std::uint64_t trial_index) {
    config.validate();
    auto estimators = make_estimators(config);
    return trial_with(config, estimators, trial_index);
}

std::vector<std::vector<TrialResult>> run_trials(const ExperimentConfig &config) {
    config.validate();
    auto estimators = make_estimators(config);
    std::size_t trials = config.trials;
    std::vector<std::vector<TrialResult>> per_trial(trials);

    std::size_t workers = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min(workers, trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        try {
            for (std::size_t i = next++; i < trials; i = next++) {
                per_trial[i] = trial_with(config, estimators, i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = trials;
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (std::thread &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<std::vector<TrialResult>> out(config.protocols.size());
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p].reserve(trials);
        for (std::size_t i = 0; i < trials; ++i) {
            out[p].push_back(per_trial[i][p]);
        }
    }
    return out;
}

SweepRow summarize_trials(const ExperimentConfig &config, ProtocolKind protocol, std::span<const TrialResult> trials) {
    if (trials.empty()) {
        throw std::invalid_argument("cannot summarize zero trials");
    }
    std::vector<double> sq, err, var, bound, meas, samp, cross;
    for (const TrialResult &t : trials) {
        sq.push_back(t.squared_error);
        err.push_back(t.f_hat - t.fbar_unsampled);
        var.push_back(t.analytic_variance);
        bound.push_back(t.lower_bound);
        meas.push_back(t.measurement_error_term);
        samp.push_back(t.sampling_error_term);
        cross.push_back(t.cross_term);
    }
    SweepRow row;
    row.protocol = protocol;
    row.num_qubits = config.num_qubits;
    row.total_copies = config.total_copies;
    row.sampled_copies = config.sampled_copies;
    row.p_dark = config.p_dark;
    row.delta = config.delta;
    row.correlation = 1.0 - config.delta;
    row.trials = trials.size();
    row.mse = mean(sq);
    row.mse_stderr = stderr_of_mean(sq);
    row.bias = mean(err);
    row.bias_stderr = stderr_of_mean(err);
    row.analytic_variance = mean(var);
    row.lower_bound = mean(bound);
    row.measurement_error = mean(meas);
    row.sampling_error = mean(samp);
    row.cross_term = mean(cross);
    row.cross_term_stderr = stderr_of_mean(cross);
    return row;
}

ExperimentConfig with_parameter(const ExperimentConfig &config, std::string_view parameter, double value) {
    ExperimentConfig c = config;
    if (parameter == "p_dark") {
        c.p_dark = value;
    } else if (parameter == "delta") {
        c.delta = value;
    } else if (parameter == "f") {
        c.fidelity = value;
    } else if (parameter == "M") {
        if (!(value >= 1.0) || value != std::floor(value)) {
            throw std::invalid_argument("M must be a positive integer, got " + format_double(value));
        }
        c.sampled_copies = static_cast<std::size_t>(value);
    } else {
        throw std::invalid_argument("unknown sweep parameter '" + std::string(parameter) +
                                    "' (expected p_dark, delta, f or M)");
    }
    c.validate();
    return c;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &config, std::string_view parameter,
                                std::span<const double> values) {
    std::vector<SweepRow> rows;
    for (double value : values) {
        ExperimentConfig c = with_parameter(config, parameter, value);
        auto results = run_trials(c);
        for (std::size_t p = 0; p < c.protocols.size(); ++p) {
            SweepRow row = summarize_trials(c, c.protocols[p], results[p]);
            row.parameter = std::string(parameter);
            row.value = value;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw std::runtime_error("cannot format number");
    }
    return std::string(buf, end);
}

std::string csv_text(std::span<const SweepRow> rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const SweepRow &r : rows) {
        out += std::string(protocol_name(r.protocol));
        for (const std::string &field :
             {std::to_string(r.num_qubits), std::to_string(r.total_copies), std::to_string(r.sampled_copies),
              format_double(r.p_dark), format_double(r.delta), format_double(r.correlation), std::to_string(r.trials),
              format_double(r.mse), format_double(r.mse_stderr), format_double(r.bias), format_double(r.bias_stderr),
              format_double(r.analytic_variance), format_double(r.lower_bound)}) {
            out += ',';
            out += field;
        }
        out += '\n';
    }
    return out;
}

namespace {

// Value plotted on the x axis: correlation 1 - delta for delta sweeps.
double x_value(const SweepRow &r) { return r.parameter == "delta" ? r.correlation : r.value; }

std::string x_label(const std::string &parameter) {
    if (parameter == "delta") {
        return "correlation 1 - delta";
    }
    if (parameter == "p_dark") {
        return "dark count probability P_d";
    }
    if (parameter == "f") {
        return "copy fidelity f";
    }
    if (parameter == "M") {
        return "sampled copies M";
    }
    return parameter;
}

std::string fixed(double x) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << x;
    return s.str();
}

std::string tick(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

}  // namespace

std::string svg_text(std::span<const SweepRow> rows) {
    constexpr double kWidth = 640, kHeight = 420;
    constexpr double kLeft = 80, kRight = 150, kTop = 30, kBottom = 60;
    constexpr const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::map<ProtocolKind, std::vector<const SweepRow *>> series;
    std::vector<ProtocolKind> order;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const SweepRow &r : rows) {
        if (series.find(r.protocol) == series.end()) {
            order.push_back(r.protocol);
        }
        series[r.protocol].push_back(&r);
        double x = x_value(r);
        double hi = r.mse + r.mse_stderr;
        if (first) {
            x_min = x_max = x;
            y_max = hi;
            first = false;
        }
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_max = std::max(y_max, hi);
    }
    if (x_max == x_min) {
        x_max = x_min + 1.0;
    }
    if (y_max <= y_min) {
        y_max = y_min + 1.0;
    }
    double plot_w = kWidth - kLeft - kRight;
    double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<g id=\"axes\" stroke=\"black\">\n";
    s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\"/>\n";
    s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\"/>\n";
    s << "</g>\n";
    for (int i = 0; i <= 4; ++i) {
        double x = x_min + (x_max - x_min) * i / 4.0;
        double y = y_min + (y_max - y_min) * i / 4.0;
        s << "<text x=\"" << fixed(px(x)) << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">"
          << tick(x) << "</text>\n";
        s << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py(y) + 4) << "\" text-anchor=\"end\">" << tick(y)
          << "</text>\n";
    }
    std::string parameter = rows.empty() ? std::string("parameter") : rows.front().parameter;
    s << "<text id=\"x-label\" x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << x_label(parameter) << "</text>\n";
    s << "<text id=\"y-label\" x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">mean squared error</text>\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
        const char *color = kColors[i % std::size(kColors)];
        std::string name(protocol_name(order[i]));
        s << "<g class=\"series\" id=\"series-" << name << "\" stroke=\"" << color << "\" fill=\"" << color
          << "\">\n";
        s << "<polyline fill=\"none\" stroke-width=\"2\" points=\"";
        for (const SweepRow *r : series[order[i]]) {
            s << fixed(px(x_value(*r))) << ',' << fixed(py(r->mse)) << ' ';
        }
        s << "\"/>\n";
        for (const SweepRow *r : series[order[i]]) {
            double x = px(x_value(*r));
            s << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(py(r->mse - r->mse_stderr)) << "\" x2=\""
              << fixed(x) << "\" y2=\"" << fixed(py(r->mse + r->mse_stderr)) << "\"/>\n";
            s << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(py(r->mse)) << "\" r=\"3\"/>\n";
        }
        double ly = kTop + 20.0 * static_cast<double>(i);
        s << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 40
          << "\" y2=\"" << ly << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << kWidth - kRight + 46 << "\" y=\"" << ly + 4 << "\" stroke=\"none\" fill=\"black\">"
          << name << "</text>\n";
        s << "</g>\n";
    }
    s << "</svg>\n";
    return s.str();
}

namespace {

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace

void emit_csv(std::span<const SweepRow> rows, const std::string &path) { write_file(path, csv_text(rows)); }

void emit_svg(std::span<const SweepRow> rows, const std::string &path) { write_file(path, svg_text(rows)); }

}  // namespace ghzfid
