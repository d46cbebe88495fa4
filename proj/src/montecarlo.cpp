#include "mwdep/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mwdep/detail/format.hpp"
#include "mwdep/ustat.hpp"

namespace mwdep {

double PostTransform::operator()(double v) const {
    switch (kind) {
    case Kind::identity:
        return v;
    case Kind::power:
        return std::pow(v, exponent);
    }
    return v;
}

PostTransform PostTransform::parse(const std::string& text) {
    if (text == "identity" || text == "id") {
        return identity();
    }
    const std::string prefix = "power:";
    if (text.rfind(prefix, 0) == 0) {
        const double e = std::stod(text.substr(prefix.size()));
        if (!(e > 0.0)) {
            throw std::invalid_argument("power transform requires a positive exponent");
        }
        return power(e);
    }
    throw std::invalid_argument("unknown transform: '" + text + "'");
}

std::string PostTransform::describe() const {
    if (kind == Kind::identity) return "identity";
    return "power:" + detail::format_number(exponent);
}

void Scenario::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (sizes.empty()) {
        throw std::invalid_argument("scenario needs at least one (n, m) size pair");
    }
    if (!(center > 0.0 && center < 1.0)) {
        throw std::invalid_argument("center must lie in (0,1)");
    }
    const bool one_sample = std::holds_alternative<OneSampleDesign>(design);
    for (const auto& [n, m] : sizes) {
        if (n < 1) throw std::invalid_argument("sample size n must be >= 1");
        if (!one_sample && m < 1) throw std::invalid_argument("sample size m must be >= 1");
        if (bw.a_lag >= n) throw std::invalid_argument("a_lag must be < n for every size");
        if (!one_sample && bw.b_lag >= m)
            throw std::invalid_argument("b_lag must be < m for every size");
    }
}

namespace {

struct TrialOutcome {
    double t_stat = 0.0;
    bool defined = false;
};

// One replication: simulate with the trial's sub-streams and run the test.
TrialOutcome run_trial(const Scenario& s, std::uint64_t master_seed, std::size_t n,
                       std::size_t m, std::size_t trial) {
    const std::uint64_t stream_x = 2 * static_cast<std::uint64_t>(trial);
    const std::uint64_t stream_y = stream_x + 1;

    TestReport report;
    if (const auto* d = std::get_if<TwoSampleDesign>(&s.design)) {
        ProcessSpec xs = d->x_spec;
        ProcessSpec ys = d->y_spec;
        xs.seed = master_seed;
        ys.seed = master_seed;
        const TimeSeries x = generate(xs, n, stream_x);
        const TimeSeries y = generate(ys, m, stream_y);
        report = two_sample_test(x, y, s.bw, s.center);
    } else if (const auto* d1 = std::get_if<OneSampleDesign>(&s.design)) {
        ProcessSpec xs = d1->x_spec;
        xs.seed = master_seed;
        const TimeSeries x = generate(xs, n, stream_x);
        report = one_sample_test(x, d1->dist, s.bw.a_lag, s.bw.alternative, s.center);
    } else {
        const auto& da = std::get<AdjacentDesign>(s.design);
        ProcessSpec xs = da.x_spec;
        xs.seed = master_seed;
        const TimeSeries path = generate(xs, n + m, stream_x);
        std::vector<double> values = path.values();
        for (std::size_t j = n; j < values.size(); ++j) {
            values[j] = da.transform(values[j]);
        }
        report = adjacent_test(TimeSeries(std::move(values)), n, s.bw, s.center);
    }

    TrialOutcome out;
    out.defined = report.defined();
    if (out.defined) out.t_stat = *report.t_stat;
    return out;
}

// Fill `outcomes` in parallel; results are keyed by trial index, so the
// reduction below is identical for any worker count.
template <typename Work>
void parallel_trials(std::size_t trials, unsigned threads, Work&& work) {
    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, trials));

    if (workers <= 1) {
        for (std::size_t t = 0; t < trials; ++t) work(t);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                work(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

MonteCarloReport run_scenario(const Scenario& scenario, std::uint64_t master_seed,
                              unsigned threads) {
    scenario.validate();

    MonteCarloReport report;
    report.master_seed = master_seed;
    report.rng_algorithm = PhiloxStream::algorithm_name();
    report.scenario_name = scenario.name;

    for (const auto& [n, m] : scenario.sizes) {
        std::vector<TrialOutcome> outcomes(scenario.trials);
        parallel_trials(scenario.trials, threads, [&, n = n, m = m](std::size_t t) {
            outcomes[t] = run_trial(scenario, master_seed, n, m, t);
        });

        ScenarioRow row;
        row.n = n;
        row.m = m;
        row.trials = scenario.trials;

        std::size_t defined = 0;
        double sum = 0.0;
        std::size_t hits_1645 = 0;
        std::size_t hits_196 = 0;
        for (const auto& o : outcomes) {
            if (!o.defined) continue;
            ++defined;
            sum += o.t_stat;
            if (o.t_stat > 1.645) ++hits_1645;
            if (std::fabs(o.t_stat) > 1.96) ++hits_196;
        }
        row.undefined_count = scenario.trials - defined;
        if (defined > 0) {
            row.rate_1645 = static_cast<double>(hits_1645) / static_cast<double>(defined);
            row.rate_196 = static_cast<double>(hits_196) / static_cast<double>(defined);
        }
        if (defined >= 2) {
            const double mean = sum / static_cast<double>(defined);
            double ss = 0.0;
            for (const auto& o : outcomes) {
                if (!o.defined) continue;
                const double d = o.t_stat - mean;
                ss += d * d;
            }
            row.est_variance = ss / static_cast<double>(defined - 1);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

double estimate_pi(const ProcessSpec& x_spec, const ProcessSpec& y_spec, std::size_t n,
                   std::size_t m, std::uint64_t seed) {
    ProcessSpec xs = x_spec;
    ProcessSpec ys = y_spec;
    xs.seed = seed;
    ys.seed = seed;
    const TimeSeries x = generate(xs, n, 0);
    const TimeSeries y = generate(ys, m, 1);
    return compute_u(x, y, TiePolicy::strict);
}

std::string to_string(TailNormalization n) {
    return n == TailNormalization::sqrt_n ? "sqrt_n" : "sqrt_n_over_log_n";
}

TailNormalization tail_normalization_from_string(const std::string& s) {
    if (s == "sqrt_n") return TailNormalization::sqrt_n;
    if (s == "sqrt_n_over_log_n") return TailNormalization::sqrt_n_over_log_n;
    throw std::invalid_argument("unknown normalization: '" + s + "'");
}

TailDiagnostic tail_diagnostic(const ProcessSpec& x_spec, const ProcessSpec& y_spec,
                               std::vector<std::size_t> n_grid, std::vector<double> thresholds,
                               std::size_t trials, TailNormalization normalization,
                               std::optional<double> pi, std::uint64_t master_seed,
                               unsigned threads) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (n_grid.empty()) throw std::invalid_argument("n grid must be nonempty");
    if (thresholds.empty()) throw std::invalid_argument("thresholds must be nonempty");
    for (const std::size_t n : n_grid) {
        if (n < 2) throw std::invalid_argument("grid sizes must be >= 2");
    }
    std::sort(thresholds.begin(), thresholds.end());

    TailDiagnostic diag;
    diag.n_grid = std::move(n_grid);
    diag.thresholds = std::move(thresholds);
    diag.normalization = normalization;
    diag.trials = trials;
    diag.master_seed = master_seed;
    // Decorrelate the pi pre-estimation from the trial streams.
    diag.pi_used = pi ? *pi
                      : estimate_pi(x_spec, y_spec, 30000, 30000,
                                    master_seed ^ 0x9E3779B97F4A7C15ull);

    for (const std::size_t n : diag.n_grid) {
        const double factor = normalization == TailNormalization::sqrt_n
                                  ? std::sqrt(static_cast<double>(n))
                                  : std::sqrt(static_cast<double>(n) /
                                              std::log(static_cast<double>(n)));
        std::vector<double> deviations(trials);
        parallel_trials(trials, threads, [&](std::size_t t) {
            ProcessSpec xs = x_spec;
            ProcessSpec ys = y_spec;
            xs.seed = master_seed;
            ys.seed = master_seed;
            const TimeSeries x = generate(xs, n, 2 * t);
            const TimeSeries y = generate(ys, n, 2 * t + 1);
            deviations[t] = factor * (compute_u(x, y, TiePolicy::strict) - diag.pi_used);
        });

        std::vector<double> freq(diag.thresholds.size(), 0.0);
        for (std::size_t xi = 0; xi < diag.thresholds.size(); ++xi) {
            std::size_t hits = 0;
            for (const double d : deviations) {
                if (d > diag.thresholds[xi]) ++hits;
            }
            freq[xi] = static_cast<double>(hits) / static_cast<double>(trials);
        }
        diag.exceedance.push_back(std::move(freq));
    }
    return diag;
}

namespace {

const std::vector<std::pair<std::size_t, std::size_t>> kSizeLadder = {
    {150, 100}, {300, 200}, {450, 300}, {600, 400}, {750, 500}};

Scenario base_scenario(std::string name) {
    Scenario s;
    s.sizes = kSizeLadder;
    s.trials = 2000;
    s.center = 0.5;
    s.name = std::move(name);
    return s;
}

Scenario ar_scenario(std::string name, double mu2, std::size_t a, std::size_t b) {
    Scenario s = base_scenario(std::move(name));
    s.design = TwoSampleDesign{ProcessSpec::parse("ar1-gauss:mu=0,sigma=2"),
                               ProcessSpec::parse("iid-normal:mu=" + detail::format_number(mu2) +
                                                  ",sigma=1")};
    s.bw.a_lag = a;
    s.bw.b_lag = b;
    return s;
}

Scenario lsv_scenario(std::string name, double gamma_x, double gamma_y, std::size_t a,
                      std::size_t b) {
    Scenario s = base_scenario(std::move(name));
    s.design = TwoSampleDesign{
        ProcessSpec::parse("lsv:gamma=" + detail::format_number(gamma_x)),
        ProcessSpec::parse("lsv:gamma=" + detail::format_number(gamma_y))};
    s.bw.a_lag = a;
    s.bw.b_lag = b;
    return s;
}

Scenario adjacent_scenario(std::string name, PostTransform f, std::size_t a, std::size_t b) {
    Scenario s = base_scenario(std::move(name));
    s.design = AdjacentDesign{ProcessSpec::parse("lsv:gamma=0.25"), f};
    s.bw.a_lag = a;
    s.bw.b_lag = b;
    return s;
}

} // namespace

Scenario named_scenario(const std::string& name) {
    if (name == "example1") return ar_scenario(name, 0.0, 4, 0);
    if (name == "example1-a3") return ar_scenario(name, 0.0, 3, 0);
    if (name == "example1-uncorrected") return ar_scenario(name, 0.0, 0, 0);
    if (name == "example1-power") return ar_scenario(name, 0.2, 4, 0);
    if (name == "example2") return lsv_scenario(name, 0.25, 0.25, 5, 5);
    if (name == "example2-a4") return lsv_scenario(name, 0.25, 0.25, 4, 4);
    if (name == "example2-uncorrected") return lsv_scenario(name, 0.25, 0.25, 0, 0);
    if (name == "example2-power") return lsv_scenario(name, 0.25, 0.1, 5, 4);
    if (name == "adjacent-null") return adjacent_scenario(name, PostTransform::identity(), 5, 5);
    if (name == "adjacent-uncorrected")
        return adjacent_scenario(name, PostTransform::identity(), 0, 0);
    if (name == "adjacent-power") return adjacent_scenario(name, PostTransform::power(0.8), 5, 5);
    throw std::invalid_argument("unknown scenario name: '" + name + "'");
}

std::vector<std::string> named_scenario_names() {
    return {"example1",          "example1-a3",         "example1-uncorrected",
            "example1-power",    "example2",            "example2-a4",
            "example2-uncorrected", "example2-power",   "adjacent-null",
            "adjacent-uncorrected", "adjacent-power"};
}

} // namespace mwdep
