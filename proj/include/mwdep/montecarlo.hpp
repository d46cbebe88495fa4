#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mwdep/processes.hpp"
#include "mwdep/testing.hpp"

namespace mwdep {

struct TwoSampleDesign {
    ProcessSpec x_spec;
    ProcessSpec y_spec;
};

struct OneSampleDesign {
    ProcessSpec x_spec;
    KnownDistribution dist;
};

/// Monotone map applied to the second block of an adjacent design.
struct PostTransform {
    enum class Kind { identity, power };
    Kind kind = Kind::identity;
    double exponent = 1.0;

    [[nodiscard]] double operator()(double v) const;
    static PostTransform identity() { return {}; }
    static PostTransform power(double exponent) { return {Kind::power, exponent}; }
    static PostTransform parse(const std::string& text);
    [[nodiscard]] std::string describe() const;
};

/// Blocks X_1..X_n and f(X_{n+1})..f(X_{n+m}) cut from one simulated path;
/// the split point is n from each (n, m) size pair.
struct AdjacentDesign {
    ProcessSpec x_spec;
    PostTransform transform;
};

/// One Monte-Carlo study: a design, a ladder of sample sizes, bandwidths and
/// trial count. `center` replaces 1/2 in the T_n numerator, which turns a
/// power study into a level study around a pre-estimated pi.
struct Scenario {
    std::variant<TwoSampleDesign, OneSampleDesign, AdjacentDesign> design;
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    BandwidthConfig bw;
    std::size_t trials = 2000;
    double center = 0.5;
    std::string name;

    void validate() const;
};

struct ScenarioRow {
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<double> est_variance; ///< sample variance of T_n; needs >= 2 defined trials
    double rate_1645 = 0.0;             ///< freq(T_n > 1.645) over defined trials
    double rate_196 = 0.0;              ///< freq(|T_n| > 1.96) over defined trials
    std::size_t undefined_count = 0;    ///< nonpositive-variance trials, reported separately
    std::size_t trials = 0;
};

struct MonteCarloReport {
    std::vector<ScenarioRow> rows;
    std::uint64_t master_seed = 0;
    std::string rng_algorithm;
    std::string scenario_name;
};

/// Runs `trials` independent replications per size pair. Trial t draws its x
/// and y samples from sub-streams 2t and 2t+1 of the master seed (an adjacent
/// path uses 2t alone), so every table cell is re-derivable in isolation and
/// the report does not depend on the number of worker threads.
[[nodiscard]] MonteCarloReport run_scenario(const Scenario& scenario, std::uint64_t master_seed,
                                            unsigned threads = 0);

/// One large-sample realization of U_n, the pre-estimation step for a
/// recentered level study.
[[nodiscard]] double estimate_pi(const ProcessSpec& x_spec, const ProcessSpec& y_spec,
                                 std::size_t n, std::size_t m, std::uint64_t seed);

enum class TailNormalization { sqrt_n, sqrt_n_over_log_n };

[[nodiscard]] std::string to_string(TailNormalization n);
[[nodiscard]] TailNormalization tail_normalization_from_string(const std::string& s);

/// Empirical exceedance table for the heavy-tail diagnostic: frequencies of
/// the normalized deviation of U_n from pi exceeding each threshold, per
/// sample size (m = n throughout). Exploratory output only; there is no
/// pass/fail attached.
struct TailDiagnostic {
    std::vector<std::size_t> n_grid;
    std::vector<double> thresholds;               ///< ascending
    std::vector<std::vector<double>> exceedance;  ///< [n index][threshold index]
    double pi_used = 0.5;
    TailNormalization normalization = TailNormalization::sqrt_n;
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;
};

/// When pi is not supplied it is pre-estimated from one n=m=30000 realization
/// on a seed decorrelated from the trial streams.
[[nodiscard]] TailDiagnostic tail_diagnostic(const ProcessSpec& x_spec, const ProcessSpec& y_spec,
                                             std::vector<std::size_t> n_grid,
                                             std::vector<double> thresholds, std::size_t trials,
                                             TailNormalization normalization,
                                             std::optional<double> pi, std::uint64_t master_seed,
                                             unsigned threads = 0);

/// Built-in parameter sets for the simulation-study tables; throws on an
/// unknown name.
[[nodiscard]] Scenario named_scenario(const std::string& name);
[[nodiscard]] std::vector<std::string> named_scenario_names();

} // namespace mwdep
