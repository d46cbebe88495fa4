// Python bindings for the core operations: U statistics, variance
// estimation, the corrected tests, process simulators and the Monte-Carlo
// harness.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mwdep/io.hpp"
#include "mwdep/montecarlo.hpp"
#include "mwdep/normal.hpp"
#include "mwdep/processes.hpp"
#include "mwdep/rng.hpp"
#include "mwdep/testing.hpp"
#include "mwdep/ustat.hpp"
#include "mwdep/varest.hpp"

namespace py = pybind11;

namespace {

mwdep::TimeSeries make_series(const std::vector<double>& values) {
    return mwdep::TimeSeries(values);
}

mwdep::BandwidthConfig make_bw(std::size_t a_lag, std::size_t b_lag, const std::string& ties,
                               const std::string& alternative) {
    mwdep::BandwidthConfig bw;
    bw.a_lag = a_lag;
    bw.b_lag = b_lag;
    bw.ties = mwdep::tie_policy_from_string(ties);
    bw.alternative = mwdep::alternative_from_string(alternative);
    return bw;
}

py::dict report_to_dict(const mwdep::TestReport& r) {
    py::dict d;
    d["u_stat"] = r.u_stat;
    d["v_n"] = r.v_n;
    d["t_stat"] = r.t_stat ? py::object(py::float_(*r.t_stat)) : py::object(py::none());
    d["p_one_sided"] =
        r.p_one_sided ? py::object(py::float_(*r.p_one_sided)) : py::object(py::none());
    d["p_two_sided"] =
        r.p_two_sided ? py::object(py::float_(*r.p_two_sided)) : py::object(py::none());
    d["reject_at_1645"] = r.reject_at_1645;
    d["reject_at_196"] = r.reject_at_196;
    d["n"] = r.n;
    d["m"] = r.m;
    d["a_lag"] = r.a_lag;
    d["b_lag"] = r.b_lag;
    d["alternative"] = mwdep::to_string(r.alternative);
    d["ties"] = mwdep::to_string(r.ties);
    d["center"] = r.center;
    d["warnings"] = r.warnings;
    return d;
}

py::dict mc_report_to_dict(const mwdep::MonteCarloReport& r) {
    py::list rows;
    for (const auto& row : r.rows) {
        py::dict d;
        d["n"] = row.n;
        d["m"] = row.m;
        d["est_variance"] = row.est_variance ? py::object(py::float_(*row.est_variance))
                                             : py::object(py::none());
        d["rate_1645"] = row.rate_1645;
        d["rate_196"] = row.rate_196;
        d["undefined_count"] = row.undefined_count;
        d["trials"] = row.trials;
        rows.append(d);
    }
    py::dict d;
    d["rows"] = rows;
    d["master_seed"] = r.master_seed;
    d["rng_algorithm"] = r.rng_algorithm;
    d["scenario"] = r.scenario_name;
    return d;
}

} // namespace

PYBIND11_MODULE(_mwdep, m) {
    m.doc() = "Mann-Whitney U tests corrected for short-range dependence";

    m.def(
        "compute_u",
        [](const std::vector<double>& x, const std::vector<double>& y, const std::string& ties) {
            return mwdep::compute_u(make_series(x), make_series(y),
                                    mwdep::tie_policy_from_string(ties));
        },
        py::arg("x"), py::arg("y"), py::arg("ties") = "strict",
        "Mann-Whitney U statistic: mean of 1_{x<y} over all cross pairs.");

    m.def(
        "empirical_survival",
        [](double t, const std::vector<double>& y) {
            return mwdep::empirical_survival(t, make_series(y));
        },
        py::arg("t"), py::arg("y"), "Fraction of y strictly above t.");

    m.def(
        "empirical_cdf_strict",
        [](double t, const std::vector<double>& x) {
            return mwdep::empirical_cdf_strict(t, make_series(x));
        },
        py::arg("t"), py::arg("x"), "Fraction of x strictly below t.");

    m.def(
        "hoeffding_decompose",
        [](const std::vector<double>& x, const std::vector<double>& y,
           const std::function<double(double)>& h_y, const std::function<double(double)>& g_x,
           double pi) {
            const auto parts = mwdep::hoeffding_decompose(make_series(x), make_series(y), h_y,
                                                          g_x, pi);
            py::dict d;
            d["degenerate_term"] = parts.degenerate_term;
            d["x_term"] = parts.x_term;
            d["y_term"] = parts.y_term;
            d["pi_used"] = parts.pi_used;
            d["total"] = parts.total();
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("h_y"), py::arg("g_x"), py::arg("pi"));

    m.def("normal_cdf", &mwdep::normal_cdf, py::arg("z"));
    m.def("normal_quantile", &mwdep::normal_quantile, py::arg("p"));

    m.def(
        "autocov_hat",
        [](const std::vector<double>& z, std::size_t k) {
            return mwdep::autocov_hat(std::span<const double>(z), k);
        },
        py::arg("z"), py::arg("k"),
        "Lag-k autocovariance with 1/n normalization and full-sample centering.");

    m.def(
        "covariance_profile",
        [](const std::vector<double>& z, std::size_t max_lag) {
            const auto p = mwdep::covariance_profile(std::span<const double>(z), max_lag);
            py::dict d;
            d["gamma"] = p.gamma;
            d["series_length"] = p.series_length;
            d["band"] = p.band;
            return d;
        },
        py::arg("z"), py::arg("max_lag"));

    m.def(
        "bandwidth_advisor",
        [](const std::vector<double>& gamma, std::size_t series_length, std::size_t window) {
            mwdep::AutocovarianceProfile p;
            p.gamma = gamma;
            p.series_length = series_length;
            p.band = 2.0 / std::sqrt(static_cast<double>(series_length));
            return mwdep::bandwidth_advisor(p, window);
        },
        py::arg("gamma"), py::arg("series_length"), py::arg("window") = 3);

    m.def(
        "two_sample_test",
        [](const std::vector<double>& x, const std::vector<double>& y, std::size_t a_lag,
           std::size_t b_lag, const std::string& alternative, const std::string& ties,
           double center) {
            return report_to_dict(mwdep::two_sample_test(
                make_series(x), make_series(y), make_bw(a_lag, b_lag, ties, alternative),
                center));
        },
        py::arg("x"), py::arg("y"), py::arg("a_lag") = 0, py::arg("b_lag") = 0,
        py::arg("alternative") = "greater", py::arg("ties") = "strict", py::arg("center") = 0.5);

    m.def(
        "one_sample_test",
        [](const std::vector<double>& x, const std::string& dist, std::size_t a_lag,
           const std::string& alternative, double center) {
            return report_to_dict(mwdep::one_sample_test(
                make_series(x), mwdep::KnownDistribution::parse(dist), a_lag,
                mwdep::alternative_from_string(alternative), center));
        },
        py::arg("x"), py::arg("dist"), py::arg("a_lag") = 0, py::arg("alternative") = "greater",
        py::arg("center") = 0.5);

    m.def(
        "adjacent_test",
        [](const std::vector<double>& series, std::size_t split, std::size_t a_lag,
           std::size_t b_lag, const std::string& alternative, const std::string& ties,
           double center) {
            return report_to_dict(mwdep::adjacent_test(
                make_series(series), split, make_bw(a_lag, b_lag, ties, alternative), center));
        },
        py::arg("series"), py::arg("split"), py::arg("a_lag") = 0, py::arg("b_lag") = 0,
        py::arg("alternative") = "greater", py::arg("ties") = "strict", py::arg("center") = 0.5);

    m.def(
        "p_values",
        [](double t, const std::string& alternative) {
            const auto p = mwdep::p_values(t, mwdep::alternative_from_string(alternative));
            return py::make_tuple(p.one_sided, p.two_sided);
        },
        py::arg("t"), py::arg("alternative") = "greater");

    m.def(
        "simulate",
        [](const std::string& process, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            return mwdep::generate(mwdep::ProcessSpec::parse(process, seed), n, stream).values();
        },
        py::arg("process"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0,
        "Simulate a path from a spec string such as 'lsv:gamma=0.25'.");

    m.def(
        "estimate_pi",
        [](const std::string& x_process, const std::string& y_process, std::size_t n,
           std::size_t m, std::uint64_t seed) {
            return mwdep::estimate_pi(mwdep::ProcessSpec::parse(x_process),
                                      mwdep::ProcessSpec::parse(y_process), n, m, seed);
        },
        py::arg("x_process"), py::arg("y_process"), py::arg("n"), py::arg("m"),
        py::arg("seed") = 0);

    m.def(
        "run_scenario",
        [](const std::string& name, std::optional<std::size_t> trials, std::uint64_t seed,
           unsigned threads) {
            mwdep::Scenario s = mwdep::named_scenario(name);
            if (trials) s.trials = *trials;
            return mc_report_to_dict(mwdep::run_scenario(s, seed, threads));
        },
        py::arg("name"), py::arg("trials") = py::none(), py::arg("seed") = 0,
        py::arg("threads") = 0, "Run a built-in Monte-Carlo scenario by name.");

    m.def(
        "run_scenario_json",
        [](const std::string& scenario_json, std::optional<std::size_t> trials,
           std::uint64_t seed, unsigned threads) {
            mwdep::Scenario s =
                mwdep::scenario_from_json(nlohmann::json::parse(scenario_json));
            if (trials) s.trials = *trials;
            return mc_report_to_dict(mwdep::run_scenario(s, seed, threads));
        },
        py::arg("scenario_json"), py::arg("trials") = py::none(), py::arg("seed") = 0,
        py::arg("threads") = 0, "Run a Monte-Carlo scenario given as a JSON string.");

    m.def("named_scenarios", &mwdep::named_scenario_names);

    m.def(
        "named_scenario_config",
        [](const std::string& name) { return mwdep::to_json(mwdep::named_scenario(name)).dump(); },
        py::arg("name"), "JSON configuration of a built-in scenario.");

    m.attr("rng_algorithm") = mwdep::PhiloxStream::algorithm_name();
    m.attr("__version__") = "1.0.0";
}
