// mwdep — corrected Mann-Whitney tests for short-range dependent series.
//
// Exit codes: 0 success, 1 input/usage error, 2 test ran but the statistic
// is undefined (nonpositive variance estimate).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwdep/io.hpp"
#include "mwdep/montecarlo.hpp"
#include "mwdep/processes.hpp"
#include "mwdep/series.hpp"
#include "mwdep/testing.hpp"
#include "mwdep/varest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUndefined = 2;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + out_path);
    }
    out << text;
}

mwdep::TimeSeries load_series(const std::string& path) {
    return mwdep::TimeSeries(mwdep::read_column_file(path));
}

unsigned default_threads() {
    if (const char* env = std::getenv("MWDEP_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0; // auto
}

struct TestCommandArgs {
    std::string x_path;
    std::string y_path;
    std::string series_path;
    std::string dist_token;
    std::size_t split = 0;
    std::size_t a_lag = 0;
    std::size_t b_lag = 0;
    std::string alternative = "greater";
    std::string ties = "strict";
    std::string out = "-";
};

int emit_test_report(const mwdep::TestReport& report, const std::string& command_echo,
                     const std::string& digest, const std::string& out_path) {
    mwdep::ReportDocument doc;
    doc.command = command_echo;
    doc.inputs_digest = digest;
    doc.payload_type = "test_report";
    doc.payload = mwdep::to_json(report);
    emit(doc.dump(), out_path);
    return report.defined() ? kExitOk : kExitUndefined;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long v = std::stol(item);
        if (v < 0) throw std::invalid_argument("negative entry in list: " + item);
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mann-Whitney tests corrected for short-range dependence"};
    app.require_subcommand(1);

    TestCommandArgs targs;

    // ---- test-two-sample ----
    auto* two = app.add_subcommand("test-two-sample",
                                   "U-test of two independent series with lag-window correction");
    two->add_option("--x", targs.x_path, "column file, first sample")->required();
    two->add_option("--y", targs.y_path, "column file, second sample")->required();
    two->add_option("--a-lag", targs.a_lag, "lag truncation for the x side");
    two->add_option("--b-lag", targs.b_lag, "lag truncation for the y side");
    two->add_option("--alternative", targs.alternative, "greater|less|two-sided");
    two->add_option("--ties", targs.ties, "strict|half-weight");
    two->add_option("--out", targs.out, "output path or - for stdout");

    // ---- test-one-sample ----
    auto* one = app.add_subcommand("test-one-sample",
                                   "domination test against a known distribution");
    one->add_option("--x", targs.x_path, "column file, sample")->required();
    one->add_option("--dist", targs.dist_token, "normal:mu,sigma or uniform:lo,hi")->required();
    one->add_option("--a-lag", targs.a_lag, "lag truncation");
    one->add_option("--alternative", targs.alternative, "greater|less|two-sided");
    one->add_option("--out", targs.out, "output path or - for stdout");

    // ---- test-adjacent ----
    auto* adj = app.add_subcommand("test-adjacent",
                                   "change test on two adjacent blocks of one series");
    adj->add_option("--series", targs.series_path, "column file, whole series")->required();
    adj->add_option("--split", targs.split, "block boundary: x = 1..split, y = rest")->required();
    adj->add_option("--a-lag", targs.a_lag, "lag truncation for the first block");
    adj->add_option("--b-lag", targs.b_lag, "lag truncation for the second block");
    adj->add_option("--alternative", targs.alternative, "greater|less|two-sided");
    adj->add_option("--ties", targs.ties, "strict|half-weight");
    adj->add_option("--out", targs.out, "output path or - for stdout");

    // ---- covplot ----
    std::string cov_x, cov_y, cov_out = "-";
    std::size_t cov_max_lag = 0;
    auto* cov = app.add_subcommand("covplot",
                                   "estimated autocovariances for bandwidth selection, as CSV");
    cov->add_option("--x", cov_x, "column file, first sample")->required();
    cov->add_option("--y", cov_y, "column file, second sample (switches to the transformed "
                                  "sequences entering V_n)");
    cov->add_option("--max-lag", cov_max_lag, "largest lag to estimate")->required();
    cov->add_option("--out", cov_out, "output path or - for stdout");

    // ---- simulate ----
    std::string sim_process, sim_out = "-";
    std::size_t sim_n = 0;
    std::uint64_t sim_seed = 0;
    std::uint64_t sim_stream = 0;
    auto* sim = app.add_subcommand("simulate", "draw a sample path from a named process");
    sim->add_option("--process", sim_process,
                    "spec string, e.g. ar1-gauss:mu=0,sigma=2 | lsv:gamma=0.25 | "
                    "iid-normal:mu=0,sigma=1 | iid-uniform:lo=0,hi=1 | linear-binary:k=40")
        ->required();
    sim->add_option("--n", sim_n, "path length")->required();
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--stream", sim_stream, "RNG stream id");
    sim->add_option("--out", sim_out, "output path or - for stdout");

    // ---- mc ----
    std::string mc_scenario, mc_out = "-";
    std::optional<std::size_t> mc_trials;
    std::uint64_t mc_seed = 0;
    unsigned mc_threads = default_threads();
    auto* mc = app.add_subcommand("mc", "Monte-Carlo level/power study over a scenario");
    mc->add_option("--scenario", mc_scenario, "built-in name or path to a scenario JSON file")
        ->required();
    mc->add_option("--trials", mc_trials, "override the scenario's trial count");
    mc->add_option("--seed", mc_seed, "master seed");
    mc->add_option("--threads", mc_threads, "worker threads (default: MWDEP_THREADS or auto)");
    mc->add_option("--out", mc_out, "output path or - for stdout");

    // ---- tail-diag ----
    std::string td_x, td_y, td_norm = "sqrt_n", td_out = "-";
    std::string td_ngrid, td_thresholds;
    std::size_t td_trials = 500;
    std::uint64_t td_seed = 0;
    unsigned td_threads = default_threads();
    std::optional<double> td_pi;
    auto* td = app.add_subcommand("tail-diag",
                                  "exploratory exceedance table for heavy-tail behavior of U_n");
    td->add_option("--x-process", td_x, "spec string for the first sample")->required();
    td->add_option("--y-process", td_y, "spec string for the second sample")->required();
    td->add_option("--n-grid", td_ngrid, "comma list of sample sizes (m = n)")->required();
    td->add_option("--thresholds", td_thresholds, "comma list of exceedance thresholds")
        ->required();
    td->add_option("--trials", td_trials, "replications per size");
    td->add_option("--normalization", td_norm, "sqrt_n|sqrt_n_over_log_n");
    td->add_option("--pi", td_pi, "known pi; pre-estimated on a large sample when absent");
    td->add_option("--seed", td_seed, "master seed");
    td->add_option("--threads", td_threads, "worker threads");
    td->add_option("--out", td_out, "output path or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (two->parsed()) {
            const std::string x_bytes = slurp_file(targs.x_path);
            const std::string y_bytes = slurp_file(targs.y_path);
            mwdep::BandwidthConfig bw;
            bw.a_lag = targs.a_lag;
            bw.b_lag = targs.b_lag;
            bw.ties = mwdep::tie_policy_from_string(targs.ties);
            bw.alternative = mwdep::alternative_from_string(targs.alternative);
            const auto report = mwdep::two_sample_test(load_series(targs.x_path),
                                                       load_series(targs.y_path), bw);
            const std::string echo = "test-two-sample --x " + targs.x_path + " --y " +
                                     targs.y_path + " --a-lag " + std::to_string(targs.a_lag) +
                                     " --b-lag " + std::to_string(targs.b_lag) +
                                     " --alternative " + targs.alternative + " --ties " +
                                     targs.ties;
            return emit_test_report(report, echo, mwdep::digest_hex(x_bytes + "\n" + y_bytes),
                                    targs.out);
        }

        if (one->parsed()) {
            const std::string x_bytes = slurp_file(targs.x_path);
            const auto dist = mwdep::KnownDistribution::parse(targs.dist_token);
            const auto report = mwdep::one_sample_test(
                load_series(targs.x_path), dist, targs.a_lag,
                mwdep::alternative_from_string(targs.alternative));
            const std::string echo = "test-one-sample --x " + targs.x_path + " --dist " +
                                     targs.dist_token + " --a-lag " +
                                     std::to_string(targs.a_lag) + " --alternative " +
                                     targs.alternative;
            return emit_test_report(report, echo, mwdep::digest_hex(x_bytes), targs.out);
        }

        if (adj->parsed()) {
            const std::string bytes = slurp_file(targs.series_path);
            mwdep::BandwidthConfig bw;
            bw.a_lag = targs.a_lag;
            bw.b_lag = targs.b_lag;
            bw.ties = mwdep::tie_policy_from_string(targs.ties);
            bw.alternative = mwdep::alternative_from_string(targs.alternative);
            const auto report =
                mwdep::adjacent_test(load_series(targs.series_path), targs.split, bw);
            const std::string echo = "test-adjacent --series " + targs.series_path + " --split " +
                                     std::to_string(targs.split) + " --a-lag " +
                                     std::to_string(targs.a_lag) + " --b-lag " +
                                     std::to_string(targs.b_lag) + " --alternative " +
                                     targs.alternative + " --ties " + targs.ties;
            return emit_test_report(report, echo, mwdep::digest_hex(bytes), targs.out);
        }

        if (cov->parsed()) {
            const mwdep::TimeSeries x = load_series(cov_x);
            std::ostringstream csv;
            if (cov_y.empty()) {
                if (cov_max_lag >= x.size()) {
                    throw std::invalid_argument("lag exceeds sample");
                }
                const auto profile = mwdep::covariance_profile(x, cov_max_lag);
                mwdep::write_covplot_csv(csv, profile, nullptr);
            } else {
                // Profiles of H_m(X_i) and G_n(Y_j): the sequences entering V_n.
                const mwdep::TimeSeries y = load_series(cov_y);
                if (cov_max_lag >= x.size() || cov_max_lag >= y.size()) {
                    throw std::invalid_argument("lag exceeds sample");
                }
                const mwdep::SortedSample sy(y);
                const mwdep::SortedSample sx(x);
                std::vector<double> hx(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) hx[i] = sy.survival(x[i]);
                std::vector<double> gy(y.size());
                for (std::size_t j = 0; j < y.size(); ++j) gy[j] = sx.cdf_strict(y[j]);
                const auto px = mwdep::covariance_profile(std::span<const double>(hx), cov_max_lag);
                const auto py = mwdep::covariance_profile(std::span<const double>(gy), cov_max_lag);
                mwdep::write_covplot_csv(csv, px, &py);
            }
            emit(csv.str(), cov_out);
            return kExitOk;
        }

        if (sim->parsed()) {
            if (sim_n < 1) throw std::invalid_argument("--n must be >= 1");
            const auto spec = mwdep::ProcessSpec::parse(sim_process, sim_seed);
            const auto series = mwdep::generate(spec, sim_n, sim_stream);
            std::ostringstream col;
            mwdep::write_column_values(col, series.view());
            emit(col.str(), sim_out);
            return kExitOk;
        }

        if (mc->parsed()) {
            mwdep::Scenario scenario;
            std::string scenario_digest_source;
            const bool is_builtin =
                mc_scenario.find('.') == std::string::npos && mc_scenario.find('/') == std::string::npos;
            if (is_builtin) {
                scenario = mwdep::named_scenario(mc_scenario);
            } else {
                const std::string bytes = slurp_file(mc_scenario);
                scenario = mwdep::scenario_from_json(nlohmann::json::parse(bytes));
            }
            if (mc_trials) {
                if (*mc_trials < 1) throw std::invalid_argument("--trials must be >= 1");
                scenario.trials = *mc_trials;
            }
            scenario.validate();
            scenario_digest_source = mwdep::to_json(scenario).dump();

            const auto report = mwdep::run_scenario(scenario, mc_seed, mc_threads);
            mwdep::ReportDocument doc;
            doc.command = "mc --scenario " + mc_scenario + " --trials " +
                          std::to_string(scenario.trials) + " --seed " + std::to_string(mc_seed);
            doc.inputs_digest = mwdep::digest_hex(scenario_digest_source);
            doc.payload_type = "mc_report";
            doc.payload = mwdep::to_json(report);
            doc.payload["scenario_config"] = mwdep::to_json(scenario);
            doc.rng_algorithm = mwdep::PhiloxStream::algorithm_name();
            doc.master_seed = mc_seed;
            emit(doc.dump(), mc_out);
            return kExitOk;
        }

        if (td->parsed()) {
            const auto x_spec = mwdep::ProcessSpec::parse(td_x);
            const auto y_spec = mwdep::ProcessSpec::parse(td_y);
            const auto diag = mwdep::tail_diagnostic(
                x_spec, y_spec, parse_size_list(td_ngrid), parse_double_list(td_thresholds),
                td_trials, mwdep::tail_normalization_from_string(td_norm), td_pi, td_seed,
                td_threads);
            mwdep::ReportDocument doc;
            doc.command = "tail-diag --x-process " + td_x + " --y-process " + td_y + " --n-grid " +
                          td_ngrid + " --thresholds " + td_thresholds + " --trials " +
                          std::to_string(td_trials) + " --normalization " + td_norm + " --seed " +
                          std::to_string(td_seed);
            if (td_pi) doc.command += " --pi " + mwdep::format_double17(*td_pi);
            doc.inputs_digest = mwdep::digest_hex(doc.command);
            doc.payload_type = "tail_diagnostic";
            doc.payload = mwdep::to_json(diag);
            doc.rng_algorithm = mwdep::PhiloxStream::algorithm_name();
            doc.master_seed = td_seed;
            emit(doc.dump(), td_out);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "mwdep: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
