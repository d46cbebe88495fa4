#include "mwdep/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mwdep/detail/format.hpp"

namespace mwdep {

ColumnFileError::ColumnFileError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

bool try_parse_value(const std::string& token, double& out) {
    try {
        out = detail::parse_number(token);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

} // namespace

std::vector<double> read_column_values(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string token = trim(line);
        if (token.empty()) continue;
        double v = 0.0;
        if (!try_parse_value(token, v)) {
            if (header_allowed) {
                header_allowed = false; // one non-numeric header line tolerated
                continue;
            }
            throw ColumnFileError(line_no, "cannot parse value '" + token + "'");
        }
        header_allowed = false;
        if (!std::isfinite(v)) {
            throw ColumnFileError(line_no, "non-finite value '" + token + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw ColumnFileError(line_no, "no numeric values found");
    }
    return values;
}

std::vector<double> read_column_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    return read_column_values(in);
}

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_column_values(std::ostream& out, std::span<const double> values) {
    for (const double v : values) {
        out << format_double17(v) << '\n';
    }
}

void write_column_file(const std::string& path, std::span<const double> values) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    write_column_values(out, values);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string digest_hex(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

namespace {

nlohmann::json optional_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::optional<double> optional_from_json(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

} // namespace

nlohmann::json to_json(const TestReport& r) {
    return nlohmann::json{{"u_stat", r.u_stat},
                          {"v_n", r.v_n},
                          {"t_stat", optional_to_json(r.t_stat)},
                          {"p_one_sided", optional_to_json(r.p_one_sided)},
                          {"p_two_sided", optional_to_json(r.p_two_sided)},
                          {"reject_at_1645", r.reject_at_1645},
                          {"reject_at_196", r.reject_at_196},
                          {"n", r.n},
                          {"m", r.m},
                          {"a_lag", r.a_lag},
                          {"b_lag", r.b_lag},
                          {"alternative", to_string(r.alternative)},
                          {"ties", to_string(r.ties)},
                          {"center", r.center},
                          {"warnings", r.warnings}};
}

TestReport test_report_from_json(const nlohmann::json& j) {
    TestReport r;
    r.u_stat = j.at("u_stat").get<double>();
    r.v_n = j.at("v_n").get<double>();
    r.t_stat = optional_from_json(j.at("t_stat"));
    r.p_one_sided = optional_from_json(j.at("p_one_sided"));
    r.p_two_sided = optional_from_json(j.at("p_two_sided"));
    r.reject_at_1645 = j.at("reject_at_1645").get<bool>();
    r.reject_at_196 = j.at("reject_at_196").get<bool>();
    r.n = j.at("n").get<std::size_t>();
    r.m = j.at("m").get<std::size_t>();
    r.a_lag = j.at("a_lag").get<std::size_t>();
    r.b_lag = j.at("b_lag").get<std::size_t>();
    r.alternative = alternative_from_string(j.at("alternative").get<std::string>());
    r.ties = tie_policy_from_string(j.at("ties").get<std::string>());
    r.center = j.at("center").get<double>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

nlohmann::json to_json(const AutocovarianceProfile& p) {
    return nlohmann::json{
        {"gamma", p.gamma}, {"series_length", p.series_length}, {"band", p.band}};
}

AutocovarianceProfile profile_from_json(const nlohmann::json& j) {
    AutocovarianceProfile p;
    p.gamma = j.at("gamma").get<std::vector<double>>();
    p.series_length = j.at("series_length").get<std::size_t>();
    p.band = j.at("band").get<double>();
    return p;
}

nlohmann::json to_json(const MonteCarloReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back(nlohmann::json{{"n", row.n},
                                      {"m", row.m},
                                      {"est_variance", optional_to_json(row.est_variance)},
                                      {"rate_1645", row.rate_1645},
                                      {"rate_196", row.rate_196},
                                      {"undefined_count", row.undefined_count},
                                      {"trials", row.trials}});
    }
    return nlohmann::json{{"rows", std::move(rows)},
                          {"master_seed", r.master_seed},
                          {"rng_algorithm", r.rng_algorithm},
                          {"scenario", r.scenario_name}};
}

MonteCarloReport mc_report_from_json(const nlohmann::json& j) {
    MonteCarloReport r;
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.rng_algorithm = j.at("rng_algorithm").get<std::string>();
    r.scenario_name = j.at("scenario").get<std::string>();
    for (const auto& jr : j.at("rows")) {
        ScenarioRow row;
        row.n = jr.at("n").get<std::size_t>();
        row.m = jr.at("m").get<std::size_t>();
        row.est_variance = optional_from_json(jr.at("est_variance"));
        row.rate_1645 = jr.at("rate_1645").get<double>();
        row.rate_196 = jr.at("rate_196").get<double>();
        row.undefined_count = jr.at("undefined_count").get<std::size_t>();
        row.trials = jr.at("trials").get<std::size_t>();
        r.rows.push_back(std::move(row));
    }
    return r;
}

nlohmann::json to_json(const TailDiagnostic& d) {
    return nlohmann::json{{"n_grid", d.n_grid},
                          {"thresholds", d.thresholds},
                          {"exceedance", d.exceedance},
                          {"pi_used", d.pi_used},
                          {"normalization", to_string(d.normalization)},
                          {"trials", d.trials},
                          {"master_seed", d.master_seed}};
}

nlohmann::json to_json(const Scenario& s) {
    nlohmann::json design;
    if (const auto* two = std::get_if<TwoSampleDesign>(&s.design)) {
        design = {{"type", "two_sample"},
                  {"x_process", two->x_spec.canonical_text()},
                  {"y_process", two->y_spec.canonical_text()}};
    } else if (const auto* one = std::get_if<OneSampleDesign>(&s.design)) {
        design = {{"type", "one_sample"},
                  {"x_process", one->x_spec.canonical_text()},
                  {"dist", one->dist.describe()}};
    } else {
        const auto& adj = std::get<AdjacentDesign>(s.design);
        design = {{"type", "adjacent"},
                  {"x_process", adj.x_spec.canonical_text()},
                  {"transform", adj.transform.describe()}};
    }
    nlohmann::json sizes = nlohmann::json::array();
    for (const auto& [n, m] : s.sizes) {
        sizes.push_back(nlohmann::json::array({n, m}));
    }
    return nlohmann::json{{"design", std::move(design)},
                          {"sizes", std::move(sizes)},
                          {"a_lag", s.bw.a_lag},
                          {"b_lag", s.bw.b_lag},
                          {"ties", to_string(s.bw.ties)},
                          {"alternative", to_string(s.bw.alternative)},
                          {"trials", s.trials},
                          {"center", s.center},
                          {"name", s.name}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s;
    const auto& design = j.at("design");
    const std::string type = design.at("type").get<std::string>();
    if (type == "two_sample") {
        s.design = TwoSampleDesign{
            ProcessSpec::parse(design.at("x_process").get<std::string>()),
            ProcessSpec::parse(design.at("y_process").get<std::string>())};
    } else if (type == "one_sample") {
        s.design = OneSampleDesign{
            ProcessSpec::parse(design.at("x_process").get<std::string>()),
            KnownDistribution::parse(design.at("dist").get<std::string>())};
    } else if (type == "adjacent") {
        s.design = AdjacentDesign{
            ProcessSpec::parse(design.at("x_process").get<std::string>()),
            PostTransform::parse(design.at("transform").get<std::string>())};
    } else {
        throw std::invalid_argument("unknown design type: '" + type + "'");
    }
    for (const auto& pair : j.at("sizes")) {
        s.sizes.emplace_back(pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>());
    }
    s.bw.a_lag = j.at("a_lag").get<std::size_t>();
    s.bw.b_lag = j.at("b_lag").get<std::size_t>();
    if (j.contains("ties")) s.bw.ties = tie_policy_from_string(j.at("ties").get<std::string>());
    if (j.contains("alternative"))
        s.bw.alternative = alternative_from_string(j.at("alternative").get<std::string>());
    s.trials = j.at("trials").get<std::size_t>();
    if (j.contains("center")) s.center = j.at("center").get<double>();
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    s.validate();
    return s;
}

nlohmann::json ReportDocument::to_json() const {
    nlohmann::json j{{"schema_version", schema_version},
                     {"command", command},
                     {"inputs_digest", inputs_digest},
                     {"payload_type", payload_type},
                     {"payload", payload}};
    if (rng_algorithm) {
        j["rng"] = nlohmann::json{{"algorithm", *rng_algorithm}};
        if (master_seed) j["rng"]["master_seed"] = *master_seed;
    }
    return j;
}

std::string ReportDocument::dump() const {
    return to_json().dump(2) + "\n";
}

ReportDocument ReportDocument::parse(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<std::string>();
    doc.command = j.at("command").get<std::string>();
    doc.inputs_digest = j.at("inputs_digest").get<std::string>();
    doc.payload_type = j.at("payload_type").get<std::string>();
    doc.payload = j.at("payload");
    if (j.contains("rng")) {
        doc.rng_algorithm = j.at("rng").at("algorithm").get<std::string>();
        if (j.at("rng").contains("master_seed")) {
            doc.master_seed = j.at("rng").at("master_seed").get<std::uint64_t>();
        }
    }
    return doc;
}

void write_covplot_csv(std::ostream& out, const AutocovarianceProfile& gx,
                       const AutocovarianceProfile* gy) {
    if (gy == nullptr) {
        out << "lag,gamma_x,band\n";
        for (std::size_t k = 0; k < gx.gamma.size(); ++k) {
            out << k << ',' << format_double17(gx.gamma[k]) << ',' << format_double17(gx.band)
                << '\n';
        }
        return;
    }
    if (gy->gamma.size() != gx.gamma.size()) {
        throw std::invalid_argument("profiles must share the lag range");
    }
    const double band = std::max(gx.band, gy->band);
    out << "lag,gamma_x,gamma_y,band\n";
    for (std::size_t k = 0; k < gx.gamma.size(); ++k) {
        out << k << ',' << format_double17(gx.gamma[k]) << ',' << format_double17(gy->gamma[k])
            << ',' << format_double17(band) << '\n';
    }
}

} // namespace mwdep
