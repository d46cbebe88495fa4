#include "mwdep/testing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mwdep/detail/format.hpp"
#include "mwdep/normal.hpp"
#include "mwdep/ustat.hpp"

namespace mwdep {

bool TestReport::has_warning(const std::string& code) const {
    return std::find(warnings.begin(), warnings.end(), code) != warnings.end();
}

KnownDistribution::KnownDistribution(Family family, double p0, double p1)
    : family_(family), p0_(p0), p1_(p1) {}

KnownDistribution KnownDistribution::normal(double mu, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("normal distribution requires sigma > 0");
    }
    return {Family::normal, mu, sigma};
}

KnownDistribution KnownDistribution::uniform(double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("uniform distribution requires lo < hi");
    }
    return {Family::uniform, lo, hi};
}

KnownDistribution KnownDistribution::parse(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("bad distribution token: '" + text + "'");
    }
    const std::string family = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("bad distribution token: '" + text + "'");
    }
    const double p0 = detail::parse_number(body.substr(0, comma));
    const double p1 = detail::parse_number(body.substr(comma + 1));
    if (family == "normal") return normal(p0, p1);
    if (family == "uniform") return uniform(p0, p1);
    throw std::invalid_argument("unknown distribution family: '" + family + "'");
}

double KnownDistribution::survival(double t) const {
    switch (family_) {
    case Family::normal:
        return 1.0 - normal_cdf((t - p0_) / p1_);
    case Family::uniform:
        if (t <= p0_) return 1.0;
        if (t >= p1_) return 0.0;
        return (p1_ - t) / (p1_ - p0_);
    }
    return 0.0;
}

std::string KnownDistribution::describe() const {
    const std::string params = detail::format_number(p0_) + "," + detail::format_number(p1_);
    return (family_ == Family::normal ? "normal:" : "uniform:") + params;
}

PValues p_values(double t, Alternative alternative) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("t must be finite");
    }
    PValues p;
    p.two_sided = 2.0 * (1.0 - normal_cdf(std::fabs(t)));
    switch (alternative) {
    case Alternative::greater:
    case Alternative::two_sided:
        p.one_sided = 1.0 - normal_cdf(t);
        break;
    case Alternative::less:
        p.one_sided = normal_cdf(t);
        break;
    }
    return p;
}

namespace {

// Shared tail of the three tests: clamp, standardize, attach p-values.
void finalize_report(TestReport& report) {
    if (report.v_n > 0.0) {
        const double t = std::sqrt(static_cast<double>(report.n)) *
                         (report.u_stat - report.center) / std::sqrt(report.v_n);
        report.t_stat = t;
        const PValues p = p_values(t, report.alternative);
        report.p_one_sided = p.one_sided;
        report.p_two_sided = p.two_sided;
        report.reject_at_1645 = t > 1.645;
        report.reject_at_196 = std::fabs(t) > 1.96;
    } else {
        report.warnings.emplace_back(kWarnNonpositiveVariance);
    }
}

} // namespace

TestReport two_sample_test(const TimeSeries& x, const TimeSeries& y,
                           const BandwidthConfig& bw, double center) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    if (bw.a_lag >= n || bw.b_lag >= m) {
        throw std::invalid_argument("lag exceeds sample");
    }

    TestReport report;
    report.n = n;
    report.m = m;
    report.a_lag = bw.a_lag;
    report.b_lag = bw.b_lag;
    report.alternative = bw.alternative;
    report.ties = bw.ties;
    report.center = center;

    if (bw.ties == TiePolicy::strict && has_cross_ties(x, y)) {
        report.warnings.emplace_back(kWarnTiesUnderStrict);
    }

    report.u_stat = compute_u(x, y, bw.ties);

    // H_m(X_i) and G_n(Y_j): each sample pushed through the other sample's
    // empirical function.
    const SortedSample sy(y);
    const SortedSample sx(x);
    std::vector<double> hx(n);
    for (std::size_t i = 0; i < n; ++i) hx[i] = sy.survival(x[i]);
    std::vector<double> gy(m);
    for (std::size_t j = 0; j < m; ++j) gy[j] = sx.cdf_strict(y[j]);

    const AutocovarianceProfile px = covariance_profile(hx, bw.a_lag);
    const AutocovarianceProfile py = covariance_profile(gy, bw.b_lag);
    report.v_n = variance_estimator(px, py, static_cast<double>(n) / static_cast<double>(m), bw);

    finalize_report(report);
    return report;
}

TestReport one_sample_test(const TimeSeries& x, const KnownDistribution& dist,
                           std::size_t a_lag, Alternative alternative, double center) {
    const std::size_t n = x.size();
    if (a_lag >= n) {
        throw std::invalid_argument("lag exceeds sample");
    }

    TestReport report;
    report.n = n;
    report.m = 0;
    report.a_lag = a_lag;
    report.b_lag = 0;
    report.alternative = alternative;
    report.center = center;

    std::vector<double> h(n);
    double h_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        h[i] = dist.survival(x[i]);
        h_sum += h[i];
    }
    report.u_stat = h_sum / static_cast<double>(n);
    report.v_n = one_sample_variance(covariance_profile(std::span<const double>(h), a_lag), a_lag);

    finalize_report(report);
    return report;
}

TestReport adjacent_test(const TimeSeries& series, std::size_t split_n,
                         const BandwidthConfig& bw, double center) {
    if (split_n < 1 || split_n >= series.size()) {
        throw std::invalid_argument("split outside range");
    }
    const auto& v = series.values();
    TimeSeries x(std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(split_n)));
    TimeSeries y(std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(split_n), v.end()));
    return two_sample_test(x, y, bw, center);
}

std::string to_string(Alternative a) {
    switch (a) {
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
    case Alternative::two_sided: return "two-sided";
    }
    return {};
}

Alternative alternative_from_string(const std::string& s) {
    if (s == "greater") return Alternative::greater;
    if (s == "less") return Alternative::less;
    if (s == "two-sided" || s == "two_sided") return Alternative::two_sided;
    throw std::invalid_argument("unknown alternative: " + s);
}

std::string to_string(TiePolicy t) {
    return t == TiePolicy::strict ? "strict" : "half-weight";
}

TiePolicy tie_policy_from_string(const std::string& s) {
    if (s == "strict") return TiePolicy::strict;
    if (s == "half-weight" || s == "half_weight") return TiePolicy::half_weight;
    throw std::invalid_argument("unknown tie policy: " + s);
}

} // namespace mwdep
