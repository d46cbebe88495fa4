#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwdep/series.hpp"
#include "mwdep/varest.hpp"

namespace mwdep {

inline constexpr const char* kWarnNonpositiveVariance = "nonpositive-variance";
inline constexpr const char* kWarnTiesUnderStrict = "ties-under-strict";

/// Outcome of one corrected test. When v_n <= 0 the standardized statistic
/// and p-values are left unset and warnings contains "nonpositive-variance";
/// reporting an undefined statistic instead of +-infinity keeps Monte-Carlo
/// summaries uncorrupted.
struct TestReport {
    double u_stat = 0.0; ///< U_n for two-sample/adjacent, H-bar for one-sample
    double v_n = 0.0;
    std::optional<double> t_stat;
    std::optional<double> p_one_sided;
    std::optional<double> p_two_sided;
    bool reject_at_1645 = false; ///< t_stat > 1.645 (one-sided convenience)
    bool reject_at_196 = false;  ///< |t_stat| > 1.96 (two-sided convenience)
    std::size_t n = 0;
    std::size_t m = 0; ///< 0 for the one-sample test
    std::size_t a_lag = 0;
    std::size_t b_lag = 0;
    Alternative alternative = Alternative::greater;
    TiePolicy ties = TiePolicy::strict;
    double center = 0.5;
    std::vector<std::string> warnings;

    [[nodiscard]] bool defined() const noexcept { return t_stat.has_value(); }
    [[nodiscard]] bool has_warning(const std::string& code) const;
};

/// Reference distribution for the one-sample domination test. Restricted to
/// the normal and uniform families; extending means adding a tag here and a
/// branch to survival().
class KnownDistribution {
public:
    static KnownDistribution normal(double mu, double sigma);
    static KnownDistribution uniform(double lo, double hi);

    /// Text form "normal:mu,sigma" or "uniform:lo,hi".
    static KnownDistribution parse(const std::string& text);

    /// H(t) = mu((t, infinity)).
    [[nodiscard]] double survival(double t) const;

    [[nodiscard]] std::string describe() const;

private:
    enum class Family { normal, uniform };
    KnownDistribution(Family family, double p0, double p1);
    Family family_;
    double p0_, p1_;
};

struct PValues {
    double one_sided = 1.0;
    double two_sided = 1.0;
};

/// greater: 1 - Phi(t); less: Phi(t); two-sided: 2(1 - Phi(|t|)). Under the
/// two_sided alternative the one-sided entry reports the "greater" direction.
[[nodiscard]] PValues p_values(double t, Alternative alternative);

/// Two independent samples. Builds H_m(X_i) and G_n(Y_j) with the other
/// sample's empirical function, estimates the long-run variance with the
/// configured lag truncations and forms
/// T_n = sqrt(n) (U_n - center) / sqrt(max{V_n, 0}).
[[nodiscard]] TestReport two_sample_test(const TimeSeries& x, const TimeSeries& y,
                                         const BandwidthConfig& bw, double center = 0.5);

/// One sample against a known distribution: the statistic is the mean of
/// H(X_i) and the variance estimate is the one-sample lag-window sum.
[[nodiscard]] TestReport one_sample_test(const TimeSeries& x, const KnownDistribution& dist,
                                         std::size_t a_lag,
                                         Alternative alternative = Alternative::greater,
                                         double center = 0.5);

/// Two adjacent blocks of one series: entries 1..split_n against the rest,
/// through exactly the two-sample pipeline. The stricter bandwidth growth
/// rule for this design, a_n = o(sqrt n / log n), is the caller's
/// responsibility.
[[nodiscard]] TestReport adjacent_test(const TimeSeries& series, std::size_t split_n,
                                       const BandwidthConfig& bw, double center = 0.5);

[[nodiscard]] std::string to_string(Alternative a);
[[nodiscard]] Alternative alternative_from_string(const std::string& s);
[[nodiscard]] std::string to_string(TiePolicy t);
[[nodiscard]] TiePolicy tie_policy_from_string(const std::string& s);

} // namespace mwdep
