#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mwdep {

/// Scoring rule for tied cross-pairs: strict scores an equal pair as 0,
/// half_weight as 1/2.
enum class TiePolicy { strict, half_weight };

/// An observed series in observation order. Values are validated to be finite
/// and nonempty on construction; the stored order is never changed in place
/// (sorting happens on copies).
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] std::span<const double> view() const noexcept { return values_; }

    [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
    [[nodiscard]] auto end() const noexcept { return values_.end(); }

private:
    std::vector<double> values_;
};

/// Sorted copy of a sample answering empirical-function queries by binary
/// search, O(log n) per query after one O(n log n) sort.
class SortedSample {
public:
    explicit SortedSample(const TimeSeries& sample);
    explicit SortedSample(std::span<const double> sample);

    /// Fraction of the sample strictly above t.
    [[nodiscard]] double survival(double t) const noexcept;

    /// Fraction of the sample strictly below t.
    [[nodiscard]] double cdf_strict(double t) const noexcept;

    /// Count of values strictly below t.
    [[nodiscard]] std::size_t count_below(double t) const noexcept;

    /// Count of values equal to t.
    [[nodiscard]] std::size_t count_equal(double t) const noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

/// H_m(t): fraction of y strictly above t.
[[nodiscard]] double empirical_survival(double t, const TimeSeries& y);

/// G_n(t): fraction of x strictly below t. Strict inequality, unlike the
/// conventional <= CDF.
[[nodiscard]] double empirical_cdf_strict(double t, const TimeSeries& x);

/// Elementwise image of x under g, order preserved. Throws std::domain_error
/// if g produces a non-finite value.
[[nodiscard]] TimeSeries transform_series(const TimeSeries& x,
                                          const std::function<double(double)>& g);

/// True when some x value equals some y value, i.e. there are cross-pairs a
/// strict indicator scores as zero.
[[nodiscard]] bool has_cross_ties(const TimeSeries& x, const TimeSeries& y);

} // namespace mwdep
