#include "mwdep/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mwdep {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("empty sample");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("non-finite value at index " + std::to_string(i));
        }
    }
}

SortedSample::SortedSample(const TimeSeries& sample) : sorted_(sample.values()) {
    std::sort(sorted_.begin(), sorted_.end());
}

SortedSample::SortedSample(std::span<const double> sample)
    : sorted_(sample.begin(), sample.end()) {
    if (sorted_.empty()) {
        throw std::invalid_argument("empty sample");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double SortedSample::survival(double t) const noexcept {
    const auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

double SortedSample::cdf_strict(double t) const noexcept {
    return static_cast<double>(count_below(t)) / static_cast<double>(sorted_.size());
}

std::size_t SortedSample::count_below(double t) const noexcept {
    return static_cast<std::size_t>(
        std::lower_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin());
}

std::size_t SortedSample::count_equal(double t) const noexcept {
    const auto [lo, hi] = std::equal_range(sorted_.begin(), sorted_.end(), t);
    return static_cast<std::size_t>(hi - lo);
}

double empirical_survival(double t, const TimeSeries& y) {
    return SortedSample(y).survival(t);
}

double empirical_cdf_strict(double t, const TimeSeries& x) {
    return SortedSample(x).cdf_strict(t);
}

TimeSeries transform_series(const TimeSeries& x, const std::function<double(double)>& g) {
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) {
        const double gv = g(v);
        if (!std::isfinite(gv)) {
            throw std::domain_error("transform produced a non-finite value");
        }
        out.push_back(gv);
    }
    return TimeSeries(std::move(out));
}

bool has_cross_ties(const TimeSeries& x, const TimeSeries& y) {
    const SortedSample sy(y);
    for (double v : x) {
        if (sy.count_equal(v) > 0) {
            return true;
        }
    }
    return false;
}

} // namespace mwdep
