#include "mwdep/processes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <vector>

#include "mwdep/detail/format.hpp"
#include "mwdep/normal.hpp"

namespace mwdep {

namespace {

using detail::format_number;
using detail::parse_number;

std::map<std::string, double> parse_params(const std::string& body) {
    std::map<std::string, double> params;
    std::size_t pos = 0;
    while (pos < body.size()) {
        const std::size_t comma = body.find(',', pos);
        const std::string item =
            body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("bad key=value pair in process spec: '" + item + "'");
        }
        params[item.substr(0, eq)] = parse_number(item.substr(eq + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return params;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    params.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& params, const std::string& kind) {
    if (!params.empty()) {
        throw std::invalid_argument("unknown key '" + params.begin()->first +
                                    "' for process '" + kind + "'");
    }
}

} // namespace

ProcessSpec ProcessSpec::parse(const std::string& text, std::uint64_t seed) {
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    auto params =
        colon == std::string::npos ? std::map<std::string, double>{} : parse_params(text.substr(colon + 1));

    ProcessSpec spec;
    spec.seed = seed;
    if (kind == "ar1-gauss") {
        Ar1GaussParams p;
        p.mu = take(params, "mu", p.mu);
        p.sigma = take(params, "sigma", p.sigma);
        spec.kind = p;
    } else if (kind == "lsv") {
        LsvParams p;
        p.gamma = take(params, "gamma", p.gamma);
        p.init_hi = take(params, "init_hi", p.init_hi);
        p.burn_in = static_cast<std::size_t>(take(params, "burn", 0.0));
        spec.kind = p;
    } else if (kind == "iid-normal") {
        IidNormalParams p;
        p.mu = take(params, "mu", p.mu);
        p.sigma = take(params, "sigma", p.sigma);
        spec.kind = p;
    } else if (kind == "iid-uniform") {
        IidUniformParams p;
        p.lo = take(params, "lo", p.lo);
        p.hi = take(params, "hi", p.hi);
        spec.kind = p;
    } else if (kind == "linear-binary") {
        LinearBinaryParams p;
        p.truncation = static_cast<std::size_t>(take(params, "k", 40.0));
        spec.kind = p;
    } else {
        throw std::invalid_argument("unknown process kind: '" + kind + "'");
    }
    reject_leftovers(params, kind);
    spec.validate();
    return spec;
}

std::string ProcessSpec::canonical_text() const {
    struct Visitor {
        std::string operator()(const Ar1GaussParams& p) const {
            return "ar1-gauss:mu=" + format_number(p.mu) + ",sigma=" + format_number(p.sigma);
        }
        std::string operator()(const LsvParams& p) const {
            std::string s = "lsv:gamma=" + format_number(p.gamma) +
                            ",init_hi=" + format_number(p.init_hi);
            if (p.burn_in > 0) s += ",burn=" + std::to_string(p.burn_in);
            return s;
        }
        std::string operator()(const IidNormalParams& p) const {
            return "iid-normal:mu=" + format_number(p.mu) + ",sigma=" + format_number(p.sigma);
        }
        std::string operator()(const IidUniformParams& p) const {
            return "iid-uniform:lo=" + format_number(p.lo) + ",hi=" + format_number(p.hi);
        }
        std::string operator()(const LinearBinaryParams& p) const {
            return "linear-binary:k=" + std::to_string(p.truncation);
        }
    };
    return std::visit(Visitor{}, kind);
}

void ProcessSpec::validate() const {
    struct Visitor {
        void operator()(const Ar1GaussParams& p) const {
            if (!(p.sigma > 0.0)) throw std::invalid_argument("ar1-gauss requires sigma > 0");
        }
        void operator()(const LsvParams& p) const {
            if (!(p.gamma > 0.0 && p.gamma < 1.0))
                throw std::invalid_argument("lsv requires gamma in (0,1)");
            if (!(p.init_hi > 0.0 && p.init_hi <= 1.0))
                throw std::invalid_argument("lsv requires init_hi in (0,1]");
        }
        void operator()(const IidNormalParams& p) const {
            if (!(p.sigma > 0.0)) throw std::invalid_argument("iid-normal requires sigma > 0");
        }
        void operator()(const IidUniformParams& p) const {
            if (!(p.lo < p.hi)) throw std::invalid_argument("iid-uniform requires lo < hi");
        }
        void operator()(const LinearBinaryParams& p) const {
            if (p.truncation < 1) throw std::invalid_argument("linear-binary requires k >= 1");
        }
    };
    std::visit(Visitor{}, kind);
}

TimeSeries generate(const ProcessSpec& spec, std::size_t n, std::uint64_t stream_id) {
    if (n < 1) {
        throw std::invalid_argument("sample length must be >= 1");
    }
    PhiloxStream rng(spec.seed, stream_id);
    struct Visitor {
        std::size_t n;
        PhiloxStream& rng;
        TimeSeries operator()(const Ar1GaussParams& p) const {
            return gen_ar1_gauss(n, p.mu, p.sigma, rng);
        }
        TimeSeries operator()(const LsvParams& p) const {
            return gen_lsv(n, p.gamma, p.init_hi, p.burn_in, rng);
        }
        TimeSeries operator()(const IidNormalParams& p) const {
            return gen_iid_normal(n, p.mu, p.sigma, rng);
        }
        TimeSeries operator()(const IidUniformParams& p) const {
            return gen_iid_uniform(n, p.lo, p.hi, rng);
        }
        TimeSeries operator()(const LinearBinaryParams& p) const {
            return gen_linear_binary(n, p.truncation, rng);
        }
    };
    return std::visit(Visitor{n, rng}, spec.kind);
}

TimeSeries gen_ar1_uniform(std::size_t n, PhiloxStream& rng) {
    std::vector<double> z;
    z.reserve(n);
    double state = rng.next_double();
    z.push_back(state);
    for (std::size_t i = 1; i < n; ++i) {
        const double eps = rng.next_bit() ? 1.0 : 0.0;
        state = 0.5 * (state + eps);
        z.push_back(state);
    }
    return TimeSeries(std::move(z));
}

TimeSeries gen_ar1_gauss(std::size_t n, double mu, double sigma, PhiloxStream& rng) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("sigma must be positive");
    }
    const TimeSeries z = gen_ar1_uniform(n, rng);
    std::vector<double> x;
    x.reserve(n);
    constexpr double kEps = 1e-15;
    std::size_t clamped = 0;
    for (double v : z) {
        // The chain stays inside (0,1); the clamp only guards against
        // rounding at the very edge.
        if (v <= 0.0 || v >= 1.0) {
            v = std::clamp(v, kEps, 1.0 - kEps);
            ++clamped;
        }
        x.push_back(mu + sigma * normal_quantile(v));
    }
    if (clamped > 0) {
        std::fprintf(stderr, "mwdep: gen_ar1_gauss clamped %zu chain value(s) to (0,1)\n",
                     clamped);
    }
    return TimeSeries(std::move(x));
}

double lsv_step(double x, double gamma) {
    if (x < 0.5) {
        // x (1 + 2^gamma x^gamma), written as x (1 + (2x)^gamma).
        return x * (1.0 + std::pow(2.0 * x, gamma));
    }
    return 2.0 * x - 1.0;
}

TimeSeries gen_lsv(std::size_t n, double gamma, double init_hi, std::size_t burn_in,
                   PhiloxStream& rng) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("gamma must lie in (0,1)");
    }
    double x = init_hi * rng.next_double();
    for (std::size_t b = 0; b < burn_in; ++b) {
        x = lsv_step(x, gamma);
    }
    std::vector<double> orbit;
    orbit.reserve(n);
    orbit.push_back(x);
    for (std::size_t i = 1; i < n; ++i) {
        x = lsv_step(x, gamma);
        orbit.push_back(x);
    }
    return TimeSeries(std::move(orbit));
}

TimeSeries gen_linear_binary(std::size_t n, std::size_t truncation, PhiloxStream& rng) {
    if (truncation < 1) {
        throw std::invalid_argument("truncation must be >= 1");
    }
    const std::size_t k = truncation;
    // Innovations for indices 2-K .. n, oldest first.
    std::vector<double> eps(n + k - 1);
    for (double& e : eps) {
        e = rng.next_bit() ? 0.5 : -0.5;
    }
    std::vector<double> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        double weight = 0.5;
        for (std::size_t j = 0; j < k; ++j) {
            sum += eps[i + k - 1 - j] * weight;
            weight *= 0.5;
        }
        x.push_back(sum);
    }
    return TimeSeries(std::move(x));
}

TimeSeries gen_iid_normal(std::size_t n, double mu, double sigma, PhiloxStream& rng) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("sigma must be positive");
    }
    std::vector<double> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x.push_back(mu + sigma * normal_quantile(rng.next_double()));
    }
    return TimeSeries(std::move(x));
}

TimeSeries gen_iid_uniform(std::size_t n, double lo, double hi, PhiloxStream& rng) {
    if (!(lo < hi)) {
        throw std::invalid_argument("uniform bounds require lo < hi");
    }
    std::vector<double> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x.push_back(lo + (hi - lo) * rng.next_double());
    }
    return TimeSeries(std::move(x));
}

} // namespace mwdep
