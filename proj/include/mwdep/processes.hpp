#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "mwdep/rng.hpp"
#include "mwdep/series.hpp"

namespace mwdep {

struct Ar1GaussParams {
    double mu = 0.0;
    double sigma = 1.0;
};

struct LsvParams {
    double gamma = 0.25;
    double init_hi = 0.05;
    std::size_t burn_in = 0;
};

struct IidNormalParams {
    double mu = 0.0;
    double sigma = 1.0;
};

struct IidUniformParams {
    double lo = 0.0;
    double hi = 1.0;
};

struct LinearBinaryParams {
    std::size_t truncation = 40;
};

/// Tagged description of one data-generating process plus its base seed.
/// Canonical text form: kind ":" key "=" value ("," key "=" value)*, e.g.
///   ar1-gauss:mu=0,sigma=2
///   lsv:gamma=0.25
///   iid-normal:mu=0.2,sigma=1
///   iid-uniform:lo=0,hi=1
///   linear-binary:k=40
struct ProcessSpec {
    std::variant<Ar1GaussParams, LsvParams, IidNormalParams, IidUniformParams,
                 LinearBinaryParams>
        kind;
    std::uint64_t seed = 0;

    static ProcessSpec parse(const std::string& text, std::uint64_t seed = 0);
    [[nodiscard]] std::string canonical_text() const;
    void validate() const;
};

/// Dispatch to the generator named by the spec, drawing from the stream
/// (spec.seed, stream_id). Pure function of its arguments.
[[nodiscard]] TimeSeries generate(const ProcessSpec& spec, std::size_t n,
                                  std::uint64_t stream_id);

/// Uniform-marginal AR(1) chain: Z_1 ~ U[0,1], Z_{k+1} = (Z_k + eps_{k+1})/2
/// with Bernoulli(1/2) innovations. Values stay in [0,1]; the uniform law is
/// the invariant distribution of the kernel, so the chain is stationary.
[[nodiscard]] TimeSeries gen_ar1_uniform(std::size_t n, PhiloxStream& rng);

/// Gaussian image of the AR(1) chain: mu + sigma * Phi^{-1}(Z_i). The marginal
/// is N(mu, sigma^2) but the sequence is not a Gaussian process.
[[nodiscard]] TimeSeries gen_ar1_gauss(std::size_t n, double mu, double sigma,
                                       PhiloxStream& rng);

/// One application of the intermittent interval map:
///   x (1 + (2x)^gamma)  for x in [0, 1/2),   2x - 1  for x in [1/2, 1].
/// The map has a neutral fixed point at 0 and a jump at 1/2.
[[nodiscard]] double lsv_step(double x, double gamma);

/// Forward orbit of the intermittent map started uniformly on [0, init_hi],
/// near the neutral fixed point. No burn-in by default.
[[nodiscard]] TimeSeries gen_lsv(std::size_t n, double gamma, double init_hi,
                                 std::size_t burn_in, PhiloxStream& rng);

/// Causal binary linear process X_i = sum_{k=0}^{K-1} eps_{i-k} / 2^{k+1} with
/// innovations +-1/2; the truncation error of the infinite series is bounded
/// by 2^{-K-1} deterministically.
[[nodiscard]] TimeSeries gen_linear_binary(std::size_t n, std::size_t truncation,
                                           PhiloxStream& rng);

/// iid normal draws via the quantile transform of uniform draws, so a single
/// uniform-stream contract fixes all outputs across platforms.
[[nodiscard]] TimeSeries gen_iid_normal(std::size_t n, double mu, double sigma,
                                        PhiloxStream& rng);

[[nodiscard]] TimeSeries gen_iid_uniform(std::size_t n, double lo, double hi,
                                         PhiloxStream& rng);

} // namespace mwdep
