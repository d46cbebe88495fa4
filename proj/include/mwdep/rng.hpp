#pragma once

#include <array>
#include <cstdint>

namespace mwdep {

/// Counter-based uniform stream (Philox 4x32-10). The contract: identical
/// (seed, stream_id) pairs produce identical output sequences on every
/// platform, and distinct stream_ids give statistically independent streams.
/// The seed keys the cipher; the stream id and a running block position form
/// the 128-bit counter.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : seed_(seed), stream_(stream_id) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform double strictly inside (0,1) with 53-bit resolution.
    double next_double() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Fair coin.
    bool next_bit() noexcept { return (next_u64() >> 63) != 0; }

    static constexpr const char* algorithm_name() noexcept { return "philox4x32-10"; }

    /// Raw 10-round block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t pos_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    unsigned buf_used_ = 2;
};

} // namespace mwdep
