#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace osl {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// The 64-bit seed is the key. The 128-bit counter is split into a 64-bit
/// stream index (high half) and a 64-bit block index (low half), so
/// `Philox(seed, b)` gives replication b its own stream regardless of which
/// thread runs it. Output is bit-stable across platforms and releases.
class Philox {
  public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() noexcept;
    /// Uniform on (0, 1].
    double uniform01_open_low() noexcept { return 1.0 - uniform01(); }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [0, bound) by rejection, bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;
    /// Standard normal via Box-Muller (one draw per call, no cached pair).
    double normal() noexcept;

    /// Ten-round Philox bijection, exposed for known-answer tests.
    static Block block(Block counter, Key key) noexcept;

  private:
    void refill() noexcept;

    Key key_;
    std::uint64_t stream_;
    std::uint64_t next_block_ = 0;
    Block buffer_{};
    int used_ = 4;  // 32-bit words consumed from buffer_
};

/// Independent stream for replication `index` under base `seed`.
inline Philox stream(std::uint64_t seed, std::uint64_t index) noexcept { return Philox{seed, index}; }

}  // namespace osl
