#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace vlcsim {

namespace detail {

constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based random stream keyed by (seed, stream, trial).
///
/// Every Monte Carlo trial constructs its own generator, so results do not
/// depend on how trials are scheduled across workers. The state update is the
/// splitmix64 sequence; stream and trial are folded in through the same
/// finalizer.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
        std::uint64_t h = seed;
        h = detail::mix64(h + detail::golden_gamma * (stream + 1));
        h = detail::mix64(h + detail::golden_gamma * (trial + 1));
        state_ = h;
    }

    std::uint64_t next_u64() {
        state_ += detail::golden_gamma;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller, cosine branch).
    double next_gaussian() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform symbol draw; bound must be a power of two (exact, no bias).
    std::uint32_t next_symbol(std::uint32_t pow2_bound) {
        return static_cast<std::uint32_t>(next_u64() & (pow2_bound - 1));
    }

  private:
    std::uint64_t state_;
};

}  // namespace vlcsim
