#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>

namespace urnlda {

__extension__ using uint128 = unsigned __int128;

/// xoshiro256++ generator. Cheap to seed, so every topic row and every
/// document gets its own stream per iteration; results then do not depend
/// on how work is split across threads.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept {
    std::uint64_t x = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
    // Mix the stream id a second time so nearby (seed, stream) pairs decorrelate.
    std::uint64_t mix = stream ^ 0xbb67ae8584caa73bULL;
    x ^= splitmix64(mix);
    for (auto& s : state_) s = splitmix64(x);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1); safe to pass to log().
  double uniform_pos() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n) noexcept {
    uint128 m = static_cast<uint128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<uint128>((*this)()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Stream ids for the sampler phases. A stream is (tag, iteration, index).
enum class StreamTag : std::uint64_t { init = 1, phi = 2, tokens = 3, collapsed = 4, synth = 5 };

constexpr std::uint64_t stream_id(StreamTag tag, std::uint64_t iteration,
                                  std::uint64_t index) noexcept {
  return (static_cast<std::uint64_t>(tag) << 60) ^ (iteration << 36) ^ index;
}

}  // namespace urnlda
