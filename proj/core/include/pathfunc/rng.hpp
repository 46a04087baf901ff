#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pathfunc {

/// Identifies one reproducible random stream: the same (seed, stream_id)
/// always yields the same draws, independent of thread scheduling.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// xoshiro256** seeded by splitmix64 over (seed, stream_id, substream).
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(RngStream stream, std::uint64_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on (0,1), never exactly 0 or 1.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

/// Source of the randomness a chain step consumes.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  /// Standard normal draw for noise column `column`.
  virtual double normal(std::size_t column) = 0;
  /// Fair +1/-1 coin.
  virtual double sign() = 0;
};

/// Per-column independent generators so that column j of a d1-column model
/// sees the same draws regardless of how many other columns exist.
class StreamNoise final : public NoiseSource {
 public:
  static constexpr std::size_t kMaxColumns = 4;

  explicit StreamNoise(RngStream stream);

  double normal(std::size_t column) override;
  double sign() override;

 private:
  struct Column {
    Xoshiro256 engine;
    double spare = 0.0;
    bool has_spare = false;
  };
  std::array<Column, kMaxColumns> columns_;
  Xoshiro256 coin_;
  std::uint64_t coin_bits_ = 0;
  int coin_left_ = 0;
};

/// Deterministic noise for tests and exact enumeration of two-point laws.
class FixedNoise final : public NoiseSource {
 public:
  FixedNoise(double normal_value, double sign_value) : normal_(normal_value), sign_(sign_value) {}
  double normal(std::size_t) override { return normal_; }
  double sign() override { return sign_; }

 private:
  double normal_;
  double sign_;
};

/// Standard normal via the Marsaglia polar method.
/// Returns one draw and stores the second in `spare`.
double polar_normal(Xoshiro256& engine, double& spare, bool& has_spare) noexcept;

}  // namespace pathfunc
