#include "pathfunc/rng.hpp"

#include <cmath>

#include "pathfunc/error.hpp"

namespace pathfunc {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Xoshiro256::Xoshiro256(RngStream stream, std::uint64_t substream) {
  // Mix the three keys through separate splitmix rounds so that neighbouring
  // stream ids land on unrelated states.
  std::uint64_t x = stream.seed;
  std::uint64_t k = splitmix64(x);
  x = k ^ (stream.stream_id * 0xd1b54a32d192ed03ULL);
  k = splitmix64(x);
  x = k ^ (substream * 0x8cb92ba72f3d8dd7ULL);
  for (auto& word : s_) word = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

double polar_normal(Xoshiro256& engine, double& spare, bool& has_spare) noexcept {
  if (has_spare) {
    has_spare = false;
    return spare;
  }
  double u, v, s;
  do {
    u = 2.0 * engine.uniform_open() - 1.0;
    v = 2.0 * engine.uniform_open() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare = v * f;
  has_spare = true;
  return u * f;
}

StreamNoise::StreamNoise(RngStream stream)
    : columns_{Column{Xoshiro256(stream, 1)}, Column{Xoshiro256(stream, 2)},
               Column{Xoshiro256(stream, 3)}, Column{Xoshiro256(stream, 4)}},
      coin_(stream, 0) {}

double StreamNoise::normal(std::size_t column) {
  if (column >= kMaxColumns) throw PreconditionError("StreamNoise: too many noise columns");
  Column& c = columns_[column];
  return polar_normal(c.engine, c.spare, c.has_spare);
}

double StreamNoise::sign() {
  if (coin_left_ == 0) {
    coin_bits_ = coin_();
    coin_left_ = 64;
  }
  const double s = (coin_bits_ & 1u) ? 1.0 : -1.0;
  coin_bits_ >>= 1;
  --coin_left_;
  return s;
}

}  // namespace pathfunc
