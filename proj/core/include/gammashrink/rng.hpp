#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gammashrink {

// xoshiro256++ generator. Streams are separated by the generator's 2^128
// jump, so RngHandle(seed, k) and RngHandle(seed, j) never overlap for k != j
// within 2^128 draws. Not shareable between threads; each worker owns one.
class RngHandle {
 public:
  using result_type = std::uint64_t;

  explicit RngHandle(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on [0, 1).
  double uniform();
  // Uniform on (0, 1); never returns 0.
  double uniform_open();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void jump();

  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Mixes (seed, index) into a fresh seed; used to derive per-replication seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace gammashrink
