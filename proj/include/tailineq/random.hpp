#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tailineq/distributions.hpp"

namespace tailineq {

// SplitMix64 (Steele, Lea, Flood 2014). Used to expand a single 64-bit seed
// into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna). State is seeded from SplitMix64(seed);
// jump() advances 2^128 steps, giving non-overlapping streams.
// Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();
  // Uniform on [0, 1) with 53 random bits: (next >> 11) * 2^-53.
  double uniform();
  void jump();
  // Copy advanced by `index` jumps.
  Xoshiro256 stream(unsigned index) const;

 private:
  std::array<std::uint64_t, 4> s_;
};

// Inverse-transform draw for a uniform variate in [0, 1).
double draw_from_uniform(double uniform, const TailParams& params);

// n inverse-transform draws, multiplied by `scale`. Deterministic in
// (params, n, seed, scale).
std::vector<double> simulate(const TailParams& params, std::size_t n,
                             std::uint64_t seed, double scale = 1.0);

// One value per line, 17 significant digits.
void write_values(const std::string& path, const std::vector<double>& values);

}  // namespace tailineq
