#include "tailineq/random.hpp"

#include <cstdio>
#include <fstream>

namespace tailineq {
namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& word : s_) word = sm.next();
}

Xoshiro256::result_type Xoshiro256::operator()() {
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

double Xoshiro256::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

void Xoshiro256::jump() {
  static constexpr std::uint64_t kJump[] = {
      0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
      0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (std::uint64_t word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b)) {
        for (int i = 0; i < 4; ++i) acc[i] ^= s_[i];
      }
      (*this)();
    }
  }
  s_ = acc;
}

Xoshiro256 Xoshiro256::stream(unsigned index) const {
  Xoshiro256 copy = *this;
  for (unsigned i = 0; i < index; ++i) copy.jump();
  return copy;
}

double draw_from_uniform(double uniform, const TailParams& params) {
  return tail_quantile(uniform, params);
}

std::vector<double> simulate(const TailParams& params, std::size_t n,
                             std::uint64_t seed, double scale) {
  if (!is_valid(params)) throw DomainError("simulate: invalid parameters");
  if (const auto* p = std::get_if<Ppd>(&params); p && !ppd_density_positive(*p)) {
    throw DomainError("simulate: PPD parameters do not give a positive density");
  }
  if (n == 0) throw DomainError("simulate: n must be >= 1");
  if (!(scale > 0)) throw DomainError("simulate: scale must be positive");

  Xoshiro256 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(scale * draw_from_uniform(rng.uniform(), params));
  }
  return out;
}

void write_values(const std::string& path, const std::vector<double>& values) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IngestError("cannot open " + path + " for writing");
  char buf[40];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    os << buf;
  }
  if (!os) throw IngestError("write failed for " + path);
}

}  // namespace tailineq
