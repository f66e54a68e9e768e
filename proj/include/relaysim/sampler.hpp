#ifndef RELAYSIM_SAMPLER_HPP
#define RELAYSIM_SAMPLER_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace relaysim {

// One realization of the three unit-variance CN(0,1) channel surrogates.
struct FadingDraw {
  std::complex<double> w_sd;
  std::complex<double> w_sr;
  std::complex<double> w_rd;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in (0, 1]; never 0 so log() below is safe.
inline double uniform_open0(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Polar sample of CN(0,1): |z|^2 ~ Exp(1), phase uniform. Real and
// imaginary parts each have variance 1/2. Hand-rolled so the stream is
// fully specified by mt19937_64 output, independent of the stdlib's
// distribution implementations.
inline std::complex<double> complex_normal(std::mt19937_64& rng) {
  const double r = std::sqrt(-std::log(uniform_open0(rng)));
  const double phi = 2.0 * std::numbers::pi * uniform_open0(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace detail

// Deterministic stream of i.i.d. CN(0,1) triples. Sub-streams derived
// from (seed, block index) let parallel workers reproduce the exact
// sequential stream blockwise.
class FadingSampler {
 public:
  explicit FadingSampler(std::uint64_t seed) : rng_(mix(seed, 0)) {}
  FadingSampler(std::uint64_t seed, std::uint64_t block) : rng_(mix(seed, block)) {}

  FadingDraw draw() {
    FadingDraw d;
    d.w_sd = detail::complex_normal(rng_);
    d.w_sr = detail::complex_normal(rng_);
    d.w_rd = detail::complex_normal(rng_);
    return d;
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t s = seed ^ (block * 0xd1342543de82ef95ULL);
    std::uint64_t a = detail::splitmix64(s);
    std::uint64_t b = detail::splitmix64(s);
    return a ^ (b << 1);
  }

  std::mt19937_64 rng_;
};

}  // namespace relaysim

#endif  // RELAYSIM_SAMPLER_HPP
