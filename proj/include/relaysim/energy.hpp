#ifndef RELAYSIM_ENERGY_HPP
#define RELAYSIM_ENERGY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/rate.hpp"
#include "relaysim/sweep.hpp"

namespace relaysim {

// One point of a normalized bit-energy curve: eb_n0 = snr / rate.mean.
struct BitEnergyPoint {
  double snr = 0.0;
  RateEstimate rate;
  double eb_n0 = 0.0;
  // set when the rate is statistically indistinguishable from zero and
  // eb_n0 would be Monte-Carlo noise
  bool unreliable = false;
};

struct BitEnergyCurve {
  std::vector<BitEnergyPoint> points;
  // index of the reliable point with smallest eb_n0, -1 if none
  int min_index = -1;
};

namespace detail {
inline BitEnergyPoint bit_energy_point(const ChannelParams& ch, const SystemConfig& tmpl,
                                       double snr, std::size_t n, std::uint64_t seed,
                                       unsigned workers) {
  if (!(snr > 0.0)) throw std::invalid_argument("snr must be positive");
  if (tmpl.power.mode != PowerSpec::Mode::TotalSplit)
    throw std::invalid_argument("bit-energy analysis requires a total-power spec");
  SystemConfig cfg = tmpl;
  cfg.power.p_total = snr * ch.n0;
  BitEnergyPoint pt;
  pt.snr = snr;
  pt.rate = rate_estimate(ch, cfg, n, seed, workers);
  if (pt.rate.mean <= 4.0 * pt.rate.std_error || pt.rate.mean <= 0.0) {
    pt.unreliable = true;
    pt.eb_n0 = std::numeric_limits<double>::infinity();
  } else {
    pt.eb_n0 = snr / pt.rate.mean;
  }
  return pt;
}
}  // namespace detail

// Evaluates eb_n0(snr) over a grid under common random numbers.
inline BitEnergyCurve bit_energy_curve(const ChannelParams& ch, const SystemConfig& tmpl,
                                       const std::vector<double>& snr_grid, std::size_t n,
                                       std::uint64_t seed, unsigned workers = 1) {
  if (snr_grid.empty()) throw std::invalid_argument("snr grid must be nonempty");
  BitEnergyCurve curve;
  curve.points.reserve(snr_grid.size());
  double best = std::numeric_limits<double>::infinity();
  for (double snr : snr_grid) {
    BitEnergyPoint pt = detail::bit_energy_point(ch, tmpl, snr, n, seed, workers);
    if (!pt.unreliable && pt.eb_n0 < best) {
      best = pt.eb_n0;
      curve.min_index = static_cast<int>(curve.points.size());
    }
    curve.points.push_back(pt);
  }
  return curve;
}

// Locates the minimum normalized bit energy: log-spaced coarse grid, then
// golden-section refinement on log-SNR. Deterministic for a fixed seed.
struct MinBitEnergy {
  double snr_star = 0.0;
  double eb_n0_min = 0.0;
  RateEstimate rate;
};

inline MinBitEnergy min_bit_energy(const ChannelParams& ch, const SystemConfig& tmpl,
                                   double snr_lo, double snr_hi, int budget, std::size_t n,
                                   std::uint64_t seed, unsigned workers = 1) {
  if (!(snr_lo > 0.0) || !(snr_hi > snr_lo))
    throw std::invalid_argument("min_bit_energy requires 0 < snr_lo < snr_hi");
  if (budget < 5) throw std::invalid_argument("min_bit_energy requires budget >= 5");
  MinBitEnergy out;
  out.eb_n0_min = std::numeric_limits<double>::infinity();
  // negated eb_n0 as maximization objective on log-snr
  auto objective = [&](double log_snr) {
    BitEnergyPoint pt = detail::bit_energy_point(ch, tmpl, std::exp(log_snr), n, seed, workers);
    RateEstimate r = pt.rate;
    if (!pt.unreliable && pt.eb_n0 < out.eb_n0_min) {
      out.eb_n0_min = pt.eb_n0;
      out.snr_star = pt.snr;
      out.rate = pt.rate;
    }
    r.mean = pt.unreliable ? -std::numeric_limits<double>::infinity() : -pt.eb_n0;
    return r;
  };
  optimize_scalar(objective, std::log(snr_lo), std::log(snr_hi), budget);
  if (!std::isfinite(out.eb_n0_min))
    throw std::runtime_error("all bit-energy evaluations were unreliable in the given range");
  return out;
}

}  // namespace relaysim

#endif  // RELAYSIM_ENERGY_HPP
