#ifndef RELAYSIM_SWEEP_HPP
#define RELAYSIM_SWEEP_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/rate.hpp"

namespace relaysim {

enum class SweepVariable { Alpha, Theta, DeltaS, DeltaR, Snr, BlockLength };

inline const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::Alpha: return "alpha";
    case SweepVariable::Theta: return "theta";
    case SweepVariable::DeltaS: return "delta_s";
    case SweepVariable::DeltaR: return "delta_r";
    case SweepVariable::Snr: return "snr";
    case SweepVariable::BlockLength: return "m";
  }
  return "?";
}

inline SweepVariable parse_sweep_variable(const std::string& s) {
  if (s == "alpha") return SweepVariable::Alpha;
  if (s == "theta") return SweepVariable::Theta;
  if (s == "delta_s") return SweepVariable::DeltaS;
  if (s == "delta_r") return SweepVariable::DeltaR;
  if (s == "snr") return SweepVariable::Snr;
  if (s == "m") return SweepVariable::BlockLength;
  throw std::invalid_argument("unknown sweep variable: " + s);
}

// Applies one grid value to a (channel, config) base point. SNR sweeps set
// the total power to snr * n0 and require a total-power spec.
inline void apply_sweep_value(SweepVariable var, double value, ChannelParams& ch,
                              SystemConfig& cfg) {
  switch (var) {
    case SweepVariable::Alpha: cfg.alpha = value; break;
    case SweepVariable::Theta:
      if (cfg.power.mode != PowerSpec::Mode::TotalSplit)
        throw std::invalid_argument("theta sweep requires a total-power spec");
      cfg.power.theta = value;
      break;
    case SweepVariable::DeltaS: cfg.delta_s = value; break;
    case SweepVariable::DeltaR: cfg.delta_r = value; break;
    case SweepVariable::Snr:
      if (cfg.power.mode != PowerSpec::Mode::TotalSplit)
        throw std::invalid_argument("snr sweep requires a total-power spec");
      cfg.power.p_total = value * ch.n0;
      break;
    case SweepVariable::BlockLength: {
      const double rounded = std::round(value);
      if (std::abs(rounded - value) > 1e-9)
        throw std::invalid_argument("m sweep values must be integers");
      cfg.m = static_cast<int>(rounded);
      break;
    }
  }
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::Alpha;
  std::vector<double> grid;
  ChannelParams channel;
  SystemConfig base;
  std::size_t n_samples = 200000;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void validate() const {
    channel.validate();
    if (grid.empty()) throw std::invalid_argument("sweep grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (!(grid[i] > grid[i - 1]))
        throw std::invalid_argument("sweep grid must be strictly increasing");
    if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  }
};

struct SweepRow {
  double value = 0.0;
  std::optional<RateEstimate> rate;
  std::string error;  // nonempty when this grid point was invalid
};

struct SweepResult {
  SweepVariable variable = SweepVariable::Alpha;
  std::vector<SweepRow> rows;
  std::optional<double> argmax;  // grid value with largest mean; ties to the smaller value
  bool statistically_tied = false;
};

// Evaluates the rate at every grid point with the same master seed so all
// points share one draw stream. Invalid points become row-level errors.
inline SweepResult sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult out;
  out.variable = spec.variable;
  out.rows.reserve(spec.grid.size());
  for (double v : spec.grid) {
    SweepRow row;
    row.value = v;
    try {
      ChannelParams ch = spec.channel;
      SystemConfig cfg = spec.base;
      apply_sweep_value(spec.variable, v, ch, cfg);
      row.rate = rate_estimate(ch, cfg, spec.n_samples, spec.seed, spec.workers);
    } catch (const std::invalid_argument& e) {
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }

  double best = -1.0, second = -1.0;
  double best_se = 0.0, second_se = 0.0;
  for (const SweepRow& row : out.rows) {
    if (!row.rate) continue;
    if (row.rate->mean > best) {
      second = best;
      second_se = best_se;
      best = row.rate->mean;
      best_se = row.rate->std_error;
      out.argmax = row.value;
    } else if (row.rate->mean > second) {
      second = row.rate->mean;
      second_se = row.rate->std_error;
    }
  }
  if (second >= 0.0) {
    const double combined = std::hypot(best_se, second_se);
    out.statistically_tied = (best - second) < combined;
  }
  return out;
}

// Maximizes a noisy scalar objective: coarse grid pass, then golden-section
// refinement inside the bracketing cell. The objective must use common
// random numbers (same seed at every point) for the refinement to be
// meaningful. Ties break toward the smaller argument.
//
// F: RateEstimate(double x)
template <class F>
std::pair<double, RateEstimate> optimize_scalar(F&& objective, double lo, double hi, int budget) {
  if (!(lo < hi)) throw std::invalid_argument("optimize_scalar requires lo < hi");
  if (budget < 3) throw std::invalid_argument("optimize_scalar requires budget >= 3");

  const int n_grid = std::max(3, budget / 2);
  double best_x = lo;
  RateEstimate best_r;
  best_r.mean = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  std::vector<double> xs(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (n_grid - 1);
    RateEstimate r = objective(xs[i]);
    if (r.mean > best_r.mean) {
      best_r = r;
      best_x = xs[i];
      best_i = i;
    }
  }

  double a = xs[std::max(0, best_i - 1)];
  double b = xs[std::min(n_grid - 1, best_i + 1)];
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  RateEstimate r1 = objective(x1);
  RateEstimate r2 = objective(x2);
  int evals = n_grid + 2;
  while (evals < budget) {
    if (r1.mean >= r2.mean) {
      b = x2;
      x2 = x1;
      r2 = r1;
      x1 = b - invphi * (b - a);
      r1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      r1 = r2;
      x2 = a + invphi * (b - a);
      r2 = objective(x2);
    }
    ++evals;
  }
  if (r1.mean > best_r.mean || (r1.mean == best_r.mean && x1 < best_x)) {
    best_r = r1;
    best_x = x1;
  }
  if (r2.mean > best_r.mean || (r2.mean == best_r.mean && x2 < best_x)) {
    best_r = r2;
    best_x = x2;
  }
  return {best_x, best_r};
}

// Default sweep grids; resolutions chosen to resolve the optimum visually.
inline std::vector<double> default_alpha_grid(Scheme scheme, int points = 25) {
  const double hi = (scheme == Scheme::ParallelDF) ? 0.98 : 0.5;
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = 0.02 + (hi - 0.02) * static_cast<double>(i) / (points - 1);
  return g;
}

inline std::vector<double> default_theta_grid(int points = 21) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = 0.05 + (1.0 - 0.05) * static_cast<double>(i) / (points - 1);
  return g;
}

inline std::vector<double> log_spaced_grid(double lo, double hi, int per_decade = 30) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log grid requires 0 < lo < hi");
  const double decades = std::log10(hi / lo);
  const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(10.0, decades * static_cast<double>(i) / (n - 1));
  g.back() = hi;
  return g;
}

}  // namespace relaysim

#endif  // RELAYSIM_SWEEP_HPP
