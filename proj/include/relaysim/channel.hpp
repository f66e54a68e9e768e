#ifndef RELAYSIM_CHANNEL_HPP
#define RELAYSIM_CHANNEL_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace relaysim {

enum class Scheme { AF, RepetitionDF, ParallelDF, Direct };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::AF: return "af";
    case Scheme::RepetitionDF: return "repetition_df";
    case Scheme::ParallelDF: return "parallel_df";
    case Scheme::Direct: return "direct";
  }
  return "?";
}

inline Scheme parse_scheme(const std::string& s) {
  if (s == "af" || s == "AF") return Scheme::AF;
  if (s == "repetition_df" || s == "repdf" || s == "dfr") return Scheme::RepetitionDF;
  if (s == "parallel_df" || s == "pardf" || s == "dfp") return Scheme::ParallelDF;
  if (s == "direct") return Scheme::Direct;
  throw std::invalid_argument("unknown scheme: " + s);
}

// Rayleigh fading standard deviations of the three links plus the noise
// variance per complex sample. Everything downstream is a function of
// these second-order statistics only.
struct ChannelParams {
  double sigma_sd = 1.0;
  double sigma_sr = 1.0;
  double sigma_rd = 1.0;
  double n0 = 1.0;

  void validate() const {
    auto pos = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    };
    pos(sigma_sd, "sigma_sd");
    pos(sigma_sr, "sigma_sr");
    pos(sigma_rd, "sigma_rd");
    pos(n0, "n0");
  }
};

// Per-node powers, given either explicitly or as a total-power split
// P_s = theta*P, P_r = (1-theta)*P.
struct PowerSpec {
  enum class Mode { Explicit, TotalSplit };
  Mode mode = Mode::Explicit;
  double p_s = 1.0;
  double p_r = 1.0;
  double p_total = 2.0;
  double theta = 0.5;

  static PowerSpec explicit_powers(double ps, double pr) {
    PowerSpec p;
    p.mode = Mode::Explicit;
    p.p_s = ps;
    p.p_r = pr;
    return p;
  }
  static PowerSpec total_split(double total, double theta) {
    PowerSpec p;
    p.mode = Mode::TotalSplit;
    p.p_total = total;
    p.theta = theta;
    return p;
  }
};

inline std::pair<double, double> resolve_power(const PowerSpec& spec) {
  if (spec.mode == PowerSpec::Mode::Explicit) {
    if (spec.p_s < 0.0 || spec.p_r < 0.0 || !std::isfinite(spec.p_s) || !std::isfinite(spec.p_r))
      throw std::invalid_argument("explicit powers must be nonnegative and finite");
    return {spec.p_s, spec.p_r};
  }
  if (!(spec.theta > 0.0) || spec.theta > 1.0)
    throw std::invalid_argument("theta must lie in (0, 1]");
  if (spec.p_total < 0.0 || !std::isfinite(spec.p_total))
    throw std::invalid_argument("p_total must be nonnegative and finite");
  return {spec.theta * spec.p_total, (1.0 - spec.theta) * spec.p_total};
}

// One experiment point: block length, relay time fraction, scheme,
// training fractions and transmit powers.
struct SystemConfig {
  int m = 100;
  double alpha = 0.5;
  Scheme scheme = Scheme::AF;
  double delta_s = 0.1;
  double delta_r = 0.1;
  PowerSpec power;
  // Theorem-3 third ratio as printed uses delta_s in the relay pilot term;
  // the consistent reading uses delta_r. Default is the consistent one.
  bool literal_paper_parallel = false;

  double ps() const { return resolve_power(power).first; }
  double pr() const { return resolve_power(power).second; }

  void validate() const {
    const int min_m = (scheme == Scheme::Direct) ? 2 : 3;
    if (m < min_m)
      throw std::invalid_argument("m must be >= " + std::to_string(min_m) +
                                  " for scheme " + scheme_name(scheme));
    if (delta_s < 0.0 || delta_s > 1.0) throw std::invalid_argument("delta_s must lie in [0, 1]");
    if (delta_r < 0.0 || delta_r > 1.0) throw std::invalid_argument("delta_r must lie in [0, 1]");
    switch (scheme) {
      case Scheme::AF:
      case Scheme::RepetitionDF:
        if (!(alpha > 0.0) || alpha > 0.5)
          throw std::invalid_argument("alpha must lie in (0, 1/2] for AF/repetition DF");
        break;
      case Scheme::ParallelDF:
        if (!(alpha > 0.0) || !(alpha < 1.0))
          throw std::invalid_argument("alpha must lie in (0, 1) for parallel DF");
        break;
      case Scheme::Direct:
        break;  // alpha ignored
    }
    resolve_power(power);  // validates the power spec
  }
};

// Second-order statistics of the single-pilot MMSE channel estimate:
// var_hat + var_err = sigma^2.
struct TrainingStats {
  double var_hat = 0.0;
  double var_err = 0.0;
};

inline TrainingStats mmse_training_stats(double sigma, double delta, int m, double p, double n0) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw std::invalid_argument("n0 must be positive");
  if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("delta must lie in [0, 1]");
  if (p < 0.0) throw std::invalid_argument("p must be nonnegative");
  const double s2 = sigma * sigma;
  const double pilot = s2 * delta * m * p;
  TrainingStats out;
  out.var_err = s2 * n0 / (pilot + n0);
  out.var_hat = s2 * pilot / (pilot + n0);
  return out;
}

// Per-symbol data powers after the pilot energy is carved out. The direct
// scheme spends one pilot symbol and stretches the rest over m-1 symbols.
struct DataPhasePowers {
  double ps_prime = 0.0;
  double pr_prime = 0.0;
  double ps1_prime = 0.0;
};

inline DataPhasePowers data_phase_powers(const SystemConfig& cfg) {
  cfg.validate();
  const auto [p_s, p_r] = resolve_power(cfg.power);
  const double m = static_cast<double>(cfg.m);
  DataPhasePowers out;
  if (cfg.scheme == Scheme::Direct) {
    out.ps_prime = (1.0 - cfg.delta_s) * m * p_s / (m - 1.0);
    return out;
  }
  out.ps_prime = (1.0 - cfg.delta_s) * m * p_s / (m - 2.0);
  out.pr_prime = (1.0 - cfg.delta_r) * m * p_r / ((m - 2.0) * cfg.alpha);
  out.ps1_prime = (1.0 - cfg.delta_s) * m * p_s / ((m - 2.0) * (1.0 - cfg.alpha));
  return out;
}

}  // namespace relaysim

#endif  // RELAYSIM_CHANNEL_HPP
