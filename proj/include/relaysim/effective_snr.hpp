#ifndef RELAYSIM_EFFECTIVE_SNR_HPP
#define RELAYSIM_EFFECTIVE_SNR_HPP

#include <cmath>
#include <stdexcept>

#include "relaysim/channel.hpp"
#include "relaysim/sampler.hpp"

namespace relaysim {

// f(x,y) = xy/(1+x+y). Never exceeds min(x,y).
inline double f_combine(double x, double y) {
  const double den = 1.0 + x + y;
  return x * y / den;
}

// q(a,b,c,d) = (1+a) b (1+c) / (1+c+d).
inline double q_combine(double a, double b, double c, double d) {
  return (1.0 + a) * b * (1.0 + c) / (1.0 + c + d);
}

// Per-realization effective SNRs: each gamma is a deterministic
// coefficient times the matching |w|^2. The coefficients are computed
// once per configuration; the draw only supplies the |w|^2 factors.
struct EffectiveSnrSet {
  double gamma_sd = 0.0;
  double gamma_sr = 0.0;
  double gamma_sd_r = 0.0;
  double gamma_rd = 0.0;
  // parallel-DF ratios
  double gamma_sd1 = 0.0;
  double gamma_sr1 = 0.0;
  double gamma_rd1 = 0.0;
};

namespace detail {
// Zero transmit power makes some denominators vanish; the ratio is then 0.
inline double safe_ratio(double num, double den) {
  if (den == 0.0) return 0.0;
  return num / den;
}
}  // namespace detail

// Deterministic coefficients of the overlapped (AF / repetition DF) ratios.
struct OverlappedSnrCoeffs {
  double c_sd = 0.0;    // multiplies |w_sd|^2
  double c_sr = 0.0;    // multiplies |w_sr|^2
  double c_sd_r = 0.0;  // multiplies |w_sd|^2
  double c_rd = 0.0;    // multiplies |w_rd|^2
};

inline OverlappedSnrCoeffs overlapped_snr_coeffs(const ChannelParams& ch, const SystemConfig& cfg) {
  ch.validate();
  cfg.validate();
  if (cfg.scheme != Scheme::AF && cfg.scheme != Scheme::RepetitionDF)
    throw std::invalid_argument("overlapped effective SNRs require AF or repetition DF");
  const auto [p_s, p_r] = resolve_power(cfg.power);
  const double m = cfg.m, n0 = ch.n0;
  const double ds = cfg.delta_s, dr = cfg.delta_r, a = cfg.alpha;
  const double s2sd = ch.sigma_sd * ch.sigma_sd;
  const double s2sr = ch.sigma_sr * ch.sigma_sr;
  const double s2rd = ch.sigma_rd * ch.sigma_rd;
  const double es = ds * m * p_s;   // source pilot energy
  const double er = dr * m * p_r;   // relay pilot energy
  const double ksd = s2sd * es + n0;
  const double ksr = s2sr * es + n0;
  const double krd = s2rd * er + n0;

  OverlappedSnrCoeffs c;
  c.c_sd = detail::safe_ratio(ds * (1.0 - ds) * m * m * p_s * p_s * s2sd * s2sd,
                              (1.0 - ds) * m * p_s * s2sd * n0 + (m - 2.0) * ksd * n0);
  c.c_sr = detail::safe_ratio(ds * (1.0 - ds) * m * m * p_s * p_s * s2sr * s2sr,
                              (1.0 - ds) * m * p_s * s2sr * n0 + (m - 2.0) * ksr * n0);
  // Shared denominator of the relay-slot ratios.
  const double d_shared = (m - 2.0) * ksd * krd * n0 +
                          (1.0 - dr) * m * p_r * s2rd * n0 * ksd / a +
                          (1.0 - ds) * m * p_s * s2sd * n0 * krd;
  c.c_sd_r = detail::safe_ratio(ds * (1.0 - ds) * m * m * p_s * p_s * s2sd * s2sd * krd, d_shared);
  c.c_rd = detail::safe_ratio(dr * (1.0 - dr) * m * m * p_r * p_r * s2rd * s2rd * ksd / a, d_shared);
  return c;
}

// Deterministic coefficients of the parallel-DF ratios.
struct ParallelSnrCoeffs {
  double c_sd1 = 0.0;
  double c_sr1 = 0.0;
  double c_rd1 = 0.0;
};

inline ParallelSnrCoeffs parallel_snr_coeffs(const ChannelParams& ch, const SystemConfig& cfg) {
  ch.validate();
  cfg.validate();
  if (cfg.scheme != Scheme::ParallelDF)
    throw std::invalid_argument("parallel effective SNRs require parallel DF");
  const auto [p_s, p_r] = resolve_power(cfg.power);
  const double m = cfg.m, n0 = ch.n0;
  const double ds = cfg.delta_s, dr = cfg.delta_r, a = cfg.alpha;
  const double s2sd = ch.sigma_sd * ch.sigma_sd;
  const double s2sr = ch.sigma_sr * ch.sigma_sr;
  const double s2rd = ch.sigma_rd * ch.sigma_rd;

  ParallelSnrCoeffs c;
  c.c_sd1 = detail::safe_ratio(
      ds * (1.0 - ds) * m * m * p_s * p_s * s2sd * s2sd / (1.0 - a),
      (1.0 - ds) * m * p_s * s2sd * n0 / (1.0 - a) + (m - 2.0) * (s2sd * ds * m * p_s + n0) * n0);
  c.c_sr1 = detail::safe_ratio(
      ds * (1.0 - ds) * m * m * p_s * p_s * s2sr * s2sr / (1.0 - a),
      (1.0 - ds) * m * p_s * s2sr * n0 / (1.0 - a) + (m - 2.0) * (s2sr * ds * m * p_s + n0) * n0);
  // The relay pilot term uses delta_r; literal_paper_parallel reproduces
  // the printed delta_s for comparison.
  const double d_pilot = cfg.literal_paper_parallel ? ds : dr;
  c.c_rd1 = detail::safe_ratio(
      dr * (1.0 - dr) * m * m * p_r * p_r * s2rd * s2rd / a,
      (1.0 - dr) * m * p_r * s2rd * n0 / a + (m - 2.0) * (s2rd * d_pilot * m * p_r + n0) * n0);
  return c;
}

// Direct-transmission coefficient: one pilot symbol, m-1 data symbols,
// same worst-case-noise construction with the relay removed.
inline double direct_snr_coeff(const ChannelParams& ch, const SystemConfig& cfg) {
  ch.validate();
  cfg.validate();
  const double p_s = resolve_power(cfg.power).first;
  const double m = cfg.m, n0 = ch.n0, ds = cfg.delta_s;
  const double s2 = ch.sigma_sd * ch.sigma_sd;
  return detail::safe_ratio(ds * (1.0 - ds) * m * m * p_s * p_s * s2 * s2,
                            (1.0 - ds) * m * p_s * s2 * n0 +
                                (m - 1.0) * (s2 * ds * m * p_s + n0) * n0);
}

inline EffectiveSnrSet effective_snrs_overlapped(const ChannelParams& ch, const SystemConfig& cfg,
                                                 const FadingDraw& draw) {
  const OverlappedSnrCoeffs c = overlapped_snr_coeffs(ch, cfg);
  const double wsd2 = std::norm(draw.w_sd);
  const double wsr2 = std::norm(draw.w_sr);
  const double wrd2 = std::norm(draw.w_rd);
  EffectiveSnrSet s;
  s.gamma_sd = c.c_sd * wsd2;
  s.gamma_sr = c.c_sr * wsr2;
  s.gamma_sd_r = c.c_sd_r * wsd2;
  s.gamma_rd = c.c_rd * wrd2;
  return s;
}

inline EffectiveSnrSet effective_snrs_parallel(const ChannelParams& ch, const SystemConfig& cfg,
                                               const FadingDraw& draw) {
  const ParallelSnrCoeffs c = parallel_snr_coeffs(ch, cfg);
  EffectiveSnrSet s;
  s.gamma_sd1 = c.c_sd1 * std::norm(draw.w_sd);
  s.gamma_sr1 = c.c_sr1 * std::norm(draw.w_sr);
  s.gamma_rd1 = c.c_rd1 * std::norm(draw.w_rd);
  return s;
}

}  // namespace relaysim

#endif  // RELAYSIM_EFFECTIVE_SNR_HPP
