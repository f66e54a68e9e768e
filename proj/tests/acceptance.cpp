// Acceptance suite: one pass/fail line per criterion. Takes the path of
// the CLI binary as argv[1] (used by the determinism criterion).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "brute_force.hpp"
#include "relaysim/relaysim.hpp"

using namespace relaysim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

unsigned workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

ChannelParams channel(double sd, double sr, double rd) {
  ChannelParams ch;
  ch.sigma_sd = sd;
  ch.sigma_sr = sr;
  ch.sigma_rd = rd;
  ch.n0 = 1.0;
  return ch;
}

SystemConfig config(Scheme s, double alpha, PowerSpec power, int m = 100) {
  SystemConfig cfg;
  cfg.m = m;
  cfg.alpha = alpha;
  cfg.scheme = s;
  cfg.delta_s = 0.1;
  cfg.delta_r = 0.1;
  cfg.power = power;
  return cfg;
}

// ---- criterion 1: direct-rate Monte Carlo vs exponential-integral form ----
void criterion1() {
  bool ok = true;
  std::ostringstream detail;
  detail << "direct-rate oracle equivalence at n=1e6:";
  for (double g : {0.1, 1.0, 10.0, 100.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    auto stats = monte_carlo<1>(101, 1000000, workers(),
                                [&](const FadingDraw& d, std::array<double, 1>& v) {
                                  v[0] = std::log2(1.0 + g * std::norm(d.w_sd));
                                });
    const double exact = rate_direct_closed_form(g, 1.0);
    const double dev = std::abs(stats[0].mean - exact) / stats[0].std_error;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && dev < 4.0 && secs < 10.0;
    detail << " gamma=" << g << " dev=" << dev << "se t=" << secs << "s;";
  }
  report(1, ok, detail.str());
}

// ---- criterion 2: trivial limits ----
void criterion2() {
  bool ok = true;
  std::ostringstream detail;
  const ChannelParams ch = channel(1.0, 2.0, 1.5);
  FadingDraw d;
  d.w_sd = {1.3, -0.2};
  d.w_sr = {0.4, 0.9};
  d.w_rd = {-1.1, 0.5};

  for (double ds : {0.0, 1.0}) {
    SystemConfig cfg = config(Scheme::AF, 0.4, PowerSpec::explicit_powers(5.0, 5.0));
    cfg.delta_s = ds;
    const auto s = effective_snrs_overlapped(ch, cfg, d);
    ok = ok && s.gamma_sd == 0.0 && s.gamma_sr == 0.0 && s.gamma_sd_r == 0.0;
    cfg.scheme = Scheme::ParallelDF;
    cfg.alpha = 0.5;
    const auto p = effective_snrs_parallel(ch, cfg, d);
    ok = ok && p.gamma_sd1 == 0.0 && p.gamma_sr1 == 0.0;
  }
  detail << "delta_s in {0,1} zeros source-side SNRs; ";

  for (Scheme s : {Scheme::AF, Scheme::RepetitionDF, Scheme::ParallelDF, Scheme::Direct}) {
    SystemConfig cfg = config(s, s == Scheme::ParallelDF ? 0.5 : 0.4,
                              PowerSpec::explicit_powers(0.0, 0.0));
    const RateEstimate r = rate_estimate(ch, cfg, 1000, 7);
    ok = ok && r.mean == 0.0;
  }
  detail << "P=0 gives zero rate; ";

  ok = ok && f_combine(0.0, 7.3) == 0.0 && f_combine(1.0, 1.0) == 1.0 / 3.0 &&
       q_combine(5.0, 0.0, 2.0, 1.0) == 0.0 && q_combine(0.0, 1.0, 0.0, 0.0) == 1.0 &&
       q_combine(1.0, 2.0, 3.0, 4.0) == 2.0;
  detail << "f/q identities exact";
  report(2, ok, detail.str());
}

// ---- criterion 3: alpha = 0.5 optimal at low SNR ----
void criterion3() {
  bool ok = true;
  std::ostringstream detail;
  const std::size_t n = 200000;
  const std::array<std::array<double, 3>, 3> triples = {{{1, 2, 1}, {1, 4, 4}, {1, 10, 2}}};
  for (Scheme scheme : {Scheme::AF, Scheme::RepetitionDF}) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& t : triples) {
      SweepSpec spec;
      spec.channel = channel(t[0], t[1], t[2]);
      spec.base = config(scheme, 0.5, PowerSpec::explicit_powers(0.5, 0.5));
      spec.variable = SweepVariable::Alpha;
      spec.grid = default_alpha_grid(scheme);
      spec.n_samples = n;
      spec.seed = 303;
      spec.workers = workers();
      const SweepResult res = sweep(spec);
      const bool at_half = res.argmax && *res.argmax == spec.grid.back();
      // gap to the runner-up, measured with the paired error of the
      // common-random-numbers difference
      double best = -1.0, best_x = 0.0, runner = -1.0, runner_x = 0.0;
      for (const auto& row : res.rows) {
        if (!row.rate) continue;
        if (row.rate->mean > best) {
          runner = best;
          runner_x = best_x;
          best = row.rate->mean;
          best_x = row.value;
        } else if (row.rate->mean > runner) {
          runner = row.rate->mean;
          runner_x = row.value;
        }
      }
      SystemConfig cfg_best = spec.base, cfg_run = spec.base;
      cfg_best.alpha = *res.argmax;
      cfg_run.alpha = runner_x;
      const PairedRateDiff diff =
          rate_paired_diff(spec.channel, cfg_best, cfg_run, n, spec.seed, workers());
      const bool significant = diff.diff_mean > diff.diff_std_error;
      ok = ok && at_half && significant;
      detail << scheme_name(scheme) << " s=(" << t[0] << "," << t[1] << "," << t[2]
             << ") argmax=" << (res.argmax ? *res.argmax : -1.0)
             << " gap=" << diff.diff_mean << " (" << diff.diff_mean / diff.diff_std_error
             << "se); ";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < 120.0;
    detail << scheme_name(scheme) << " t=" << secs << "s; ";
  }
  report(3, ok, detail.str());
}

// ---- criterion 4: direct transmission superior at high SNR ----
void criterion4() {
  bool ok = true;
  const std::size_t n = 200000;
  const ChannelParams ch = channel(1.0, 4.0, 4.0);
  SystemConfig direct_cfg = config(Scheme::Direct, 0.5, PowerSpec::explicit_powers(100.0, 0.0));
  const RateEstimate direct = rate_estimate(ch, direct_cfg, n, 404, workers());
  double min_margin = 1e300;
  for (double theta : default_theta_grid()) {
    SystemConfig af_cfg = config(Scheme::AF, 0.5, PowerSpec::total_split(100.0, theta));
    const RateEstimate af = rate_estimate(ch, af_cfg, n, 404, workers());
    const double combined = std::hypot(direct.std_error, af.std_error);
    const double margin = (direct.mean - af.mean) / combined;
    min_margin = std::min(min_margin, margin);
    ok = ok && margin > 4.0;
  }
  std::ostringstream detail;
  detail << "direct (P_s=100) beats AF at every theta; worst margin " << min_margin
         << " combined se (needs > 4)";
  report(4, ok, detail.str());
}

// ---- criterion 5: parallel DF beats repetition DF at their own optima ----
void criterion5() {
  const std::size_t n = 200000;
  const ChannelParams ch = channel(1.0, 10.0, 2.0);
  auto best_alpha = [&](Scheme scheme) {
    SweepSpec spec;
    spec.channel = ch;
    spec.base = config(scheme, 0.5, PowerSpec::explicit_powers(0.5, 0.5));
    spec.variable = SweepVariable::Alpha;
    spec.grid = default_alpha_grid(scheme);
    spec.n_samples = n;
    spec.seed = 505;
    spec.workers = workers();
    const SweepResult res = sweep(spec);
    RateEstimate best;
    for (const auto& row : res.rows)
      if (row.rate && row.rate->mean > best.mean) best = *row.rate;
    return best;
  };
  const RateEstimate pardf = best_alpha(Scheme::ParallelDF);
  const RateEstimate repdf = best_alpha(Scheme::RepetitionDF);
  const double combined = std::hypot(pardf.std_error, repdf.std_error);
  const double margin = (pardf.mean - repdf.mean) / combined;
  std::ostringstream detail;
  detail << "parallel DF " << pardf.mean << " vs repetition DF " << repdf.mean << " at own optima, "
         << margin << " combined se (needs > 4)";
  report(5, margin > 4.0, detail.str());
}

// ---- criterion 6: bit energy diverges toward zero SNR ----
void criterion6() {
  bool ok = true;
  std::ostringstream detail;
  const std::size_t n = 200000;
  const ChannelParams ch = channel(1.0, 4.0, 4.0);
  for (Scheme s : {Scheme::AF, Scheme::RepetitionDF, Scheme::ParallelDF, Scheme::Direct}) {
    SystemConfig tmpl = config(s, 0.5, PowerSpec::total_split(1.0, 0.6));
    const BitEnergyCurve low =
        bit_energy_curve(ch, tmpl, {1e-4, 1e-3, 1e-2}, n, 606, workers());
    const bool increasing_down = low.points[0].eb_n0 > low.points[1].eb_n0 &&
                                 low.points[1].eb_n0 > low.points[2].eb_n0;
    const MinBitEnergy mbe = min_bit_energy(ch, tmpl, 1e-3, 10.0, 30, n, 606, workers());
    const bool far_above = low.points[0].eb_n0 > 10.0 * mbe.eb_n0_min;
    ok = ok && increasing_down && far_above;
    detail << scheme_name(s) << " eb(1e-4)=" << low.points[0].eb_n0 << " min=" << mbe.eb_n0_min
           << "; ";
  }
  report(6, ok, detail.str());
}

// ---- criterion 7: minimum bit energy trends in m; DF beats AF ----
void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 200000;
  const ChannelParams ch = channel(1.0, 4.0, 4.0);
  bool ok = true;
  std::ostringstream detail;
  double prev = -1.0, af_1000 = 0.0;
  for (int m : {100, 500, 1000}) {
    SystemConfig tmpl = config(Scheme::AF, 0.5, PowerSpec::total_split(1.0, 0.6), m);
    const MinBitEnergy mbe = min_bit_energy(ch, tmpl, 1e-3, 10.0, 30, n, 707, workers());
    detail << "AF m=" << m << " min=" << mbe.eb_n0_min << "; ";
    if (prev >= 0.0) ok = ok && mbe.eb_n0_min <= prev;
    prev = mbe.eb_n0_min;
    if (m == 1000) af_1000 = mbe.eb_n0_min;
  }
  SystemConfig repdf = config(Scheme::RepetitionDF, 0.5, PowerSpec::total_split(1.0, 0.6), 1000);
  const MinBitEnergy mbe_df = min_bit_energy(ch, repdf, 1e-3, 10.0, 30, n, 707, workers());
  detail << "repetition DF m=1000 min=" << mbe_df.eb_n0_min << "; ";
  ok = ok && mbe_df.eb_n0_min < af_1000;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail << "t=" << secs << "s (needs < 600)";
  ok = ok && secs < 600.0;
  report(7, ok, detail.str());
}

// ---- criterion 8: CLI determinism across worker counts ----
std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void criterion8(const std::string& cli) {
  if (cli.empty()) {
    report(8, false, "CLI binary path not supplied to the acceptance runner");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "relaysim_acceptance";
  fs::create_directories(dir);
  bool ok = true;
  std::ostringstream detail;
  struct Run {
    const char* name;
    std::string args;
  };
  const std::vector<Run> runs = {
      {"sweep", " sweep --scheme af --ps 0.5 --pr 0.5 --sigma-sr 4 --sigma-rd 4"
                " --variable alpha --samples 20000 --seed 42"},
      {"energy", " energy --scheme repetition_df --p-total 1 --theta 0.6 --sigma-sr 4"
                 " --sigma-rd 4 --snr-lo 0.01 --snr-hi 1 --snr-per-decade 5"
                 " --samples 20000 --seed 42"},
  };
  for (const Run& run : runs) {
    std::string body1, body4;
    for (int w : {1, 4}) {
      const fs::path out = dir / (std::string(run.name) + "_w" + std::to_string(w));
      const std::string cmd = cli + run.args + " --workers " + std::to_string(w) + " --out " +
                              out.string() + " > /dev/null";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) {
        ok = false;
        detail << run.name << " exited " << rc << "; ";
        continue;
      }
      const std::string body = slurp(fs::path(out.string() + ".csv"));
      (w == 1 ? body1 : body4) = body;
    }
    const bool same = !body1.empty() && body1 == body4;
    ok = ok && same;
    detail << run.name << (same ? " byte-identical across workers; " : " DIFFERS; ");
  }
  report(8, ok, detail.str());
}

// ---- criterion 9: brute-force cross-check on 1000 random configurations ----
void criterion9() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FadingSampler sampler(910);
  bool ok = true;
  double worst = 0.0;
  auto close = [&](double a, double b) {
    const double err = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
    worst = std::max(worst, err);
    return err < 1e-9;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    brute::Params q;
    q.sigma_sd = 0.2 + 3.0 * u(rng);
    q.sigma_sr = 0.2 + 3.0 * u(rng);
    q.sigma_rd = 0.2 + 3.0 * u(rng);
    q.n0 = 0.1 + 2.0 * u(rng);
    q.m = 3 + static_cast<int>(u(rng) * 1000);
    q.alpha = 0.02 + 0.47 * u(rng);
    q.delta_s = 0.01 + 0.98 * u(rng);
    q.delta_r = 0.01 + 0.98 * u(rng);
    q.p_s = 0.01 + 100.0 * u(rng);
    q.p_r = 0.01 + 100.0 * u(rng);

    const ChannelParams ch = channel(q.sigma_sd, q.sigma_sr, q.sigma_rd);
    ChannelParams ch2 = ch;
    ch2.n0 = q.n0;
    SystemConfig cfg =
        config(Scheme::AF, q.alpha, PowerSpec::explicit_powers(q.p_s, q.p_r),
               static_cast<int>(q.m));
    cfg.delta_s = q.delta_s;
    cfg.delta_r = q.delta_r;

    const FadingDraw d = sampler.draw();
    const double wsd2 = std::norm(d.w_sd), wsr2 = std::norm(d.w_sr), wrd2 = std::norm(d.w_rd);

    const EffectiveSnrSet s = effective_snrs_overlapped(ch2, cfg, d);
    ok = ok && close(rate_af_sample(s, cfg), brute::af_sample(q, wsd2, wsr2, wrd2));
    ok = ok && close(log2p1(s.gamma_sd), brute::repdf_direct_sample(q, wsd2));
    ok = ok && close(repdf_i1_sample(s), brute::repdf_i1_sample(q, wsr2));
    ok = ok && close(repdf_i2_sample(s), brute::repdf_i2_sample(q, wsd2, wrd2));

    SystemConfig pcfg = cfg;
    pcfg.scheme = Scheme::ParallelDF;
    pcfg.alpha = 0.02 + 0.96 * u(rng);
    brute::Params pq = q;
    pq.alpha = pcfg.alpha;
    const EffectiveSnrSet ps = effective_snrs_parallel(ch2, pcfg, d);
    ok = ok && close(pardf_branch1_sample(ps, pcfg), brute::pardf_branch1_sample(pq, wsr2));
    ok = ok &&
         close(pardf_branch2_sample(ps, pcfg), brute::pardf_branch2_sample(pq, wsd2, wrd2));

    SystemConfig dcfg = cfg;
    dcfg.scheme = Scheme::Direct;
    const double g_dir = direct_snr_coeff(ch2, dcfg) * wsd2;
    ok = ok && close((q.m - 1.0) / q.m * log2p1(g_dir), brute::direct_sample(q, wsd2));
  }
  std::ostringstream detail;
  detail << "per-sample agreement with the naive oracle on 1000 random configurations, "
         << "worst relative error " << worst << " (tolerance 1e-9)";
  report(9, ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8(cli);
  criterion9();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
