// relaysim command-line front end: rate / sweep / optimize / energy /
// preset. Writes CSV result tables with JSON metadata sidecars; every
// output embeds the full configuration needed to re-run it.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaysim/relaysim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace relaysim;

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["sigma_sd"] = c.channel.sigma_sd;
  j["sigma_sr"] = c.channel.sigma_sr;
  j["sigma_rd"] = c.channel.sigma_rd;
  j["n0"] = c.channel.n0;
  j["scheme"] = scheme_name(c.system.scheme);
  j["m"] = c.system.m;
  j["alpha"] = c.system.alpha;
  j["delta_s"] = c.system.delta_s;
  j["delta_r"] = c.system.delta_r;
  if (c.system.power.mode == PowerSpec::Mode::Explicit) {
    j["power_mode"] = "explicit";
    j["ps"] = c.system.power.p_s;
    j["pr"] = c.system.power.p_r;
  } else {
    j["power_mode"] = "total";
    j["p_total"] = c.system.power.p_total;
    j["theta"] = c.system.power.theta;
  }
  j["literal_paper_parallel"] = c.system.literal_paper_parallel;
  j["sweep_variable"] = c.sweep_variable;
  j["grid_lo"] = c.grid_lo;
  j["grid_hi"] = c.grid_hi;
  j["grid_points"] = c.grid_points;
  j["snr_lo"] = c.snr_lo;
  j["snr_hi"] = c.snr_hi;
  j["snr_per_decade"] = c.snr_per_decade;
  j["budget"] = c.budget;
  j["n_samples"] = c.n_samples;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j;
}

unsigned effective_workers(const ExperimentConfig& c) {
  if (c.workers > 0) return c.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void write_file(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path.string());
  f << body;
}

fs::path with_ext(std::string base, const char* ext) {
  fs::path p(std::move(base));
  p.replace_extension(ext);
  return p;
}

void write_sidecar(const fs::path& csv_path, const ExperimentConfig& cfg, json extra) {
  extra["timestamp"] = iso_timestamp();
  extra["config"] = config_to_json(cfg);
  fs::path p = csv_path;
  p.replace_extension(".json");
  write_file(p, extra.dump(2) + "\n");
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1 || !(lo <= hi)) throw std::invalid_argument("invalid grid specification");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return g;
}

std::vector<double> build_grid(const ExperimentConfig& c, SweepVariable var) {
  if (c.grid_points > 0) return linspace(c.grid_lo, c.grid_hi, c.grid_points);
  switch (var) {
    case SweepVariable::Alpha: return default_alpha_grid(c.system.scheme);
    case SweepVariable::Theta: return default_theta_grid();
    case SweepVariable::DeltaS:
    case SweepVariable::DeltaR: return linspace(0.02, 0.98, 25);
    case SweepVariable::Snr: return log_spaced_grid(c.snr_lo, c.snr_hi, c.snr_per_decade);
    case SweepVariable::BlockLength:
      throw std::invalid_argument("an m sweep needs an explicit grid (grid_lo/grid_hi/grid_points)");
  }
  throw std::invalid_argument("unknown sweep variable");
}

std::string sweep_csv(const SweepResult& res, const ExperimentConfig& cfg) {
  bool any_error = false;
  for (const auto& row : res.rows) any_error |= !row.error.empty();
  std::ostringstream os;
  os << "variable_name,variable_value,rate_mean,rate_stderr,n_samples,seed";
  if (any_error) os << ",error";
  os << "\n";
  for (const auto& row : res.rows) {
    os << sweep_variable_name(res.variable) << "," << format_sig9(row.value) << ",";
    if (row.rate) {
      os << format_sig9(row.rate->mean) << "," << format_sig9(row.rate->std_error) << ","
         << row.rate->n_samples << "," << row.rate->seed;
      if (any_error) os << ",";
    } else {
      os << ",,," << cfg.seed;
      if (any_error) {
        std::string msg = row.error;
        for (char& ch : msg)
          if (ch == ',' || ch == '\n') ch = ';';
        os << "," << msg;
      }
    }
    os << "\n";
  }
  return os.str();
}

int run_rate(const ExperimentConfig& cfg) {
  const RateEstimate r =
      rate_estimate(cfg.channel, cfg.system, cfg.n_samples, cfg.seed, effective_workers(cfg));
  json out;
  out["command"] = "rate";
  out["timestamp"] = iso_timestamp();
  out["config"] = config_to_json(cfg);
  out["result"] = {{"mean", r.mean},
                   {"std_error", r.std_error},
                   {"n_samples", r.n_samples},
                   {"seed", r.seed}};
  std::cout << out.dump(2) << "\n";
  if (cfg.out != "out") write_file(with_ext(cfg.out, ".json"), out.dump(2) + "\n");
  return 0;
}

int run_sweep(const ExperimentConfig& cfg) {
  SweepSpec spec;
  spec.variable = parse_sweep_variable(cfg.sweep_variable);
  spec.grid = build_grid(cfg, spec.variable);
  spec.channel = cfg.channel;
  spec.base = cfg.system;
  spec.n_samples = cfg.n_samples;
  spec.seed = cfg.seed;
  spec.workers = effective_workers(cfg);
  const SweepResult res = sweep(spec);

  const fs::path csv_path = with_ext(cfg.out, ".csv");
  write_file(csv_path, sweep_csv(res, cfg));
  json meta;
  meta["command"] = "sweep";
  if (res.argmax) meta["argmax"] = *res.argmax;
  meta["statistically_tied"] = res.statistically_tied;
  write_sidecar(csv_path, cfg, meta);
  std::cout << "wrote " << csv_path.string() << "\n";
  return 0;
}

int run_optimize(const ExperimentConfig& cfg) {
  const SweepVariable var = parse_sweep_variable(cfg.sweep_variable);
  double lo = cfg.grid_lo, hi = cfg.grid_hi;
  if (!(lo < hi)) {
    const auto g = build_grid(cfg, var);
    lo = g.front();
    hi = g.back();
  }
  const unsigned workers = effective_workers(cfg);
  auto objective = [&](double x) {
    ChannelParams ch = cfg.channel;
    SystemConfig sc = cfg.system;
    apply_sweep_value(var, x, ch, sc);
    return rate_estimate(ch, sc, cfg.n_samples, cfg.seed, workers);
  };
  const auto [x, r] = optimize_scalar(objective, lo, hi, cfg.budget);
  json out;
  out["command"] = "optimize";
  out["timestamp"] = iso_timestamp();
  out["config"] = config_to_json(cfg);
  out["result"] = {{"variable", sweep_variable_name(var)},
                   {"argmax", x},
                   {"mean", r.mean},
                   {"std_error", r.std_error},
                   {"n_samples", r.n_samples},
                   {"seed", r.seed}};
  std::cout << out.dump(2) << "\n";
  if (cfg.out != "out") write_file(with_ext(cfg.out, ".json"), out.dump(2) + "\n");
  return 0;
}

std::string energy_csv(const BitEnergyCurve& curve) {
  std::ostringstream os;
  os << "snr,rate_mean,rate_stderr,eb_n0,flagged\n";
  for (const auto& pt : curve.points) {
    os << format_sig9(pt.snr) << "," << format_sig9(pt.rate.mean) << ","
       << format_sig9(pt.rate.std_error) << ","
       << (pt.unreliable ? "inf" : format_sig9(pt.eb_n0)) << "," << (pt.unreliable ? 1 : 0)
       << "\n";
  }
  return os.str();
}

int run_energy(const ExperimentConfig& cfg) {
  const auto grid = log_spaced_grid(cfg.snr_lo, cfg.snr_hi, cfg.snr_per_decade);
  const unsigned workers = effective_workers(cfg);
  const BitEnergyCurve curve =
      bit_energy_curve(cfg.channel, cfg.system, grid, cfg.n_samples, cfg.seed, workers);
  const MinBitEnergy mbe = min_bit_energy(cfg.channel, cfg.system, cfg.snr_lo, cfg.snr_hi,
                                          cfg.budget, cfg.n_samples, cfg.seed, workers);

  const fs::path csv_path = with_ext(cfg.out, ".csv");
  write_file(csv_path, energy_csv(curve));
  json meta;
  meta["command"] = "energy";
  meta["min_bit_energy"] = {{"snr_star", mbe.snr_star},
                            {"eb_n0_min", mbe.eb_n0_min},
                            {"rate_mean", mbe.rate.mean},
                            {"rate_stderr", mbe.rate.std_error}};
  write_sidecar(csv_path, cfg, meta);
  std::cout << "wrote " << csv_path.string() << "\n";
  return 0;
}

// ---- figure presets ------------------------------------------------------
// Parameters the source states are pinned; the rest (m=100 for the rate
// figures, grid resolutions) are documented defaults.

struct SigmaTriple {
  double sd, sr, rd;
  std::string tag() const {
    auto fmt = [](double v) {
      std::string s = format_double(v);
      for (char& c : s)
        if (c == '.') c = 'p';
      return s;
    };
    return fmt(sd) + "_" + fmt(sr) + "_" + fmt(rd);
  }
};

const std::vector<SigmaTriple> kTriples = {{1, 2, 1}, {1, 4, 4}, {1, 10, 2}};

ExperimentConfig preset_base(const ExperimentConfig& user) {
  ExperimentConfig c;
  c.system.m = 100;
  c.system.delta_s = 0.1;
  c.system.delta_r = 0.1;
  c.channel.n0 = 1.0;
  c.n_samples = user.n_samples;
  c.seed = user.seed;
  c.workers = user.workers;
  return c;
}

int run_preset(const std::string& name, const ExperimentConfig& user) {
  const fs::path dir = (user.out != "out") ? fs::path(user.out) : fs::path("out_" + name);
  fs::create_directories(dir);

  auto alpha_sweep_preset = [&](Scheme scheme, double ps, double pr) {
    for (const SigmaTriple& t : kTriples) {
      ExperimentConfig c = preset_base(user);
      c.channel.sigma_sd = t.sd;
      c.channel.sigma_sr = t.sr;
      c.channel.sigma_rd = t.rd;
      c.system.scheme = scheme;
      c.system.power = PowerSpec::explicit_powers(ps, pr);
      c.sweep_variable = "alpha";
      c.out = (dir / (name + "_sigma_" + t.tag())).string();
      run_sweep(c);
    }
    return 0;
  };

  auto theta_sweep_preset = [&](Scheme scheme, double p_total) {
    for (const SigmaTriple& t : kTriples) {
      ExperimentConfig c = preset_base(user);
      c.channel.sigma_sd = t.sd;
      c.channel.sigma_sr = t.sr;
      c.channel.sigma_rd = t.rd;
      c.system.scheme = scheme;
      c.system.alpha = 0.5;
      c.system.power = PowerSpec::total_split(p_total, 0.5);
      c.sweep_variable = "theta";
      c.out = (dir / (name + "_sigma_" + t.tag())).string();
      run_sweep(c);
    }
    // direct-transmission baseline at full power, for fair comparison
    ExperimentConfig c = preset_base(user);
    c.system.scheme = Scheme::Direct;
    c.system.power = PowerSpec::explicit_powers(p_total, 0.0);
    const RateEstimate r =
        rate_estimate(c.channel, c.system, c.n_samples, c.seed, effective_workers(c));
    std::ostringstream os;
    os << "variable_name,variable_value,rate_mean,rate_stderr,n_samples,seed\n";
    os << "direct_baseline,1," << format_sig9(r.mean) << "," << format_sig9(r.std_error) << ","
       << r.n_samples << "," << r.seed << "\n";
    const fs::path csv_path = dir / (name + "_direct.csv");
    write_file(csv_path, os.str());
    write_sidecar(csv_path, c, json{{"command", "preset:" + name}});
    std::cout << "wrote " << csv_path.string() << "\n";
    return 0;
  };

  if (name == "fig1") return alpha_sweep_preset(Scheme::AF, 50.0, 50.0);
  if (name == "fig2") return alpha_sweep_preset(Scheme::AF, 0.5, 0.5);
  if (name == "fig3") return alpha_sweep_preset(Scheme::RepetitionDF, 50.0, 50.0);
  if (name == "fig4") return alpha_sweep_preset(Scheme::RepetitionDF, 0.5, 0.5);
  if (name == "fig5") return theta_sweep_preset(Scheme::AF, 100.0);
  if (name == "fig6") return theta_sweep_preset(Scheme::RepetitionDF, 1.0);
  if (name == "fig7") return alpha_sweep_preset(Scheme::ParallelDF, 0.5, 0.5);

  if (name == "fig8") {
    for (int m : {100, 500, 1000}) {
      ExperimentConfig c = preset_base(user);
      c.channel.sigma_sr = 4.0;
      c.channel.sigma_rd = 4.0;
      c.system.scheme = Scheme::AF;
      c.system.m = m;
      c.system.alpha = 0.5;
      c.system.power = PowerSpec::total_split(1.0, 0.6);
      c.snr_lo = 1e-3;
      c.snr_hi = 10.0;
      c.out = (dir / (name + "_m" + std::to_string(m))).string();
      run_energy(c);
    }
    return 0;
  }

  if (name == "fig10") {
    std::ostringstream os;
    os << "scheme,m,snr_star,eb_n0_min\n";
    ExperimentConfig c = preset_base(user);
    for (Scheme s : {Scheme::AF, Scheme::RepetitionDF, Scheme::ParallelDF, Scheme::Direct}) {
      for (int m : {100, 500, 1000}) {
        c.channel.sigma_sr = 4.0;
        c.channel.sigma_rd = 4.0;
        c.system.scheme = s;
        c.system.m = m;
        c.system.alpha = 0.5;
        c.system.power = PowerSpec::total_split(1.0, 0.6);
        const MinBitEnergy mbe = min_bit_energy(c.channel, c.system, 1e-3, 10.0, c.budget,
                                                c.n_samples, c.seed, effective_workers(c));
        os << scheme_name(s) << "," << m << "," << format_sig9(mbe.snr_star) << ","
           << format_sig9(mbe.eb_n0_min) << "\n";
      }
    }
    const fs::path csv_path = dir / (name + "_min_bit_energy.csv");
    write_file(csv_path, os.str());
    write_sidecar(csv_path, c, json{{"command", "preset:fig10"}});
    std::cout << "wrote " << csv_path.string() << "\n";
    return 0;
  }

  throw std::invalid_argument("unknown preset: " + name +
                              " (expected fig1..fig8 or fig10)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relay-channel achievable rates with pilot-based channel estimation"};
  app.require_subcommand(1);

  std::string config_path, preset_name;
  ExperimentConfig cfg;

  // flags present on every subcommand; values override the config file
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--seed", cfg.seed, "master RNG seed");
    sub->add_option("--samples", cfg.n_samples, "Monte-Carlo samples per point");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
    sub->add_option("--out", cfg.out, "output path (extension added per format)");
    sub->add_option("--scheme", [&cfg](const std::vector<std::string>& v) {
      cfg.system.scheme = parse_scheme(v.front());
      return true;
    }, "af | repetition_df | parallel_df | direct");
    sub->add_option("--m", cfg.system.m, "block length in symbols");
    sub->add_option("--alpha", cfg.system.alpha, "relay time fraction");
    sub->add_option("--delta-s", cfg.system.delta_s, "source training energy fraction");
    sub->add_option("--delta-r", cfg.system.delta_r, "relay training energy fraction");
    sub->add_option("--sigma-sd", cfg.channel.sigma_sd, "source-destination fading std dev");
    sub->add_option("--sigma-sr", cfg.channel.sigma_sr, "source-relay fading std dev");
    sub->add_option("--sigma-rd", cfg.channel.sigma_rd, "relay-destination fading std dev");
    sub->add_option("--n0", cfg.channel.n0, "noise variance per complex sample");
    sub->add_option("--ps", [&cfg](const std::vector<std::string>& v) {
      cfg.system.power.mode = PowerSpec::Mode::Explicit;
      cfg.system.power.p_s = std::stod(v.front());
      return true;
    }, "source power (switches to explicit power mode)");
    sub->add_option("--pr", [&cfg](const std::vector<std::string>& v) {
      cfg.system.power.mode = PowerSpec::Mode::Explicit;
      cfg.system.power.p_r = std::stod(v.front());
      return true;
    }, "relay power (switches to explicit power mode)");
    sub->add_option("--p-total", [&cfg](const std::vector<std::string>& v) {
      cfg.system.power.mode = PowerSpec::Mode::TotalSplit;
      cfg.system.power.p_total = std::stod(v.front());
      return true;
    }, "total power (switches to total-split mode)");
    sub->add_option("--theta", [&cfg](const std::vector<std::string>& v) {
      cfg.system.power.mode = PowerSpec::Mode::TotalSplit;
      cfg.system.power.theta = std::stod(v.front());
      return true;
    }, "source share of total power (switches to total-split mode)");
    sub->add_option("--variable", cfg.sweep_variable, "sweep/optimize variable");
    sub->add_option("--grid-lo", cfg.grid_lo, "grid lower bound");
    sub->add_option("--grid-hi", cfg.grid_hi, "grid upper bound");
    sub->add_option("--grid-points", cfg.grid_points, "grid point count");
    sub->add_option("--snr-lo", cfg.snr_lo, "energy analysis: lowest SNR");
    sub->add_option("--snr-hi", cfg.snr_hi, "energy analysis: highest SNR");
    sub->add_option("--snr-per-decade", cfg.snr_per_decade, "energy grid resolution");
    sub->add_option("--budget", cfg.budget, "optimizer evaluation budget");
  };

  CLI::App* rate_cmd = app.add_subcommand("rate", "single rate evaluation, JSON to stdout");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep, CSV + JSON sidecar");
  CLI::App* opt_cmd = app.add_subcommand("optimize", "scalar resource optimization");
  CLI::App* energy_cmd = app.add_subcommand("energy", "bit-energy curve and minimum");
  CLI::App* preset_cmd = app.add_subcommand("preset", "run a named figure preset");
  preset_cmd->add_option("name", preset_name, "fig1..fig8 or fig10")->required();
  for (CLI::App* sub : {rate_cmd, sweep_cmd, opt_cmd, energy_cmd, preset_cmd}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::invalid_argument("cannot read config file: " + config_path);
      std::stringstream ss;
      ss << f.rdbuf();
      ExperimentConfig from_file = parse_config(ss.str());
      // re-apply CLI flags on top of the file values
      ExperimentConfig flags_only = cfg;
      cfg = from_file;
      CLI::App* active = app.get_subcommands().front();
      auto overridden = [&](const std::string& flag) {
        const CLI::Option* o = active->get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
      };
      if (overridden("--seed")) cfg.seed = flags_only.seed;
      if (overridden("--samples")) cfg.n_samples = flags_only.n_samples;
      if (overridden("--workers")) cfg.workers = flags_only.workers;
      if (overridden("--out")) cfg.out = flags_only.out;
      if (overridden("--scheme")) cfg.system.scheme = flags_only.system.scheme;
      if (overridden("--m")) cfg.system.m = flags_only.system.m;
      if (overridden("--alpha")) cfg.system.alpha = flags_only.system.alpha;
      if (overridden("--delta-s")) cfg.system.delta_s = flags_only.system.delta_s;
      if (overridden("--delta-r")) cfg.system.delta_r = flags_only.system.delta_r;
      if (overridden("--sigma-sd")) cfg.channel.sigma_sd = flags_only.channel.sigma_sd;
      if (overridden("--sigma-sr")) cfg.channel.sigma_sr = flags_only.channel.sigma_sr;
      if (overridden("--sigma-rd")) cfg.channel.sigma_rd = flags_only.channel.sigma_rd;
      if (overridden("--n0")) cfg.channel.n0 = flags_only.channel.n0;
      if (overridden("--ps") || overridden("--pr") || overridden("--p-total") ||
          overridden("--theta"))
        cfg.system.power = flags_only.system.power;
      if (overridden("--variable")) cfg.sweep_variable = flags_only.sweep_variable;
      if (overridden("--grid-lo")) cfg.grid_lo = flags_only.grid_lo;
      if (overridden("--grid-hi")) cfg.grid_hi = flags_only.grid_hi;
      if (overridden("--grid-points")) cfg.grid_points = flags_only.grid_points;
      if (overridden("--snr-lo")) cfg.snr_lo = flags_only.snr_lo;
      if (overridden("--snr-hi")) cfg.snr_hi = flags_only.snr_hi;
      if (overridden("--snr-per-decade")) cfg.snr_per_decade = flags_only.snr_per_decade;
      if (overridden("--budget")) cfg.budget = flags_only.budget;
    }

    if (rate_cmd->parsed()) return run_rate(cfg);
    if (sweep_cmd->parsed()) return run_sweep(cfg);
    if (opt_cmd->parsed()) return run_optimize(cfg);
    if (energy_cmd->parsed()) return run_energy(cfg);
    if (preset_cmd->parsed()) return run_preset(preset_name, cfg);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
}
