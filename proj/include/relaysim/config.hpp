#ifndef RELAYSIM_CONFIG_HPP
#define RELAYSIM_CONFIG_HPP

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "relaysim/channel.hpp"

namespace relaysim {

// Complete serializable record of one experiment. Round-trips losslessly
// through the flat key=value text format below; absent keys take defaults.
struct ExperimentConfig {
  ChannelParams channel;
  SystemConfig system;

  std::string sweep_variable = "alpha";
  double grid_lo = 0.0;   // 0/0/0 means "use the scheme's default grid"
  double grid_hi = 0.0;
  int grid_points = 0;

  double snr_lo = 1e-3;
  double snr_hi = 10.0;
  int snr_per_decade = 30;
  int budget = 40;

  std::size_t n_samples = 200000;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = machine parallelism
  std::string out = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

inline bool operator==(const ChannelParams& a, const ChannelParams& b) {
  return a.sigma_sd == b.sigma_sd && a.sigma_sr == b.sigma_sr && a.sigma_rd == b.sigma_rd &&
         a.n0 == b.n0;
}
inline bool operator==(const PowerSpec& a, const PowerSpec& b) {
  if (a.mode != b.mode) return false;
  if (a.mode == PowerSpec::Mode::Explicit) return a.p_s == b.p_s && a.p_r == b.p_r;
  return a.p_total == b.p_total && a.theta == b.theta;
}
inline bool operator==(const SystemConfig& a, const SystemConfig& b) {
  return a.m == b.m && a.alpha == b.alpha && a.scheme == b.scheme && a.delta_s == b.delta_s &&
         a.delta_r == b.delta_r && a.power == b.power &&
         a.literal_paper_parallel == b.literal_paper_parallel;
}

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

// 9 significant digits, for CSV output.
inline std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::string(buf);
}

inline std::string render_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "# relaysim experiment configuration\n";
  os << "sigma_sd = " << format_double(c.channel.sigma_sd) << "\n";
  os << "sigma_sr = " << format_double(c.channel.sigma_sr) << "\n";
  os << "sigma_rd = " << format_double(c.channel.sigma_rd) << "\n";
  os << "n0 = " << format_double(c.channel.n0) << "\n";
  os << "scheme = " << scheme_name(c.system.scheme) << "\n";
  os << "m = " << c.system.m << "\n";
  os << "alpha = " << format_double(c.system.alpha) << "\n";
  os << "delta_s = " << format_double(c.system.delta_s) << "\n";
  os << "delta_r = " << format_double(c.system.delta_r) << "\n";
  if (c.system.power.mode == PowerSpec::Mode::Explicit) {
    os << "power_mode = explicit\n";
    os << "ps = " << format_double(c.system.power.p_s) << "\n";
    os << "pr = " << format_double(c.system.power.p_r) << "\n";
  } else {
    os << "power_mode = total\n";
    os << "p_total = " << format_double(c.system.power.p_total) << "\n";
    os << "theta = " << format_double(c.system.power.theta) << "\n";
  }
  os << "literal_paper_parallel = " << (c.system.literal_paper_parallel ? 1 : 0) << "\n";
  os << "sweep_variable = " << c.sweep_variable << "\n";
  os << "grid_lo = " << format_double(c.grid_lo) << "\n";
  os << "grid_hi = " << format_double(c.grid_hi) << "\n";
  os << "grid_points = " << c.grid_points << "\n";
  os << "snr_lo = " << format_double(c.snr_lo) << "\n";
  os << "snr_hi = " << format_double(c.snr_hi) << "\n";
  os << "snr_per_decade = " << c.snr_per_decade << "\n";
  os << "budget = " << c.budget << "\n";
  os << "n_samples = " << c.n_samples << "\n";
  os << "seed = " << c.seed << "\n";
  os << "workers = " << c.workers << "\n";
  os << "out = " << c.out << "\n";
  return os.str();
}

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
inline double parse_num(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("invalid numeric value for key '" + key + "': " + v);
  }
}
inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const std::uint64_t x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("invalid integer value for key '" + key + "': " + v);
  }
}
}  // namespace detail

// Parses the flat key=value format. '#' starts a comment; unknown keys are
// an error so typos do not silently take defaults.
inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed config line (expected key = value): " + line);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key == "sigma_sd") c.channel.sigma_sd = detail::parse_num(key, val);
    else if (key == "sigma_sr") c.channel.sigma_sr = detail::parse_num(key, val);
    else if (key == "sigma_rd") c.channel.sigma_rd = detail::parse_num(key, val);
    else if (key == "n0") c.channel.n0 = detail::parse_num(key, val);
    else if (key == "scheme") c.system.scheme = parse_scheme(val);
    else if (key == "m") c.system.m = static_cast<int>(detail::parse_num(key, val));
    else if (key == "alpha") c.system.alpha = detail::parse_num(key, val);
    else if (key == "delta_s") c.system.delta_s = detail::parse_num(key, val);
    else if (key == "delta_r") c.system.delta_r = detail::parse_num(key, val);
    else if (key == "power_mode") {
      if (val == "explicit") c.system.power.mode = PowerSpec::Mode::Explicit;
      else if (val == "total") c.system.power.mode = PowerSpec::Mode::TotalSplit;
      else throw std::invalid_argument("power_mode must be 'explicit' or 'total'");
    } else if (key == "ps") c.system.power.p_s = detail::parse_num(key, val);
    else if (key == "pr") c.system.power.p_r = detail::parse_num(key, val);
    else if (key == "p_total") c.system.power.p_total = detail::parse_num(key, val);
    else if (key == "theta") c.system.power.theta = detail::parse_num(key, val);
    else if (key == "literal_paper_parallel")
      c.system.literal_paper_parallel = detail::parse_num(key, val) != 0.0;
    else if (key == "sweep_variable") c.sweep_variable = val;
    else if (key == "grid_lo") c.grid_lo = detail::parse_num(key, val);
    else if (key == "grid_hi") c.grid_hi = detail::parse_num(key, val);
    else if (key == "grid_points") c.grid_points = static_cast<int>(detail::parse_num(key, val));
    else if (key == "snr_lo") c.snr_lo = detail::parse_num(key, val);
    else if (key == "snr_hi") c.snr_hi = detail::parse_num(key, val);
    else if (key == "snr_per_decade") c.snr_per_decade = static_cast<int>(detail::parse_num(key, val));
    else if (key == "budget") c.budget = static_cast<int>(detail::parse_num(key, val));
    else if (key == "n_samples") c.n_samples = static_cast<std::size_t>(detail::parse_uint(key, val));
    else if (key == "seed") c.seed = detail::parse_uint(key, val);
    else if (key == "workers") c.workers = static_cast<unsigned>(detail::parse_uint(key, val));
    else if (key == "out") c.out = val;
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return c;
}

}  // namespace relaysim

#endif  // RELAYSIM_CONFIG_HPP
