#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relaysim/config.hpp"

using namespace relaysim;

TEST_CASE("defaults survive an empty config") {
  const ExperimentConfig c = parse_config("");
  CHECK(c == ExperimentConfig{});
  CHECK(c.channel.n0 == 1.0);
  CHECK(c.n_samples == 200000);
}

TEST_CASE("comments and blank lines are ignored") {
  const ExperimentConfig c = parse_config("# hello\n\n  m = 50  # trailing\n");
  CHECK(c.system.m == 50);
}

TEST_CASE("unknown keys and malformed lines are rejected") {
  CHECK_THROWS_AS(parse_config("sigmasd = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("just some words\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("m = fifty\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("power_mode = both\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("scheme = warp\n"), std::invalid_argument);
}

TEST_CASE("round trip is lossless over randomized configs") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    ExperimentConfig c;
    c.channel.sigma_sd = 0.1 + 10.0 * u(rng);
    c.channel.sigma_sr = 0.1 + 10.0 * u(rng);
    c.channel.sigma_rd = 0.1 + 10.0 * u(rng);
    c.channel.n0 = 0.01 + 5.0 * u(rng);
    c.system.m = 3 + static_cast<int>(u(rng) * 10000);
    c.system.alpha = u(rng);
    c.system.scheme = static_cast<Scheme>(static_cast<int>(u(rng) * 4) % 4);
    c.system.delta_s = u(rng);
    c.system.delta_r = u(rng);
    if (u(rng) < 0.5) {
      c.system.power = PowerSpec::explicit_powers(100.0 * u(rng), 100.0 * u(rng));
    } else {
      c.system.power = PowerSpec::total_split(100.0 * u(rng), 0.01 + 0.99 * u(rng));
    }
    c.system.literal_paper_parallel = u(rng) < 0.5;
    c.sweep_variable = (u(rng) < 0.5) ? "alpha" : "theta";
    c.grid_lo = u(rng);
    c.grid_hi = c.grid_lo + u(rng);
    c.grid_points = static_cast<int>(u(rng) * 100);
    c.snr_lo = 1e-4 + u(rng);
    c.snr_hi = c.snr_lo + 10.0 * u(rng);
    c.snr_per_decade = 1 + static_cast<int>(u(rng) * 60);
    c.budget = 5 + static_cast<int>(u(rng) * 100);
    c.n_samples = 1 + static_cast<std::size_t>(u(rng) * 1e7);
    c.seed = rng();
    c.workers = static_cast<unsigned>(u(rng) * 64);
    c.out = "results/run_" + std::to_string(i);

    const ExperimentConfig back = parse_config(render_config(c));
    CHECK(back == c);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_sig9(1.0 / 3.0) == "0.333333333");
  CHECK(parse_config("alpha = " + format_double(0.1 + 0.2) + "\n").system.alpha == 0.1 + 0.2);
}
