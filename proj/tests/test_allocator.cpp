#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "relaysim/sweep.hpp"

using namespace relaysim;

namespace {
SweepSpec base_spec() {
  SweepSpec spec;
  spec.channel.sigma_sd = 1.0;
  spec.channel.sigma_sr = 4.0;
  spec.channel.sigma_rd = 4.0;
  spec.channel.n0 = 1.0;
  spec.base.m = 100;
  spec.base.scheme = Scheme::AF;
  spec.base.alpha = 0.5;
  spec.base.delta_s = 0.1;
  spec.base.delta_r = 0.1;
  spec.base.power = PowerSpec::explicit_powers(0.5, 0.5);
  spec.n_samples = 20000;
  spec.seed = 17;
  return spec;
}
}  // namespace

TEST_CASE("single-point grid") {
  SweepSpec spec = base_spec();
  spec.variable = SweepVariable::Alpha;
  spec.grid = {0.3};
  const SweepResult res = sweep(spec);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].rate.has_value());
  CHECK(res.argmax == 0.3);
}

TEST_CASE("grid must be strictly increasing and nonempty") {
  SweepSpec spec = base_spec();
  spec.grid = {};
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
  spec.grid = {0.3, 0.3};
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
  spec.grid = {0.4, 0.3};
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
}

TEST_CASE("invalid grid points become row errors, sweep continues") {
  SweepSpec spec = base_spec();
  spec.variable = SweepVariable::Alpha;
  spec.grid = {0.3, 0.5, 0.7};  // 0.7 outside (0, 1/2] for AF
  const SweepResult res = sweep(spec);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].rate.has_value());
  CHECK(res.rows[1].rate.has_value());
  CHECK(!res.rows[2].rate.has_value());
  CHECK(!res.rows[2].error.empty());
  CHECK(res.argmax.has_value());
}

TEST_CASE("common random numbers: a row is reproducible standalone") {
  SweepSpec spec = base_spec();
  spec.variable = SweepVariable::Alpha;
  spec.grid = {0.1, 0.3, 0.5};
  const SweepResult res = sweep(spec);
  SystemConfig cfg = spec.base;
  cfg.alpha = 0.3;
  const RateEstimate lone = rate_estimate(spec.channel, cfg, spec.n_samples, spec.seed);
  CHECK(res.rows[1].rate->mean == lone.mean);
  CHECK(res.rows[1].rate->std_error == lone.std_error);
}

TEST_CASE("theta sweep requires a total-power spec") {
  SweepSpec spec = base_spec();
  spec.variable = SweepVariable::Theta;
  spec.grid = {0.5, 0.6};
  const SweepResult res = sweep(spec);
  CHECK(!res.rows[0].rate.has_value());  // explicit power -> row error
  spec.base.power = PowerSpec::total_split(1.0, 0.5);
  const SweepResult ok = sweep(spec);
  CHECK(ok.rows[0].rate.has_value());
}

TEST_CASE("argmax ties break toward the smaller grid value") {
  // delta_r sweep on the Direct scheme: the relay training fraction is
  // irrelevant, so all rows are bit-identical
  SweepSpec spec = base_spec();
  spec.base.scheme = Scheme::Direct;
  spec.variable = SweepVariable::DeltaR;
  spec.grid = {0.1, 0.2, 0.3};
  const SweepResult res = sweep(spec);
  CHECK(res.rows[0].rate->mean == res.rows[2].rate->mean);
  CHECK(res.argmax == 0.1);
  CHECK(res.statistically_tied);
}

TEST_CASE("low-power AF favors full cooperation") {
  SweepSpec spec = base_spec();
  spec.variable = SweepVariable::Alpha;
  spec.grid = default_alpha_grid(Scheme::AF);
  spec.n_samples = 50000;
  const SweepResult res = sweep(spec);
  CHECK(res.argmax == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("optimize_scalar") {
  SUBCASE("unimodal synthetic objective") {
    auto obj = [](double x) {
      RateEstimate r;
      r.mean = -(x - 0.3) * (x - 0.3);
      return r;
    };
    const auto [x, r] = optimize_scalar(obj, 0.0, 1.0, 60);
    CHECK(std::abs(x - 0.3) < 1e-3);
  }
  SUBCASE("constant objective returns the lower endpoint") {
    auto obj = [](double) { return RateEstimate{1.0, 0.0, 1, 0}; };
    const auto [x, r] = optimize_scalar(obj, 0.2, 0.9, 20);
    CHECK(x == 0.2);
  }
  SUBCASE("invalid arguments") {
    auto obj = [](double) { return RateEstimate{}; };
    CHECK_THROWS_AS(optimize_scalar(obj, 1.0, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(optimize_scalar(obj, 0.0, 1.0, 2), std::invalid_argument);
  }
  SUBCASE("low-power AF alpha optimization lands at 1/2") {
    SweepSpec spec = base_spec();
    spec.base.power = PowerSpec::total_split(1.0, 0.6);
    auto obj = [&](double a) {
      SystemConfig cfg = spec.base;
      cfg.alpha = a;
      return rate_estimate(spec.channel, cfg, 50000, spec.seed);
    };
    const auto [x, r] = optimize_scalar(obj, 0.02, 0.5, 30);
    CHECK(x == doctest::Approx(0.5).epsilon(0.03));
  }
}

TEST_CASE("default grids respect scheme domains") {
  for (double a : default_alpha_grid(Scheme::AF)) CHECK((a > 0.0 && a <= 0.5));
  for (double a : default_alpha_grid(Scheme::ParallelDF)) CHECK((a > 0.0 && a < 1.0));
  for (double t : default_theta_grid()) CHECK((t > 0.0 && t <= 1.0));
  const auto g = log_spaced_grid(1e-3, 10.0);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 10.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}
