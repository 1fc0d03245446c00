#include "doctest.h"
#include "rpm/errors.hpp"
#include "rpm/solver.hpp"

using namespace rpm;

TEST_CASE("config validation") {
  SolveConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.D_max = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.target_digits = 5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.d = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK(parse_step_rule("newton") == StepRule::newton);
  CHECK_THROWS_AS(parse_step_rule("halley"), ConfigError);
  CHECK(verdict_name(Verdict::not_converged) == "not-converged");
}

TEST_CASE("canonical_root snaps tiny imaginary parts and fixes the sign") {
  const auto ctx = PrecisionContext::with_digits(40);
  const Complex a = canonical_root(parse_decimal("1.5-1e-35i", ctx), ctx);
  CHECK(a.im().is_zero());
  const Complex b = canonical_root(parse_decimal("1.5-2e-10i", ctx), ctx);
  CHECK(b.im().sign() > 0);
}

TEST_CASE("agreement_digits") {
  const auto ctx = PrecisionContext::with_digits(40);
  CHECK(agreement_digits(parse_real("1.23456", ctx), parse_real("1.23457", ctx), 40) == 5);
  CHECK(agreement_digits(parse_real("2", ctx), parse_real("2", ctx), 40) == 40);
  CHECK(agreement_digits(parse_real("1", ctx), parse_real("-1", ctx), 40) == 0);
}

TEST_CASE("harmonic oscillator levels from perturbed seeds") {
  const auto ctx = PrecisionContext::with_digits(60);
  const ProblemSpec s = preset_triple_well(0);
  SolveConfig cfg;
  for (const char* seed : {"1.1", "0.9"}) {
    const auto r = find_root(s, HankelSpec::make(4, 0), parse_decimal(seed, ctx), cfg, ctx);
    CHECK(r.converged);
    CHECK(agreement_digits(r.energy.re(), Real(1L, ctx), 60) >= 40);
  }
  const ProblemSpec odd = s.with_alpha(1);
  cfg.state_index = 0;
  const auto seq = hankel_sequence(odd, cfg, ctx);
  CHECK(render_decimal(seq.final_root().energy.re(), 30) == "3");
}

TEST_CASE("initial precision follows the target, D_max and the Im hint") {
  SolveConfig cfg;
  cfg.target_digits = 20;
  cfg.D_max = 15;
  CHECK(initial_digits(cfg) == 2 * 20 + 10 * 15);
  cfg.im_scale_log10 = -31.9;
  CHECK(initial_digits(cfg) == 2 * 20 + 10 * 15 + 32);
}

TEST_CASE("short triple-well sequence converges and reports a precision check") {
  const ProblemSpec s = preset_triple_well(Rational(7, 50));
  SolveConfig cfg;
  cfg.D_max = 8;
  cfg.target_digits = 12;
  const auto r = solve_adaptive(s, cfg);
  REQUIRE(r.entries.size() == 7);
  CHECK(r.entries.front().D == 2);
  CHECK(r.entries.back().D == 8);
  CHECK(r.entries[0].root.energy.im().is_zero());
  CHECK(r.final_root().energy.im().sign() > 0);
  REQUIRE(r.precision_check.has_value());
  CHECK(r.precision_check->agreement >= cfg.target_digits);
  CHECK(r.precision_check->check_digits == r.precision_check->digits + 20);
  // Table 1 at D = 8 to the 12 digits the text shows.
  CHECK(render_decimal(r.final_root().energy.re(), 12) == "0.969129320027");
}

TEST_CASE("fixed precision never escalates") {
  SolveConfig cfg;
  cfg.D_max = 5;
  cfg.target_digits = 10;
  cfg.fixed_digits = 40;
  const auto r = solve_adaptive(preset_double_well(Rational(3, 10)), cfg);
  CHECK(r.digits_used == 40);
  CHECK(r.escalations == 0);
}

TEST_CASE("newton rule with kick also finds the resonance") {
  SolveConfig cfg;
  cfg.D_max = 10;
  cfg.target_digits = 10;
  cfg.step_rule = StepRule::newton;
  const auto newton = solve_adaptive(preset_double_well(Rational(3, 10)), cfg);
  cfg.step_rule = StepRule::quadratic;
  const auto quad = solve_adaptive(preset_double_well(Rational(3, 10)), cfg);
  CHECK(agreement_digits(newton.final_root().energy.re(), quad.final_root().energy.re(), 30) >= cfg.target_digits);
  CHECK(agreement_digits(newton.final_root().energy.im(), quad.final_root().energy.im(), 30) >= cfg.target_digits);
}

TEST_CASE("sweep keeps input order and rejects unordered lists") {
  SolveConfig cfg;
  cfg.D_max = 6;
  cfg.target_digits = 8;
  const std::vector<Rational> gs = {Rational(1, 5), Rational(1, 4), Rational(3, 10)};
  const auto serial = sweep(Preset::double_well, gs, cfg, 1);
  const auto parallel = sweep(Preset::double_well, gs, cfg, 3);
  REQUIRE(serial.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(serial[i].g == gs[i]);
    REQUIRE(serial[i].ok());
    REQUIRE(parallel[i].ok());
    CHECK(serial[i].report->final_root().energy == parallel[i].report->final_root().energy);
    CHECK(serial[i].ratio.has_value());
  }
  CHECK_THROWS_AS(sweep(Preset::double_well, {Rational(1, 4), Rational(1, 5)}, cfg), ConfigError);
  CHECK_THROWS_AS(sweep(Preset::double_well, {}, cfg), ConfigError);
}
