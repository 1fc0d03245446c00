#include "doctest.h"
#include "rpm/errors.hpp"
#include "rpm/problem.hpp"

using namespace rpm;

TEST_CASE("triple-well preset coefficients") {
  const ProblemSpec s = preset_triple_well(Rational(7, 50));
  REQUIRE(s.max_k() == 3);
  CHECK(s.coefficient(0) == 0);
  CHECK(s.coefficient(1) == 1);
  CHECK(s.coefficient(2) == Rational(-49, 1250));
  CHECK(s.coefficient(3) == Rational(2401, 6250000));
  CHECK(s.coefficient(7) == 0);
  CHECK(s.preset() == Preset::triple_well);
  CHECK(*s.g() == Rational(7, 50));
  CHECK(s.alpha() == 0);
}

TEST_CASE("double-well preset and the g = 0 coincidence") {
  const ProblemSpec s = preset_double_well(Rational(3, 10));
  REQUIRE(s.max_k() == 2);
  CHECK(s.coefficient(2) == Rational(-9, 50));
  CHECK(preset_double_well(0) == preset_triple_well(0));
  CHECK(preset_triple_well(0).max_k() == 1);
  CHECK(make_preset(Preset::double_well, Rational(1, 10)) == preset_double_well(Rational(1, 10)));
  CHECK_THROWS_AS(make_preset(Preset::custom, 1), ConfigError);
}

TEST_CASE("custom potentials from the power map text") {
  const auto map = parse_potential("k2=1,k4=-0.0392,k6=0.00038416");
  CHECK(map.at(4) == Rational(-49, 1250));
  const ProblemSpec s = custom(map);
  CHECK(s.coefficients() == preset_triple_well(Rational(7, 50)).coefficients());
  CHECK(s.preset() == Preset::custom);
  CHECK_FALSE(s.g().has_value());
  CHECK(render_potential(s) == "k2=1,k4=-49/1250,k6=2401/6250000");
  CHECK_THROWS_AS(custom({{3, 1}}), UnsupportedPotential);
  CHECK_THROWS_AS(custom({{-2, 1}}), UnsupportedPotential);
  CHECK_THROWS_AS(parse_potential("y2=1"), ParseError);
}

TEST_CASE("alpha and the centrifugal strength must agree") {
  CHECK_NOTHROW(custom({{2, 1}}, 1, 0));
  CHECK_THROWS_AS(custom({{2, 1}}, 2, 0), ConsistencyError);
  const ProblemSpec cf = custom({{2, 1}}, 2, 2);
  CHECK(cf.central_field());
  CHECK_FALSE(cf.warnings().empty());
  const ProblemSpec odd = preset_double_well(Rational(1, 5)).with_alpha(1);
  CHECK(odd.alpha() == 1);
  CHECK(odd.coefficient(2) == preset_double_well(Rational(1, 5)).coefficient(2));
}

TEST_CASE("preset names round trip") {
  CHECK(parse_preset(preset_name(Preset::triple_well)) == Preset::triple_well);
  CHECK(parse_preset("double-well") == Preset::double_well);
  CHECK_THROWS_AS(parse_preset("quartic"), ConfigError);
}
