#include <complex>

#include "doctest.h"
#include "rpm/errors.hpp"
#include "rpm/oracle.hpp"
#include "rpm/series.hpp"

using namespace rpm;

TEST_CASE("psi series of the harmonic ground state is exp(-x^2/2)") {
  const auto psi = oracle::psi_series(preset_triple_well(0), Rational(1), 6);
  Rational term = 1;
  for (int j = 0; j <= 6; ++j) {
    CHECK(psi.c[j] == term);
    term *= Rational(-1, 2 * (j + 1));
  }
}

TEST_CASE("psi series coefficients by hand for the triple well") {
  const ProblemSpec s = preset_triple_well(Rational(7, 50));
  const Rational E(97, 100);
  const auto psi = oracle::psi_series(s, E, 2);
  // 2 c_1 = -E,  12 c_2 = v_1 c_0 - E c_1
  CHECK(psi.c[1] == -E / 2);
  CHECK(psi.c[2] == (1 + E * E / 2) / 12);
}

TEST_CASE("two routes to f agree exactly") {
  for (const Rational& alpha : {Rational(0), Rational(1)}) {
    const ProblemSpec s = preset_double_well(Rational(1, 4)).with_alpha(alpha);
    const auto via_psi = oracle::f_from_psi(oracle::psi_series(s, Rational(5, 3), 21));
    const auto direct = rational_coefficients(s, Rational(5, 3), 20);
    REQUIRE(via_psi.size() >= direct.size());
    for (std::size_t j = 0; j < direct.size(); ++j) CHECK(via_psi[j] == direct[j]);
  }
  oracle::PsiSeries bad{{Rational(2), Rational(1)}, 0, 2};
  CHECK_THROWS_AS(oracle::f_from_psi(bad), NormalizationError);
}

TEST_CASE("Bareiss determinant") {
  RationalMatrix m(3, 3, Rational(0));
  m(0, 0) = Rational(1, 2);
  m(0, 1) = Rational(1, 3);
  m(0, 2) = 1;
  m(1, 0) = Rational(1, 3);
  m(1, 1) = Rational(1, 4);
  m(1, 2) = Rational(-2, 5);
  m(2, 0) = 0;
  m(2, 1) = 7;
  m(2, 2) = Rational(1, 7);
  // cofactor expansion along the first row
  const Rational expected = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                            m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                            m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  CHECK(oracle::exact_determinant(m) == expected);
  RationalMatrix swap(2, 2, Rational(0));
  swap(0, 1) = 3;
  swap(1, 0) = 5;
  CHECK(oracle::exact_determinant(swap) == -15);
  CHECK_THROWS_AS(oracle::exact_determinant(RationalMatrix(9, 9, Rational(1))), CostGuardError);
  CHECK_THROWS_AS(oracle::exact_determinant(RationalMatrix(2, 3, Rational(1))), SizeError);
}

TEST_CASE("wkb ratio edge cases") {
  const auto ctx = PrecisionContext::with_digits(40);
  const Real im = parse_real("1e-10", ctx);
  CHECK_FALSE(oracle::wkb_ratio(2, 0, im).has_value());
  CHECK_THROWS_AS(oracle::wkb_ratio(4, Rational(1, 10), im), ConfigError);
  CHECK_THROWS_AS(oracle::wkb_ratio(2, Rational(-1, 10), im), DomainError);
  // g^2 e^(1/(2g^2)) at g = 1/2 is e^2/4.
  const auto r = oracle::wkb_ratio(2, Rational(1, 2), Real(1L, ctx));
  REQUIRE(r.has_value());
  CHECK(render_decimal(*r, 10) == "1.847264025");
  CHECK_FALSE(oracle::im_scale_log10(Preset::custom, Rational(1, 10)).has_value());
  CHECK(*oracle::im_scale_log10(Preset::triple_well, Rational(1, 10)) < -15);
}

TEST_CASE("rotation angle rule and argument checks") {
  CHECK(oracle::default_rotation_angle(preset_double_well(Rational(3, 10))) == doctest::Approx(0.2));
  CHECK(oracle::default_rotation_angle(preset_triple_well(Rational(3, 10))) ==
        doctest::Approx(3.14159265358979 * 3 / 16));
  const auto s = preset_double_well(Rational(3, 10));
  oracle::RotationOptions bad;
  bad.theta = 0.9;
  CHECK_THROWS_AS(oracle::complex_rotation_check(s, {0.8, -0.07}, bad), DomainError);
  bad.theta = 0.2;
  bad.basis_size = 500;
  CHECK_THROWS_AS(oracle::complex_rotation_check(s, {0.8, -0.07}, bad), DomainError);
  CHECK_THROWS_AS(oracle::complex_rotation_check(custom({{2, 1}}, 2, 2), {1, 0}), UnsupportedPotential);
}

TEST_CASE("rotation reproduces harmonic levels and a resonance") {
  oracle::RotationOptions opt;
  opt.basis_size = 60;
  const auto h = oracle::complex_rotation_check(preset_triple_well(0), {1.0, 0.0}, opt);
  CHECK(h.found);
  CHECK(h.energy.real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(h.energy.imag()) < 1e-10);
  const auto odd = oracle::complex_rotation_check(preset_triple_well(0).with_alpha(1), {3.0, 0.0}, opt);
  CHECK(odd.energy.real() == doctest::Approx(3.0).epsilon(1e-10));
  const auto r = oracle::complex_rotation_check(preset_double_well(Rational(3, 10)), {0.81, -0.069});
  CHECK(r.found);
  CHECK(r.stable);
  CHECK(r.energy.imag() < 0);
}

TEST_CASE("suite outcomes") {
  const auto two = oracle::two_route_check(preset_triple_well(Rational(7, 50)), {Rational(1), Rational(1, 3)}, 30);
  CHECK(two.pass);
  CHECK(two.name == "two-route");
  const auto det = oracle::determinant_check(preset_double_well(Rational(1, 5)), Rational(7, 10), 6,
                                             PrecisionContext::with_digits(40));
  CHECK(det.pass);
}
