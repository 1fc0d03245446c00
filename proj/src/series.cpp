#include "rpm/series.hpp"

#include "rpm/errors.hpp"

namespace rpm {

namespace {

// sum_{i+j=m} a_i b_j
Complex cauchy(const std::vector<Complex>& a, const std::vector<Complex>& b, int m,
               const PrecisionContext& ctx) {
  Complex s(ctx);
  for (int i = 0; i <= m; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(m - i)];
  return s;
}

// sum_{i+j=m} a_i a_j using the symmetry of the sum.
Complex cauchy_square(const std::vector<Complex>& a, int m, const PrecisionContext& ctx) {
  Complex s(ctx);
  for (int i = 0; 2 * i < m; ++i) s += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(m - i)];
  s = s * 2L;
  if (m % 2 == 0) {
    const Complex& mid = a[static_cast<std::size_t>(m / 2)];
    s += mid * mid;
  }
  return s;
}

CoefficientTable build(const ProblemSpec& spec, const Complex& energy, int jmax,
                       const PrecisionContext& ctx, int order) {
  if (jmax < 0) throw SizeError("jmax must be non-negative");
  const auto n_terms = static_cast<std::size_t>(jmax) + 1;
  const Complex e = energy.rounded(ctx);

  std::vector<Complex> f;
  std::vector<Complex> d1;
  std::vector<Complex> d2;
  f.reserve(n_terms);
  if (order >= 1) d1.reserve(n_terms);
  if (order >= 2) d2.reserve(n_terms);

  const Rational two_alpha = 2 * spec.alpha();
  const Real denom0(Rational(two_alpha + 1), ctx);
  f.push_back((e - Complex(Real(spec.coefficient(0), ctx))) / denom0);
  if (order >= 1) d1.push_back(Complex(Real(1L, ctx) / denom0));
  if (order >= 2) d2.emplace_back(ctx);

  for (int n = 1; n <= jmax; ++n) {
    const Real denom(Rational(two_alpha + 2 * n + 1), ctx);
    const int m = n - 1;
    Complex s = cauchy_square(f, m, ctx);
    const Rational v = spec.coefficient(n);
    if (v != 0) s -= Complex(Real(v, ctx));
    f.push_back(s / denom);
    if (order >= 1) {
      d1.push_back(cauchy(d1, f, m, ctx) * 2L / denom);
    }
    if (order >= 2) {
      Complex t = cauchy(d2, f, m, ctx) * 2L + cauchy_square(d1, m, ctx) * 2L;
      d2.push_back(t / denom);
    }
  }

  CoefficientTable table{e, std::move(f), std::nullopt, std::nullopt, jmax, ctx};
  if (order >= 1) table.df_dE = std::move(d1);
  if (order >= 2) table.d2f_dE2 = std::move(d2);
  return table;
}

}  // namespace

CoefficientTable riccati_coefficients(const ProblemSpec& spec, const Complex& energy, int jmax,
                                      const PrecisionContext& ctx) {
  return build(spec, energy, jmax, ctx, 0);
}

CoefficientTable riccati_coefficients_with_derivative(const ProblemSpec& spec,
                                                      const Complex& energy, int jmax,
                                                      const PrecisionContext& ctx) {
  return build(spec, energy, jmax, ctx, 1);
}

CoefficientTable riccati_coefficients_with_derivatives(const ProblemSpec& spec,
                                                       const Complex& energy, int jmax,
                                                       const PrecisionContext& ctx) {
  return build(spec, energy, jmax, ctx, 2);
}

std::vector<Rational> rational_coefficients(const ProblemSpec& spec, const Rational& energy,
                                            int jmax) {
  if (jmax < 0) throw SizeError("jmax must be non-negative");
  std::vector<Rational> f;
  f.reserve(static_cast<std::size_t>(jmax) + 1);
  const Rational two_alpha = 2 * spec.alpha();
  f.push_back((energy - spec.coefficient(0)) / (two_alpha + 1));
  for (int n = 1; n <= jmax; ++n) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) {
      s += f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(n - 1 - i)];
    }
    s -= spec.coefficient(n);
    Rational fn = s / (two_alpha + 2 * n + 1);
    fn.canonicalize();
    f.push_back(std::move(fn));
  }
  return f;
}

std::vector<Rational> rational_coefficients(const ProblemSpec& spec, std::string_view energy,
                                            int jmax) {
  return rational_coefficients(spec, parse_rational(energy), jmax);
}

}  // namespace rpm
