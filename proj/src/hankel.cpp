#include "rpm/hankel.hpp"

#include <cmath>
#include <utility>

namespace rpm {

namespace {

// |re| + |im|, used to rank pivot candidates.
Real magnitude1(const Complex& z) { return abs(z.re()) + abs(z.im()); }

// Keeps 1 <= |mantissa| < 10 up to rounding, so always within [0.1, 10).
void normalize(ScaledValue& v, const PrecisionContext& ctx) {
  if (v.mantissa.is_zero()) {
    v.exp10 = 0;
    return;
  }
  const auto shift = static_cast<long>(std::floor(v.mantissa.log10_abs()));
  if (shift != 0) {
    v.mantissa = v.mantissa * pow10(-shift, ctx);
    v.exp10 += shift;
  }
}

// Integer constant at the precision of z.
Complex constant_like(const Complex& z, long value) {
  Real re = Real::with_precision(z.precision());
  mpfr_set_si(re.raw(), value, MPFR_RNDN);
  return Complex(std::move(re));
}

}  // namespace

HankelSpec HankelSpec::make(int D, int d) {
  if (D < 2) throw SizeError("Hankel dimension D must be >= 2, got " + std::to_string(D));
  if (d < 0) throw SizeError("displacement d must be >= 0, got " + std::to_string(d));
  return HankelSpec{D, d};
}

ComplexMatrix hankel_matrix(const CoefficientTable& table, const HankelSpec& h) {
  return hankel_matrix(std::span<const Complex>(table.f), h);
}

double ScaledValue::log10_abs() const noexcept {
  return mantissa.log10_abs() + static_cast<double>(exp10);
}

Complex ScaledValue::value() const {
  if (is_zero()) return mantissa;
  Real scale = Real::with_precision(mantissa.precision());
  mpfr_set_ui(scale.raw(), 10, MPFR_RNDN);
  mpfr_pow_si(scale.raw(), scale.raw(), exp10, MPFR_RNDN);
  return mantissa * scale;
}

LuFactorization::LuFactorization(const ComplexMatrix& m, const PrecisionContext& ctx)
    : n_(m.rows()), ctx_(ctx), lu_(m), perm_(static_cast<std::size_t>(m.rows())) {
  if (m.rows() != m.cols()) throw SizeError("LU factorization needs a square matrix");
  std::vector<Real> row_norm;
  row_norm.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    perm_[static_cast<std::size_t>(i)] = i;
    Real norm(ctx);
    for (int j = 0; j < n_; ++j) {
      lu_(i, j) = lu_(i, j).rounded(ctx);
      const Real a = abs(lu_(i, j));
      if (a > norm) norm = a;
    }
    row_norm.push_back(std::move(norm));
  }
  const Real threshold = pow10(-(ctx.digits() - 5), ctx);

  for (int k = 0; k < n_; ++k) {
    int best = k;
    Real best_mag = magnitude1(lu_(k, k));
    for (int i = k + 1; i < n_; ++i) {
      Real mag = magnitude1(lu_(i, k));
      if (mag > best_mag) {
        best = i;
        best_mag = std::move(mag);
      }
    }
    if (best_mag.is_zero()) {
      exact_zero_ = true;
      near_singular_ = true;
      return;
    }
    if (best != k) {
      for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(best, j));
      std::swap(perm_[static_cast<std::size_t>(k)], perm_[static_cast<std::size_t>(best)]);
      ++swaps_;
    }
    const Complex& pivot = lu_(k, k);
    const Real& norm = row_norm[static_cast<std::size_t>(perm_[static_cast<std::size_t>(k)])];
    if (abs(pivot) < threshold * norm) near_singular_ = true;
    for (int i = k + 1; i < n_; ++i) {
      if (lu_(i, k).is_zero()) continue;
      const Complex factor = lu_(i, k) / pivot;
      for (int j = k + 1; j < n_; ++j) lu_(i, j) -= factor * lu_(k, j);
      lu_(i, k) = factor;
    }
  }
}

ScaledValue LuFactorization::determinant() const {
  ScaledValue v{Complex(ctx_), 0};
  if (exact_zero_) return v;
  v.mantissa = Complex(swaps_ % 2 == 0 ? 1L : -1L, ctx_);
  for (int k = 0; k < n_; ++k) {
    v.mantissa = v.mantissa * lu_(k, k);
    normalize(v, ctx_);
  }
  return v;
}

std::vector<Complex> LuFactorization::solve(std::span<const Complex> rhs) const {
  if (exact_zero_) throw SolveError("cannot solve with an exactly singular matrix");
  if (static_cast<int>(rhs.size()) != n_) throw SizeError("right-hand side has the wrong length");
  std::vector<Complex> x;
  x.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) x.push_back(rhs[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])]);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < i; ++j) x[static_cast<std::size_t>(i)] -= lu_(i, j) * x[static_cast<std::size_t>(j)];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    for (int j = i + 1; j < n_; ++j) x[static_cast<std::size_t>(i)] -= lu_(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] / lu_(i, i);
  }
  return x;
}

ScaledValue scaled_determinant(const ComplexMatrix& m, const PrecisionContext& ctx) {
  if (m.rows() != m.cols()) throw SizeError("determinant needs a square matrix");
  return LuFactorization(m, ctx).determinant();
}

ScaledValue hankel_determinant(const ProblemSpec& spec, const Complex& energy,
                               const HankelSpec& h, const PrecisionContext& ctx) {
  const CoefficientTable table = riccati_coefficients(spec, energy, h.jmax(), ctx);
  return scaled_determinant(hankel_matrix(table, h), ctx);
}

HankelLocalModel local_model(const ProblemSpec& spec, const Complex& energy, const HankelSpec& h,
                             const PrecisionContext& ctx, int order) {
  const CoefficientTable table =
      order >= 2 ? riccati_coefficients_with_derivatives(spec, energy, h.jmax(), ctx)
                 : riccati_coefficients_with_derivative(spec, energy, h.jmax(), ctx);
  const ComplexMatrix m = hankel_matrix(table, h);
  const LuFactorization lu(m, ctx);

  HankelLocalModel model{table.energy, lu.determinant(), Complex(ctx), std::nullopt, false,
                         lu.numerically_singular()};
  // A tiny pivot alone does not mark a root: deep Hankel matrices are badly
  // conditioned everywhere at modest precision. The step decides.
  if (lu.exactly_singular()) {
    model.at_root = true;
    return model;
  }

  const int n = h.D;
  const ComplexMatrix dm = hankel_matrix(std::span<const Complex>(*table.df_dE), h);
  // X = M^-1 M', one column at a time.
  ComplexMatrix x(n, n, Complex(ctx));
  std::vector<Complex> column(static_cast<std::size_t>(n), Complex(ctx));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = dm(i, j);
    const std::vector<Complex> sol = lu.solve(column);
    for (int i = 0; i < n; ++i) x(i, j) = sol[static_cast<std::size_t>(i)];
  }
  Complex trace(ctx);
  for (int i = 0; i < n; ++i) trace += x(i, i);
  model.log_derivative = trace;

  if (order >= 2) {
    Complex trace_sq(ctx);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) trace_sq += x(i, j) * x(j, i);
    }
    const ComplexMatrix d2m = hankel_matrix(std::span<const Complex>(*table.d2f_dE2), h);
    Complex trace2(ctx);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = d2m(i, j);
      trace2 += lu.solve(column)[static_cast<std::size_t>(j)];
    }
    model.second_ratio = trace * trace - trace_sq + trace2;
  }
  return model;
}

Complex HankelLocalModel::newton_step() const {
  if (at_root || log_derivative.is_zero()) return log_derivative * 0L;
  return -constant_like(log_derivative, 1) / log_derivative;
}

std::optional<Complex> HankelLocalModel::quadratic_step() const {
  if (at_root || !second_ratio) return std::nullopt;
  const Complex& g = log_derivative;
  const Complex disc = sqrt(g * g - *second_ratio * 2L);
  const Complex plus = g + disc;
  const Complex minus = g - disc;
  const Complex& den = abs(plus) >= abs(minus) ? plus : minus;
  if (den.is_zero()) return std::nullopt;
  return -constant_like(den, 2) / den;
}

std::optional<Complex> HankelLocalModel::multiplicity_step() const {
  if (at_root || !second_ratio) return std::nullopt;
  const Complex den = log_derivative * log_derivative - *second_ratio;
  if (den.is_zero()) return std::nullopt;
  return -log_derivative / den;
}

NewtonIncrement newton_increment(const ProblemSpec& spec, const Complex& energy,
                                 const HankelSpec& h, const PrecisionContext& ctx) {
  const HankelLocalModel model = local_model(spec, energy, h, ctx, 1);
  if (model.at_root) return {Complex(ctx), true};
  Complex step = model.newton_step();
  const double scale = std::max(0.0, model.energy.log10_abs());
  if (model.ill_conditioned && step.log10_abs() - scale < -(ctx.digits() - 5)) {
    return {Complex(ctx), true};
  }
  return {std::move(step), false};
}

}  // namespace rpm
