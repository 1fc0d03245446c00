#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rpm/apnum.hpp"
#include "rpm/errors.hpp"
#include "rpm/problem.hpp"
#include "rpm/series.hpp"

namespace rpm {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, const T& fill)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<Complex>;
using RationalMatrix = DenseMatrix<Rational>;

/// Dimension D = N + 1 >= 2 and displacement d >= 0 of H_D^d.
struct HankelSpec {
  int D = 2;
  int d = 0;

  /// Throws SizeError on D < 2 or d < 0.
  static HankelSpec make(int D, int d);
  int jmax() const noexcept { return required_jmax(D, d); }
};

/// M[i][j] = f_{i+j+d+1}, i, j = 0..D-1.
template <class T>
DenseMatrix<T> hankel_matrix(std::span<const T> f, const HankelSpec& h) {
  if (static_cast<int>(f.size()) <= h.jmax()) {
    throw SizeError("Hankel matrix D=" + std::to_string(h.D) + ", d=" + std::to_string(h.d) +
                    " needs coefficients up to f_" + std::to_string(h.jmax()));
  }
  DenseMatrix<T> m(h.D, h.D, f[0]);
  for (int i = 0; i < h.D; ++i) {
    for (int j = 0; j < h.D; ++j) m(i, j) = f[static_cast<std::size_t>(i + j + h.d + 1)];
  }
  return m;
}

ComplexMatrix hankel_matrix(const CoefficientTable& table, const HankelSpec& h);

/// mantissa * 10^exp10 with 0.1 <= |mantissa| < 10, or exact zero (0, 0).
struct ScaledValue {
  Complex mantissa;
  long exp10 = 0;

  bool is_zero() const noexcept { return mantissa.is_zero(); }
  /// log10 of the magnitude; -inf for zero.
  double log10_abs() const noexcept;
  /// The represented value at the mantissa's precision.
  Complex value() const;
};

/// Determinant by LU with partial pivoting; the pivot product is accumulated
/// in scaled form. An exactly zero pivot column returns zero.
ScaledValue scaled_determinant(const ComplexMatrix& m, const PrecisionContext& ctx);

/// LU factorization with partial pivoting (row swaps by magnitude).
class LuFactorization {
 public:
  LuFactorization(const ComplexMatrix& m, const PrecisionContext& ctx);

  int size() const noexcept { return n_; }
  /// A pivot column was exactly zero.
  bool exactly_singular() const noexcept { return exact_zero_; }
  /// Some pivot fell below 10^(-digits+5) times the norm of its original row.
  bool numerically_singular() const noexcept { return near_singular_; }
  ScaledValue determinant() const;
  /// Solves M x = rhs. Requires !exactly_singular().
  std::vector<Complex> solve(std::span<const Complex> rhs) const;

 private:
  int n_;
  PrecisionContext ctx_;
  ComplexMatrix lu_;
  std::vector<int> perm_;
  int swaps_ = 0;
  bool exact_zero_ = false;
  bool near_singular_ = false;
};

struct NewtonIncrement {
  Complex increment;
  /// M is exactly singular, or ill conditioned with a Newton step below
  /// 10^(-digits+5) relative: E is a root and the increment is 0.
  bool at_root = false;
};

/// Delta E = -H/H' = -1 / tr(M^-1 M'), with M' built from df_j/dE.
NewtonIncrement newton_increment(const ProblemSpec& spec, const Complex& energy,
                                 const HankelSpec& h, const PrecisionContext& ctx);

/// Logarithmic derivatives of H_D^d at E from one LU factorization:
///   H'/H  = tr(X),                     X = M^-1 M'
///   H''/H = tr(X)^2 - tr(X^2) + tr(M^-1 M'').
struct HankelLocalModel {
  Complex energy;
  ScaledValue determinant;
  Complex log_derivative;
  std::optional<Complex> second_ratio;
  /// M is exactly singular; the derivatives are not computed.
  bool at_root = false;
  /// Some LU pivot is below the numerical-singularity threshold.
  bool ill_conditioned = false;

  /// -H/H'.
  Complex newton_step() const;
  /// Root nearest E of the local model 1 + (H'/H) s + (H''/H) s^2 / 2 = 0.
  /// From a real E this step is complex when the model's roots are a
  /// conjugate pair. Needs second_ratio.
  std::optional<Complex> quadratic_step() const;
  /// Newton step on H/H' (quadratic at roots of any multiplicity).
  std::optional<Complex> multiplicity_step() const;
};

/// order 1 fills log_derivative; order 2 also fills second_ratio.
HankelLocalModel local_model(const ProblemSpec& spec, const Complex& energy, const HankelSpec& h,
                             const PrecisionContext& ctx, int order = 2);

/// Scaled determinant of H_D^d at E.
ScaledValue hankel_determinant(const ProblemSpec& spec, const Complex& energy,
                               const HankelSpec& h, const PrecisionContext& ctx);

}  // namespace rpm
