#pragma once

// Coefficients f_j of the regularized logarithmic derivative
//
//     f(x) = alpha/x - Psi'(x)/Psi(x) = sum_j f_j x^(2j+1),
//
// obtained by substituting the series into the Riccati equation
//     f' - f^2 + (2 alpha / x) f + V(x) - E - alpha(alpha-1)/x^2 = 0
// and collecting powers of x^(2n):
//
//     (2 alpha + 1) f_0           = E - v_0
//     (2n + 2 alpha + 1) f_n      = sum_{i+j=n-1} f_i f_j - v_n      (n >= 1)

#include <optional>
#include <string_view>
#include <vector>

#include "rpm/apnum.hpp"
#include "rpm/problem.hpp"

namespace rpm {

struct CoefficientTable {
  Complex energy;
  std::vector<Complex> f;
  /// df_j/dE, present when requested.
  std::optional<std::vector<Complex>> df_dE;
  /// d^2 f_j/dE^2, present when requested.
  std::optional<std::vector<Complex>> d2f_dE2;
  int jmax = 0;
  PrecisionContext ctx;
};

CoefficientTable riccati_coefficients(const ProblemSpec& spec, const Complex& energy, int jmax,
                                      const PrecisionContext& ctx);

/// Adds df_j/dE from the differentiated recursion
///   (2 alpha + 1) f'_0 = 1,   (2n + 2 alpha + 1) f'_n = sum_{i+j=n-1} (f'_i f_j + f_i f'_j).
CoefficientTable riccati_coefficients_with_derivative(const ProblemSpec& spec,
                                                      const Complex& energy, int jmax,
                                                      const PrecisionContext& ctx);

/// Adds both first and second E-derivatives.
CoefficientTable riccati_coefficients_with_derivatives(const ProblemSpec& spec,
                                                       const Complex& energy, int jmax,
                                                       const PrecisionContext& ctx);

/// Exact f_0..f_jmax, the ground truth for the floating pipeline.
std::vector<Rational> rational_coefficients(const ProblemSpec& spec, const Rational& energy,
                                            int jmax);
/// Parses the energy exactly; complex input throws ModeError.
std::vector<Rational> rational_coefficients(const ProblemSpec& spec, std::string_view energy,
                                            int jmax);

/// Largest coefficient index read by the D x D Hankel matrix with displacement d.
constexpr int required_jmax(int D, int d) { return 2 * D + d - 1; }

}  // namespace rpm
