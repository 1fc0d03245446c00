#pragma once

// Verification paths that share nothing with the Riccati/Hankel pipeline
// beyond the problem definition.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rpm/apnum.hpp"
#include "rpm/hankel.hpp"
#include "rpm/problem.hpp"

namespace rpm::oracle {

/// Psi(x) = x^alpha sum_j c_j x^(2j), c_0 = 1.
struct PsiSeries {
  std::vector<Rational> c;
  Rational alpha;
  int beta = 2;
};

/// Substituting the ansatz into Psi'' + (E - V) Psi = 0 gives
///   2j (2j + 2 alpha - 1) c_j = sum_k v_k c_(j-1-k) - E c_(j-1).
/// The centrifugal term is absorbed by alpha(alpha-1) = V_-2.
PsiSeries psi_series(const ProblemSpec& spec, const Rational& energy, int jmax);

/// f_0..f_(n-1) for a series with n = c.size() - 1 usable orders, from
/// f(x) S(x^2) = -2 x S'(x^2) by Cauchy division:
///   f_n = -2 (n+1) c_(n+1) - sum_(k=1..n) c_k f_(n-k).
/// Throws NormalizationError unless c_0 = 1.
std::vector<Rational> f_from_psi(const PsiSeries& psi);

/// Largest dimension exact_determinant accepts.
constexpr int kMaxExactDimension = 8;

/// Fraction-free Bareiss elimination on the rows scaled to integers.
/// Throws CostGuardError above kMaxExactDimension, SizeError if not square.
Rational exact_determinant(const RationalMatrix& m);

/// Ratio columns of the reference sweeps:
///   table 2: Im E g^2 exp(1/(2 g^2)),   table 3: Im E g exp(1/(3 g^2)).
/// Evaluated at >= 30 digits and reduced to 10 significant digits; the
/// reference columns are truncated, so reproduction passes `truncate`.
/// Empty for g = 0; ConfigError for an unknown table, DomainError for g < 0.
std::optional<Real> wkb_ratio(int table_id, const Rational& g, const Real& im_energy,
                              RenderMode mode = RenderMode::nearest);

/// Semiclassical double-well estimate 4/(2 pi g^2) exp(-1/(3 g^2)). Its
/// prefactor does not match the table 3 column; both are kept as printed.
Real wkb_double_well_estimate(const Rational& g, const PrecisionContext& ctx);

/// Rough log10 |Im E| for a preset, used to size the working precision:
/// exp(-1/(2 g^2)) / g^2 for the triple well, the estimate above for the
/// double well. Empty for g = 0 or custom potentials.
std::optional<double> im_scale_log10(Preset preset, const Rational& g);

struct RotationOptions {
  /// Empty picks default_rotation_angle().
  std::optional<double> theta;
  /// Oscillator functions 0..basis_size-1; only the parity block of alpha is used.
  int basis_size = 200;
  double omega = 1.0;
  /// Largest allowed |E(theta +- 0.05) - E(theta)| / |E(theta)|.
  double stability_tolerance = 1e-6;
};

struct RotationResult {
  bool found = false;
  /// Eigenvalue nearest the target at theta; rotation gives Im E <= 0.
  std::complex<double> energy;
  double theta = 0;
  /// max relative change of the tracked eigenvalue over theta +- 0.05.
  double theta_variation = 0;
  bool stable = false;
};

/// 0.2, or 3 pi / (4 (K + 1)) when the top coefficient v_K (K >= 3) is
/// positive. In that case smaller angles still return the real eigenvalue of
/// the Hermitian problem; the resonance is exposed only for theta above
/// pi / (2 (K + 1)), and the default is the midpoint of that window below pi/(K+1).
double default_rotation_angle(const ProblemSpec& spec);

/// Complex-scaled Hamiltonian e^(-2 i theta) p^2 + sum_k v_k e^(2 i k theta) x^(2k)
/// in an oscillator basis of frequency omega, diagonalized in double precision.
/// Throws DomainError unless 0 < theta < pi/4 and basis_size <= 400.
RotationResult complex_rotation_check(const ProblemSpec& spec, std::complex<double> target,
                                      const RotationOptions& options = {});

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// f_from_psi(psi_series) == rational_coefficients for j <= jmax at each energy.
CheckOutcome two_route_check(const ProblemSpec& spec, const std::vector<Rational>& energies,
                             int jmax = 30);

/// scaled_determinant against exact_determinant on rational Hankel matrices
/// of `spec` at `energy`, D = 2..max_D, required agreement digits - 5.
CheckOutcome determinant_check(const ProblemSpec& spec, const Rational& energy, int max_D,
                               const PrecisionContext& ctx);

}  // namespace rpm::oracle
