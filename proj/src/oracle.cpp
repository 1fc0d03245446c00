#include "rpm/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rpm/errors.hpp"
#include "rpm/series.hpp"

namespace rpm::oracle {

PsiSeries psi_series(const ProblemSpec& spec, const Rational& energy, int jmax) {
  if (spec.beta() != 2) throw UnsupportedPotential("psi_series needs beta = 2");
  if (jmax < 0) throw SizeError("jmax must be non-negative");
  PsiSeries psi{{Rational(1)}, spec.alpha(), 2};
  psi.c.reserve(static_cast<std::size_t>(jmax) + 1);
  for (int j = 1; j <= jmax; ++j) {
    Rational s = -energy * psi.c[static_cast<std::size_t>(j - 1)];
    for (int k = 0; k <= j - 1 && k <= spec.max_k(); ++k) {
      const Rational v = spec.coefficient(k);
      if (v != 0) s += v * psi.c[static_cast<std::size_t>(j - 1 - k)];
    }
    Rational c = s / (2 * j * (2 * j + 2 * spec.alpha() - 1));
    c.canonicalize();
    psi.c.push_back(std::move(c));
  }
  return psi;
}

std::vector<Rational> f_from_psi(const PsiSeries& psi) {
  if (psi.c.empty() || psi.c[0] != 1) throw NormalizationError("psi series needs c_0 = 1");
  const int orders = static_cast<int>(psi.c.size()) - 1;
  std::vector<Rational> f;
  f.reserve(static_cast<std::size_t>(std::max(orders, 0)));
  for (int n = 0; n < orders; ++n) {
    Rational s = -2 * (n + 1) * psi.c[static_cast<std::size_t>(n + 1)];
    for (int k = 1; k <= n; ++k) {
      s -= psi.c[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(n - k)];
    }
    s.canonicalize();
    f.push_back(std::move(s));
  }
  return f;
}

Rational exact_determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw SizeError("determinant needs a square matrix");
  const int n = m.rows();
  if (n > kMaxExactDimension) {
    throw CostGuardError("exact determinant limited to D <= " +
                         std::to_string(kMaxExactDimension) + ", got " + std::to_string(n));
  }
  if (n == 0) return Rational(1);

  // Clear denominators row by row: det(m) = det(a) / prod(scale).
  DenseMatrix<mpz_class> a(n, n, mpz_class(0));
  mpz_class scale = 1;
  for (int i = 0; i < n; ++i) {
    mpz_class row_lcm = 1;
    for (int j = 0; j < n; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (int j = 0; j < n; ++j) a(i, j) = m(i, j).get_num() * (row_lcm / m(i, j).get_den());
    scale *= row_lcm;
  }

  int sign = 1;
  mpz_class previous = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Rational(0);
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  Rational det(a(n - 1, n - 1) * sign, scale);
  det.canonicalize();
  return det;
}

std::optional<Real> wkb_ratio(int table_id, const Rational& g, const Real& im_energy,
                              RenderMode mode) {
  if (table_id != 2 && table_id != 3) {
    throw ConfigError("ratio column exists only for tables 2 and 3, got " + std::to_string(table_id));
  }
  if (g < 0) throw DomainError("g must be >= 0");
  if (g == 0) return std::nullopt;
  const int digits = std::max(30, static_cast<int>(im_energy.precision() * 0.30103) + 1);
  const auto ctx = PrecisionContext::with_digits(digits);
  const Real gr(g, ctx);
  const Real g2 = gr * gr;
  const Real one(1L, ctx);
  Real ratio = table_id == 2 ? im_energy.rounded(ctx) * g2 * exp(one / (g2 * 2L))
                             : im_energy.rounded(ctx) * gr * exp(one / (g2 * 3L));
  return parse_real(render_decimal(ratio, 10, mode), ctx);
}

Real wkb_double_well_estimate(const Rational& g, const PrecisionContext& ctx) {
  if (g <= 0) throw DomainError("WKB estimate needs g > 0");
  const Real gr(g, ctx);
  const Real g2 = gr * gr;
  Real pi = Real::with_precision(ctx.bits());
  mpfr_const_pi(pi.raw(), MPFR_RNDN);
  return Real(4L, ctx) / (pi * g2 * 2L) * exp(-(Real(1L, ctx) / (g2 * 3L)));
}

std::optional<double> im_scale_log10(Preset preset, const Rational& g) {
  if (g <= 0 || preset == Preset::custom) return std::nullopt;
  const double gd = g.get_d();
  const double g2 = gd * gd;
  if (preset == Preset::triple_well) return -1.0 / (2.0 * g2) / std::log(10.0) - std::log10(g2);
  return std::log10(4.0 / (2.0 * std::numbers::pi * g2)) - 1.0 / (3.0 * g2) / std::log(10.0);
}

double default_rotation_angle(const ProblemSpec& spec) {
  const int k = spec.max_k();
  if (k >= 3 && spec.coefficient(k) > 0) return 3.0 * std::numbers::pi / (4.0 * (k + 1));
  return 0.2;
}

namespace {

using ComplexMatrixD = Eigen::MatrixXcd;

// Rotated Hamiltonian restricted to the oscillator states of one parity.
ComplexMatrixD rotated_hamiltonian(const ProblemSpec& spec, double theta, int basis_size,
                                   double omega, int parity) {
  const int k_max = spec.max_k();
  // Powers of x couple states up to 2 k_max apart; build them in a larger
  // basis so the retained block is exact.
  const int m = basis_size + 2 * k_max + 2;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(m, m);
  for (int n = 0; n < m; ++n) {
    p2(n, n) = omega / 2.0 * (2.0 * n + 1.0);
    if (n + 1 < m) {
      const double e = std::sqrt((n + 1.0) / (2.0 * omega));
      x(n, n + 1) = e;
      x(n + 1, n) = e;
    }
    if (n + 2 < m) {
      const double e = -omega / 2.0 * std::sqrt((n + 1.0) * (n + 2.0));
      p2(n, n + 2) = e;
      p2(n + 2, n) = e;
    }
  }
  const Eigen::MatrixXd x2 = x * x;
  ComplexMatrixD h = std::polar(1.0, -2.0 * theta) * p2.cast<std::complex<double>>();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(m, m);
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) power = power * x2;
    const double v = spec.coefficient(k).get_d();
    if (v != 0) h += (v * std::polar(1.0, 2.0 * k * theta)) * power.cast<std::complex<double>>();
  }
  std::vector<int> idx;
  for (int n = parity; n < basis_size; n += 2) idx.push_back(n);
  const auto size = static_cast<Eigen::Index>(idx.size());
  ComplexMatrixD block(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) block(i, j) = h(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  return block;
}

std::complex<double> nearest_eigenvalue(const ComplexMatrixD& h, std::complex<double> target) {
  Eigen::ComplexEigenSolver<ComplexMatrixD> solver(h, false);
  if (solver.info() != Eigen::Success) throw SolveError("complex eigensolver failed");
  const auto& ev = solver.eigenvalues();
  std::complex<double> best = ev(0);
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i) - target) < std::abs(best - target)) best = ev(i);
  }
  return best;
}

}  // namespace

RotationResult complex_rotation_check(const ProblemSpec& spec, std::complex<double> target,
                                      const RotationOptions& options) {
  const double theta = options.theta ? *options.theta : default_rotation_angle(spec);
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  constexpr double kDelta = 0.05;
  if (!(theta > 0 && theta < kQuarterPi)) throw DomainError("rotation angle must lie in (0, pi/4)");
  if (options.basis_size < 4 || options.basis_size > 400) {
    throw DomainError("basis size must lie in [4, 400]");
  }
  if (!(options.omega > 0)) throw DomainError("omega must be positive");
  if (spec.central_field() || (spec.alpha() != 0 && spec.alpha() != 1)) {
    throw UnsupportedPotential("complex rotation needs a one-dimensional problem (alpha 0 or 1)");
  }
  const int parity = spec.alpha() == 1 ? 1 : 0;

  RotationResult result;
  result.theta = theta;
  result.energy = nearest_eigenvalue(
      rotated_hamiltonian(spec, theta, options.basis_size, options.omega, parity), target);
  const double size = std::max(std::abs(result.energy), 1e-300);
  for (const double t : {theta - kDelta, theta + kDelta}) {
    const double shifted = std::clamp(t, 1e-3, kQuarterPi - 1e-3);
    const std::complex<double> e = nearest_eigenvalue(
        rotated_hamiltonian(spec, shifted, options.basis_size, options.omega, parity),
        result.energy);
    result.theta_variation = std::max(result.theta_variation, std::abs(e - result.energy) / size);
  }
  result.stable = result.theta_variation <= options.stability_tolerance;
  result.found = result.stable;
  return result;
}

CheckOutcome two_route_check(const ProblemSpec& spec, const std::vector<Rational>& energies,
                             int jmax) {
  CheckOutcome out{"two-route", true, ""};
  std::ostringstream detail;
  for (const Rational& e : energies) {
    const std::vector<Rational> direct = rational_coefficients(spec, e, jmax);
    const std::vector<Rational> via_psi = f_from_psi(psi_series(spec, e, jmax + 1));
    int first_mismatch = -1;
    for (int j = 0; j <= jmax; ++j) {
      if (direct[static_cast<std::size_t>(j)] != via_psi[static_cast<std::size_t>(j)]) {
        first_mismatch = j;
        break;
      }
    }
    if (first_mismatch >= 0) {
      out.pass = false;
      detail << "E=" << render_rational(e) << " differs at j=" << first_mismatch << "; ";
    } else {
      detail << "E=" << render_rational(e) << " equal to j=" << jmax << "; ";
    }
  }
  out.detail = detail.str();
  return out;
}

CheckOutcome determinant_check(const ProblemSpec& spec, const Rational& energy, int max_D,
                               const PrecisionContext& ctx) {
  CheckOutcome out{"determinant", true, ""};
  std::ostringstream detail;
  const int required = ctx.digits() - 5;
  for (int D = 2; D <= max_D; ++D) {
    const HankelSpec h = HankelSpec::make(D, 0);
    const std::vector<Rational> f = rational_coefficients(spec, energy, h.jmax());
    const Rational exact = exact_determinant(hankel_matrix(std::span<const Rational>(f), h));

    std::vector<Complex> fc;
    fc.reserve(f.size());
    for (const Rational& q : f) fc.emplace_back(Real(q, ctx));
    const ScaledValue approx = scaled_determinant(hankel_matrix(std::span<const Complex>(fc), h), ctx);

    int agree = 0;
    if (exact == 0) {
      agree = approx.is_zero() ? ctx.digits() : 0;
    } else {
      const Complex value = approx.value();
      const Real reference(exact, ctx);
      const Real diff = abs(value - Complex(reference));
      agree = diff.is_zero()
                  ? ctx.digits()
                  : static_cast<int>(std::floor(reference.log10_abs() - diff.log10_abs()));
    }
    detail << "D=" << D << ":" << agree << " ";
    if (agree < required) out.pass = false;
  }
  out.detail = detail.str();
  return out;
}

}  // namespace rpm::oracle
