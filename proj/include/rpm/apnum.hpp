#pragma once

// Configurable-precision real and complex arithmetic on top of MPFR, plus
// exact rationals (GMP) and the decimal text format shared by the CLI and the
// JSON payloads.
//
// A value carries its own binary precision. Binary operations produce a
// result at the larger of the two operand precisions and always round to
// nearest (ties to even), so every pipeline is deterministic for a fixed
// PrecisionContext.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace rpm {

using Rational = mpq_class;

class PrecisionContext {
 public:
  /// Throws ConfigError for digits < 20.
  static PrecisionContext with_digits(int digits);

  int digits() const noexcept { return digits_; }
  mpfr_prec_t bits() const noexcept { return bits_; }

  bool operator==(const PrecisionContext&) const = default;

  static constexpr int kMinDigits = 20;
  static constexpr int kGuardBits = 8;

 private:
  PrecisionContext(int digits, mpfr_prec_t bits) : digits_(digits), bits_(bits) {}

  int digits_;
  mpfr_prec_t bits_;
};

class Real {
 public:
  /// Zero at 64 bits; meant as a placeholder to be assigned later.
  Real();
  explicit Real(const PrecisionContext& ctx);
  Real(long value, const PrecisionContext& ctx);
  Real(double value, const PrecisionContext& ctx);
  Real(const Rational& value, const PrecisionContext& ctx);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Uninitialized-value constructor used by the arithmetic kernels.
  static Real with_precision(mpfr_prec_t bits);

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  Real rounded(const PrecisionContext& ctx) const;

  mpfr_srcptr raw() const noexcept { return value_; }
  mpfr_ptr raw() noexcept { return value_; }

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  /// log10|x| to double accuracy; -inf for zero.
  double log10_abs() const noexcept;

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b);

  friend bool operator==(const Real& a, const Real& b) noexcept {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real hypot(const Real& x, const Real& y);
Real atan2(const Real& y, const Real& x);
/// 10^n rounded at ctx precision.
Real pow10(long n, const PrecisionContext& ctx);

class Complex {
 public:
  Complex() = default;
  explicit Complex(const PrecisionContext& ctx) : re_(ctx), im_(ctx) {}
  Complex(long re, const PrecisionContext& ctx) : re_(re, ctx), im_(ctx) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re);

  const Real& re() const noexcept { return re_; }
  const Real& im() const noexcept { return im_; }
  Real& re() noexcept { return re_; }
  Real& im() noexcept { return im_; }

  mpfr_prec_t precision() const noexcept;
  Complex rounded(const PrecisionContext& ctx) const;

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }
  bool is_finite() const noexcept { return re_.is_finite() && im_.is_finite(); }
  /// log10|z| to double accuracy; -inf for zero.
  double log10_abs() const noexcept;

  Complex operator-() const { return {-re_, -im_}; }
  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);

  friend Complex operator+(const Complex& a, const Complex& b);
  friend Complex operator-(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& b);
  friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
  friend Complex operator/(const Complex& a, const Real& b);
  friend Complex operator*(const Complex& a, long b);
  friend Complex operator*(long a, const Complex& b) { return b * a; }
  friend Complex operator/(const Complex& a, long b);

  friend bool operator==(const Complex& a, const Complex& b) noexcept {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

Real abs(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
/// Principal branch.
Complex sqrt(const Complex& z);

// ---------------------------------------------------------------------------
// Decimal text format:
//   [sign] digits [. digits] [e [sign] digits] [(+|-) [unsigned number] i]
// or a lone imaginary term such as "2.5e-3i" or "-i".

/// Correctly rounded to ctx precision. Throws ParseError naming the offending
/// character position.
Complex parse_decimal(std::string_view text, const PrecisionContext& ctx);
Real parse_real(std::string_view text, const PrecisionContext& ctx);

/// Exact value of a decimal ("0.14", "-2e-3") or a fraction ("7/50").
/// Text with an imaginary part throws ModeError; malformed text ParseError.
Rational parse_rational(std::string_view text);

enum class RenderMode { nearest, truncate };

/// Shortest form of the value rounded (or truncated) to `significant_digits`
/// digits; trailing zeros are dropped. Fixed notation for decimal exponents in
/// [-4, 15], scientific ("3.3798e-10") otherwise.
std::string render_decimal(const Real& x, int significant_digits,
                           RenderMode mode = RenderMode::nearest);
std::string render_decimal(const Complex& z, int significant_digits,
                           RenderMode mode = RenderMode::nearest);

/// Canonical text of an exact rational: "p/q" or "p".
std::string render_rational(const Rational& q);

/// Leading significant digits of |x|: x = sign * 0.d1d2...dn * 10^exponent.
struct DecimalDigits {
  bool negative = false;
  bool zero = true;
  std::string digits;
  long exponent = 0;

  bool operator==(const DecimalDigits&) const = default;
};

DecimalDigits decimal_digits(const Real& x, int n, RenderMode mode);

}  // namespace rpm
