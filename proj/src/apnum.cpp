#include "rpm/apnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "rpm/errors.hpp"

namespace rpm {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;
constexpr mpfr_prec_t kPlaceholderBits = 64;
constexpr long kMaxDecimalExponent = 1'000'000;

mpfr_prec_t max_prec(const Real& a, const Real& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

PrecisionContext PrecisionContext::with_digits(int digits) {
  if (digits < kMinDigits) {
    throw ConfigError("precision must be at least " + std::to_string(kMinDigits) +
                      " decimal digits, got " + std::to_string(digits));
  }
  const double needed = std::ceil(static_cast<double>(digits) * std::log2(10.0));
  return PrecisionContext(digits, static_cast<mpfr_prec_t>(needed) + kGuardBits);
}

// ---------------------------------------------------------------------------
// Real

Real::Real() {
  mpfr_init2(value_, kPlaceholderBits);
  mpfr_set_zero(value_, 1);
}

Real::Real(const PrecisionContext& ctx) {
  mpfr_init2(value_, ctx.bits());
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, const PrecisionContext& ctx) {
  mpfr_init2(value_, ctx.bits());
  mpfr_set_si(value_, value, kRound);
}

Real::Real(double value, const PrecisionContext& ctx) {
  mpfr_init2(value_, ctx.bits());
  mpfr_set_d(value_, value, kRound);
}

Real::Real(const Rational& value, const PrecisionContext& ctx) {
  mpfr_init2(value_, ctx.bits());
  mpfr_set_q(value_, value.get_mpq_t(), kRound);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(mpfr_prec_t bits) {
  Real r;
  mpfr_set_prec(r.value_, bits);
  return r;
}

Real Real::rounded(const PrecisionContext& ctx) const {
  Real r = with_precision(ctx.bits());
  mpfr_set(r.value_, value_, kRound);
  return r;
}

double Real::log10_abs() const noexcept {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e2 = 0;
  const double m = mpfr_get_d_2exp(&e2, value_, kRound);
  return std::log10(std::fabs(m)) + static_cast<double>(e2) * std::log10(2.0);
}

Real Real::operator-() const {
  Real r = with_precision(precision());
  mpfr_neg(r.value_, value_, kRound);
  return r;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator+(const Real& a, const Real& b) {
  Real r = Real::with_precision(max_prec(a, b));
  mpfr_add(r.value_, a.value_, b.value_, kRound);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r = Real::with_precision(max_prec(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, kRound);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r = Real::with_precision(max_prec(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, kRound);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r = Real::with_precision(max_prec(a, b));
  mpfr_div(r.value_, a.value_, b.value_, kRound);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r = Real::with_precision(a.precision());
  mpfr_mul_si(r.value_, a.value_, b, kRound);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r = Real::with_precision(a.precision());
  mpfr_div_si(r.value_, a.value_, b, kRound);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Real abs(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_abs(r.raw(), x.raw(), kRound);
  return r;
}

Real sqrt(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), kRound);
  return r;
}

Real exp(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_exp(r.raw(), x.raw(), kRound);
  return r;
}

Real log(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_log(r.raw(), x.raw(), kRound);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r = Real::with_precision(max_prec(x, y));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), kRound);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_precision(max_prec(x, y));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), kRound);
  return r;
}

Real pow10(long n, const PrecisionContext& ctx) {
  Real r(ctx);
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(n < 0 ? -n : n), kRound);
  if (n < 0) mpfr_ui_div(r.raw(), 1, r.raw(), kRound);
  return r;
}

// ---------------------------------------------------------------------------
// Complex

Complex::Complex(Real re) : re_(std::move(re)), im_(Real::with_precision(re_.precision())) {
  mpfr_set_zero(im_.raw(), 1);
}

mpfr_prec_t Complex::precision() const noexcept {
  return std::max(re_.precision(), im_.precision());
}

Complex Complex::rounded(const PrecisionContext& ctx) const {
  return {re_.rounded(ctx), im_.rounded(ctx)};
}

double Complex::log10_abs() const noexcept {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  const double a = re_.log10_abs();
  const double b = im_.log10_abs();
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + 0.5 * std::log10(1.0 + std::pow(10.0, 2.0 * (lo - hi)));
}

Complex& Complex::operator+=(const Complex& rhs) { return *this = *this + rhs; }
Complex& Complex::operator-=(const Complex& rhs) { return *this = *this - rhs; }
Complex& Complex::operator*=(const Complex& rhs) { return *this = *this * rhs; }
Complex& Complex::operator/=(const Complex& rhs) { return *this = *this / rhs; }

Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }

Complex operator*(const Complex& a, const Complex& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) {
    Real re = a.re_ * b.re_;
    return Complex(std::move(re));
  }
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

Complex operator/(const Complex& a, const Complex& b) {
  if (b.im_.is_zero()) return a / b.re_;
  const Real denom = b.re_ * b.re_ + b.im_ * b.im_;
  return {(a.re_ * b.re_ + a.im_ * b.im_) / denom, (a.im_ * b.re_ - a.re_ * b.im_) / denom};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }
Complex operator*(const Complex& a, long b) { return {a.re_ * b, a.im_ * b}; }
Complex operator/(const Complex& a, long b) { return {a.re_ / b, a.im_ / b}; }

Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
Real arg(const Complex& z) { return atan2(z.im(), z.re()); }
Complex conj(const Complex& z) { return {z.re(), -z.im()}; }

Complex sqrt(const Complex& z) {
  if (z.is_zero()) {
    Real zero = Real::with_precision(z.precision());
    mpfr_set_zero(zero.raw(), 1);
    return Complex(std::move(zero));
  }
  const Real modulus = abs(z);
  const Real t = sqrt((modulus + abs(z.re())) / 2L);
  if (z.re().sign() >= 0) return {t, z.im() / (t * 2L)};
  Real re = abs(z.im()) / (t * 2L);
  Real im = z.im().sign() < 0 ? -t : t;
  return {std::move(re), std::move(im)};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct NumberSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool has_digits = false;
};

class DecimalScanner {
 public:
  explicit DecimalScanner(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    if (done()) throw ParseError(what + " (unexpected end of input)", pos_);
    throw ParseError(what + " (unexpected '" + std::string(1, peek()) + "')", pos_);
  }

  // Scans digits [. digits] [e [sign] digits] without a leading sign. The
  // mantissa may be empty only when allow_empty is set (for "i" / "-i").
  NumberSpan unsigned_number(bool allow_empty) {
    NumberSpan span;
    span.begin = pos_;
    std::size_t mantissa_digits = 0;
    while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      advance();
      ++mantissa_digits;
    }
    if (peek() == '.') {
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
        advance();
        ++mantissa_digits;
      }
      if (mantissa_digits == 0) fail("expected a digit");
    }
    if (mantissa_digits == 0) {
      if (!allow_empty) fail("expected a digit");
      span.end = pos_;
      return span;
    }
    span.has_digits = true;
    if (peek() == 'e' || peek() == 'E') {
      advance();
      if (peek() == '+' || peek() == '-') advance();
      std::size_t exp_digits = 0;
      while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
        advance();
        ++exp_digits;
      }
      if (exp_digits == 0) fail("expected an exponent digit");
    }
    span.end = pos_;
    return span;
  }

  std::string_view slice(std::size_t b, std::size_t e) const { return text_.substr(b, e - b); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s, std::size_t& offset) {
  offset = 0;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return s;
}

struct ComplexSyntax {
  // Each part: sign character (or 0), number span; absent if !present.
  bool has_re = false;
  char re_sign = 0;
  NumberSpan re;
  bool has_im = false;
  char im_sign = 0;
  NumberSpan im;
};

ComplexSyntax scan_complex(DecimalScanner& sc) {
  ComplexSyntax out;
  if (sc.done()) sc.fail("empty number");
  char lead = 0;
  if (sc.peek() == '+' || sc.peek() == '-') {
    lead = sc.peek();
    sc.advance();
  }
  NumberSpan first = sc.unsigned_number(/*allow_empty=*/true);
  if (sc.peek() == 'i') {
    sc.advance();
    if (!sc.done()) sc.fail("trailing characters after imaginary unit");
    out.has_im = true;
    out.im_sign = lead;
    out.im = first;
    return out;
  }
  if (!first.has_digits) sc.fail("expected a digit");
  out.has_re = true;
  out.re_sign = lead;
  out.re = first;
  if (sc.done()) return out;
  if (sc.peek() != '+' && sc.peek() != '-') sc.fail("expected '+', '-' or end of number");
  out.im_sign = sc.peek();
  sc.advance();
  out.im = sc.unsigned_number(/*allow_empty=*/true);
  if (sc.peek() != 'i') sc.fail("expected imaginary unit 'i'");
  sc.advance();
  if (!sc.done()) sc.fail("trailing characters after imaginary unit");
  out.has_im = true;
  return out;
}

void check_exponent_range(std::string_view number, std::size_t offset) {
  const auto e = number.find_first_of("eE");
  if (e == std::string_view::npos) return;
  std::string_view digits = number.substr(e + 1);
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) digits.remove_prefix(1);
  if (digits.size() > 7) throw ParseError("exponent out of range", offset + e);
}

Real real_from_span(const DecimalScanner& sc, char sign, const NumberSpan& span,
                    const PrecisionContext& ctx, std::size_t offset) {
  Real r(ctx);
  if (!span.has_digits) {
    mpfr_set_si(r.raw(), sign == '-' ? -1 : 1, kRound);
    return r;
  }
  const std::string_view body = sc.slice(span.begin, span.end);
  check_exponent_range(body, offset + span.begin);
  std::string s;
  s.reserve(body.size() + 1);
  if (sign == '-') s.push_back('-');
  s.append(body);
  if (mpfr_set_str(r.raw(), s.c_str(), 10, kRound) != 0) {
    throw ParseError("malformed number", offset + span.begin);
  }
  if (r.is_zero()) mpfr_set_zero(r.raw(), 1);
  return r;
}

Rational rational_from_decimal(std::string_view body, char sign, std::size_t offset) {
  check_exponent_range(body, offset);
  std::string mantissa;
  long exponent = 0;
  std::size_t i = 0;
  for (; i < body.size() && body[i] != 'e' && body[i] != 'E'; ++i) {
    if (body[i] == '.') {
      exponent = 0;
      for (std::size_t j = i + 1; j < body.size() && body[j] != 'e' && body[j] != 'E'; ++j) {
        --exponent;
      }
      continue;
    }
    mantissa.push_back(body[i]);
  }
  if (i < body.size()) exponent += std::stol(std::string(body.substr(i + 1)));
  if (exponent > kMaxDecimalExponent || exponent < -kMaxDecimalExponent) {
    throw ParseError("exponent out of range", offset);
  }
  mpz_class num(mantissa, 10);
  if (sign == '-') num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
  q.canonicalize();
  return q;
}

}  // namespace

Complex parse_decimal(std::string_view text, const PrecisionContext& ctx) {
  std::size_t offset = 0;
  const std::string_view body = trim(text, offset);
  DecimalScanner sc(body);
  const ComplexSyntax syn = scan_complex(sc);
  Real re = syn.has_re ? real_from_span(sc, syn.re_sign, syn.re, ctx, offset) : Real(ctx);
  Real im = syn.has_im ? real_from_span(sc, syn.im_sign, syn.im, ctx, offset) : Real(ctx);
  return {std::move(re), std::move(im)};
}

Real parse_real(std::string_view text, const PrecisionContext& ctx) {
  Complex z = parse_decimal(text, ctx);
  if (!z.is_real()) throw ParseError("expected a real number", 0);
  return z.re();
}

Rational parse_rational(std::string_view text) {
  std::size_t offset = 0;
  const std::string_view body = trim(text, offset);
  const auto slash = body.find('/');
  if (slash != std::string_view::npos) {
    auto integer = [&](std::string_view part, std::size_t at, bool allow_sign) {
      std::size_t k = 0;
      std::string s;
      if (allow_sign && k < part.size() && (part[k] == '+' || part[k] == '-')) {
        if (part[k] == '-') s.push_back('-');
        ++k;
      }
      if (k == part.size()) throw ParseError("expected a digit", offset + at + k);
      for (; k < part.size(); ++k) {
        if (std::isdigit(static_cast<unsigned char>(part[k])) == 0) {
          throw ParseError("expected a digit in fraction", offset + at + k);
        }
        s.push_back(part[k]);
      }
      return mpz_class(s, 10);
    };
    const mpz_class num = integer(body.substr(0, slash), 0, true);
    const mpz_class den = integer(body.substr(slash + 1), slash + 1, false);
    if (den == 0) throw ParseError("zero denominator", offset + slash + 1);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  DecimalScanner sc(body);
  const ComplexSyntax syn = scan_complex(sc);
  if (syn.has_im) {
    throw ModeError("exact-rational mode needs a real rational value, got '" +
                    std::string(body) + "'");
  }
  return rational_from_decimal(sc.slice(syn.re.begin, syn.re.end), syn.re_sign,
                               offset + syn.re.begin);
}

// ---------------------------------------------------------------------------
// Rendering

DecimalDigits decimal_digits(const Real& x, int n, RenderMode mode) {
  DecimalDigits out;
  if (x.is_zero()) return out;
  if (n < 1) n = 1;
  out.zero = false;
  out.negative = x.sign() < 0;
  mpfr_exp_t e = 0;
  const mpfr_rnd_t rnd = mode == RenderMode::truncate ? MPFR_RNDZ : MPFR_RNDN;
  std::unique_ptr<char, void (*)(char*)> s(
      mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(n), x.raw(), rnd), mpfr_free_str);
  std::string digits = s.get();
  if (!digits.empty() && digits.front() == '-') digits.erase(0, 1);
  out.digits = std::move(digits);
  out.exponent = static_cast<long>(e);
  return out;
}

std::string render_decimal(const Real& x, int significant_digits, RenderMode mode) {
  if (x.is_zero()) return "0";
  DecimalDigits dd = decimal_digits(x, significant_digits, mode);
  std::string digits = dd.digits;
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  const long sci_exp = dd.exponent - 1;
  std::string out = dd.negative ? "-" : "";
  if (sci_exp >= -4 && sci_exp <= 15) {
    if (sci_exp < 0) {
      out += "0.";
      out.append(static_cast<std::size_t>(-sci_exp - 1), '0');
      out += digits;
    } else {
      const auto int_len = static_cast<std::size_t>(sci_exp + 1);
      if (digits.size() <= int_len) {
        out += digits;
        out.append(int_len - digits.size(), '0');
      } else {
        out += digits.substr(0, int_len);
        out += '.';
        out += digits.substr(int_len);
      }
    }
    return out;
  }
  out += digits[0];
  if (digits.size() > 1) {
    out += '.';
    out += digits.substr(1);
  }
  out += 'e';
  out += sci_exp < 0 ? '-' : '+';
  out += std::to_string(sci_exp < 0 ? -sci_exp : sci_exp);
  return out;
}

std::string render_decimal(const Complex& z, int significant_digits, RenderMode mode) {
  std::string out = render_decimal(z.re(), significant_digits, mode);
  if (z.im().is_zero()) return out;
  out += z.im().sign() < 0 ? '-' : '+';
  out += render_decimal(abs(z.im()), significant_digits, mode);
  out += 'i';
  return out;
}

std::string render_rational(const Rational& q) { return q.get_str(10); }

}  // namespace rpm
