#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpm/apnum.hpp"

namespace rpm {

enum class Preset { custom, triple_well, double_well };

std::string_view preset_name(Preset p);
/// Accepts "triple-well" and "double-well"; throws ConfigError otherwise.
Preset parse_preset(std::string_view name);

/// Eigenproblem  Psi'' + [E - V(x)] Psi = 0,  V(x) = sum_k v_k x^(2k) + V_-2 / x^2,
/// with the series ansatz Psi = x^alpha sum_j c_j x^(2j).
///
/// All coefficients are exact rationals; decimal input such as "0.14" is
/// stored as 7/50. Floating-point pipelines round them once, at the working
/// precision, when they are consumed.
class ProblemSpec {
 public:
  static constexpr int kBeta = 2;

  /// v_k multiplies x^(2k); trailing zeros are trimmed.
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  /// v_k, or 0 when k is beyond the stored range.
  Rational coefficient(int k) const;
  int max_k() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& alpha() const noexcept { return alpha_; }
  int beta() const noexcept { return kBeta; }
  const Rational& centrifugal() const noexcept { return centrifugal_; }
  const std::optional<Rational>& g() const noexcept { return g_; }
  Preset preset() const noexcept { return preset_; }

  /// Central-field problems are accepted but have no reference data.
  bool central_field() const noexcept { return centrifugal_ != 0; }
  /// Human-readable flags such as "central-field: unvalidated against reference data".
  std::vector<std::string> warnings() const;

  /// Same potential, different parity exponent (revalidated).
  ProblemSpec with_alpha(const Rational& alpha, const Rational& centrifugal = 0) const;

  /// Power map {2k: v_k} for echoing and JSON.
  std::map<int, Rational> power_map() const;

  /// Physical equality: potential, alpha, centrifugal strength and g. The
  /// preset label is ignored, so both presets coincide at g = 0.
  friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    return a.coeffs_ == b.coeffs_ && a.alpha_ == b.alpha_ && a.centrifugal_ == b.centrifugal_ &&
           a.g_ == b.g_;
  }

  friend ProblemSpec preset_triple_well(const Rational& g);
  friend ProblemSpec preset_double_well(const Rational& g);
  friend ProblemSpec custom(const std::map<int, Rational>& potential, const Rational& alpha,
                            const Rational& centrifugal);

 private:
  ProblemSpec() = default;
  void validate() const;

  std::vector<Rational> coeffs_;
  Rational alpha_ = 0;
  Rational centrifugal_ = 0;
  std::optional<Rational> g_;
  Preset preset_ = Preset::custom;
};

/// V(x) = x^2 - 2 g^2 x^4 + g^4 x^6, alpha = 0.
ProblemSpec preset_triple_well(const Rational& g);
/// V(x) = x^2 - 2 g^2 x^4, alpha = 0.
ProblemSpec preset_double_well(const Rational& g);
ProblemSpec make_preset(Preset p, const Rational& g);

/// Validated spec from a {power: coefficient} map. Odd or negative powers throw
/// UnsupportedPotential, alpha(alpha-1) != centrifugal throws ConsistencyError.
ProblemSpec custom(const std::map<int, Rational>& potential, const Rational& alpha = 0,
                   const Rational& centrifugal = 0);

/// Parses "k2=1,k4=-0.0392,k6=0.00038416" (power k<n>, exact-rational values).
std::map<int, Rational> parse_potential(std::string_view text);

/// Canonical text of a potential in the same "k<power>=<value>" form.
std::string render_potential(const ProblemSpec& spec);

}  // namespace rpm
