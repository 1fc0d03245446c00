#include "rpm/problem.hpp"

#include <cctype>

#include "rpm/errors.hpp"

namespace rpm {

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::triple_well:
      return "triple-well";
    case Preset::double_well:
      return "double-well";
    case Preset::custom:
      break;
  }
  return "custom";
}

Preset parse_preset(std::string_view name) {
  if (name == "triple-well") return Preset::triple_well;
  if (name == "double-well") return Preset::double_well;
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (expected triple-well or double-well)");
}

Rational ProblemSpec::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

std::vector<std::string> ProblemSpec::warnings() const {
  std::vector<std::string> out;
  if (central_field()) out.emplace_back("central-field: unvalidated against reference data");
  return out;
}

std::map<int, Rational> ProblemSpec::power_map() const {
  std::map<int, Rational> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0) out.emplace(static_cast<int>(2 * k), coeffs_[k]);
  }
  return out;
}

void ProblemSpec::validate() const {
  if (alpha_ < 0) throw DomainError("alpha must be non-negative");
  if (alpha_ * (alpha_ - 1) != centrifugal_) {
    throw ConsistencyError("alpha(alpha-1) = " + render_rational(alpha_ * (alpha_ - 1)) +
                           " does not match centrifugal strength " +
                           render_rational(centrifugal_));
  }
  bool confining_term = false;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) confining_term |= coeffs_[k] != 0;
  if (!confining_term) {
    throw DomainError("potential needs at least one nonzero coefficient of x^2k with k >= 1");
  }
}

ProblemSpec ProblemSpec::with_alpha(const Rational& alpha, const Rational& centrifugal) const {
  ProblemSpec out = *this;
  out.alpha_ = alpha;
  out.centrifugal_ = centrifugal;
  out.validate();
  return out;
}

ProblemSpec preset_triple_well(const Rational& g) {
  if (g < 0) throw DomainError("coupling g must be non-negative");
  const Rational g2 = g * g;
  ProblemSpec s;
  s.coeffs_ = {0, 1, -2 * g2, g2 * g2};
  while (s.coeffs_.size() > 2 && s.coeffs_.back() == 0) s.coeffs_.pop_back();
  s.g_ = g;
  s.preset_ = Preset::triple_well;
  s.validate();
  return s;
}

ProblemSpec preset_double_well(const Rational& g) {
  if (g < 0) throw DomainError("coupling g must be non-negative");
  ProblemSpec s;
  s.coeffs_ = {0, 1, -2 * g * g};
  while (s.coeffs_.size() > 2 && s.coeffs_.back() == 0) s.coeffs_.pop_back();
  s.g_ = g;
  s.preset_ = Preset::double_well;
  s.validate();
  return s;
}

ProblemSpec make_preset(Preset p, const Rational& g) {
  switch (p) {
    case Preset::triple_well:
      return preset_triple_well(g);
    case Preset::double_well:
      return preset_double_well(g);
    case Preset::custom:
      break;
  }
  throw ConfigError("custom problems need an explicit potential");
}

ProblemSpec custom(const std::map<int, Rational>& potential, const Rational& alpha,
                   const Rational& centrifugal) {
  ProblemSpec s;
  for (const auto& [power, value] : potential) {
    if (power < 0) {
      throw UnsupportedPotential("negative power x^" + std::to_string(power) +
                                 " (use the centrifugal strength for 1/x^2)");
    }
    if (power % 2 != 0) {
      throw UnsupportedPotential("odd power x^" + std::to_string(power) +
                                 " is not supported: the series step 2 requires an even potential");
    }
    const auto k = static_cast<std::size_t>(power / 2);
    if (s.coeffs_.size() <= k) s.coeffs_.resize(k + 1, 0);
    s.coeffs_[k] += value;
  }
  while (!s.coeffs_.empty() && s.coeffs_.back() == 0) s.coeffs_.pop_back();
  s.alpha_ = alpha;
  s.centrifugal_ = centrifugal;
  s.validate();
  return s;
}

std::map<int, Rational> parse_potential(std::string_view text) {
  std::map<int, Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    std::size_t lead = 0;
    while (lead < item.size() && std::isspace(static_cast<unsigned char>(item[lead])) != 0) ++lead;
    item.remove_prefix(lead);
    const std::size_t at = pos + lead;
    if (item.empty()) throw ParseError("empty potential term", at);
    if (item.front() != 'k' && item.front() != 'x') {
      throw ParseError("potential term must look like k<power>=<value>", at);
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("missing '=' in potential term", at);
    const std::string power_text(item.substr(1, eq - 1));
    if (power_text.empty()) throw ParseError("missing power in potential term", at + 1);
    int power = 0;
    for (std::size_t i = 0; i < power_text.size(); ++i) {
      const char c = power_text[i];
      if (i == 0 && c == '-') continue;
      if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
        throw ParseError("power must be an integer", at + 1 + i);
      }
    }
    power = std::stoi(power_text);
    Rational value;
    try {
      value = parse_rational(item.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError("bad coefficient for x^" + power_text, at + eq + 1 + e.position());
    }
    out[power] += value;
    pos = end + 1;
  }
  return out;
}

std::string render_potential(const ProblemSpec& spec) {
  std::string out;
  for (const auto& [power, value] : spec.power_map()) {
    if (!out.empty()) out += ',';
    out += 'k' + std::to_string(power) + '=' + render_rational(value);
  }
  return out;
}

}  // namespace rpm
