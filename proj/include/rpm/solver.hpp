#pragma once

// Root sequences E^[D,d] of the Hankel determinants H_D^d(E), D = 2, 3, ...
//
// Each D is seeded by the root found at D - 1. The default step rule solves
// the local quadratic model of H around the current iterate rather than the
// linear one: at small coupling H_D has a tight cluster of nearly degenerate
// roots around the eigenvalue, where Newton crawls, and the quadratic model
// also leaves the real axis on its own when the continued root turns complex.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rpm/apnum.hpp"
#include "rpm/hankel.hpp"
#include "rpm/problem.hpp"

namespace rpm {

enum class StepRule {
  /// Nearest root of the local quadratic model of H.
  quadratic,
  /// Damped Newton; a real previous root is kicked off the axis.
  newton,
};

std::string_view step_rule_name(StepRule r);
StepRule parse_step_rule(std::string_view name);

struct SolveConfig {
  int d = 0;
  int D_max = 15;
  int target_digits = 20;
  std::optional<Complex> seed;
  /// Seeds D = 2 at 4n + 2 alpha + 1 when no explicit seed is given.
  int state_index = 0;
  /// Relative imaginary perturbation applied by the newton rule.
  double imag_kick = 1e-6;
  int max_newton_iters = 60;
  /// Fixed working precision; adaptive when empty.
  std::optional<int> fixed_digits;
  StepRule step_rule = StepRule::quadratic;
  /// Expected log10 |Im E|, used to size the adaptive starting precision.
  std::optional<double> im_scale_log10;

  /// Throws ConfigError on D_max < 3, target_digits < 6, d < 0 and so on.
  void validate() const;
};

struct RootResult {
  Complex energy;
  int iterations = 0;
  Real final_step;
  bool converged = false;
  bool diverged = false;
  int digits_used = 0;
  std::string diagnostics;
};

struct SequenceEntry {
  int D = 0;
  RootResult root;
};

enum class Verdict { converged, not_converged, collapsed_to_real };

std::string_view verdict_name(Verdict v);

/// Agreement between the reported values and a recomputation of the last two
/// D values at 20 more digits.
struct PrecisionCheck {
  int digits = 0;
  int check_digits = 0;
  /// Per entry: (value at digits, value at check_digits).
  std::vector<std::pair<Complex, Complex>> values;
  /// Smallest component-wise agreement in significant digits.
  int agreement = 0;
};

struct SequenceReport {
  ProblemSpec problem;
  int d = 0;
  std::vector<SequenceEntry> entries;
  int stable_digits_re = 0;
  int stable_digits_im = 0;
  Verdict verdict = Verdict::not_converged;
  int digits_used = 0;
  int escalations = 0;
  std::optional<PrecisionCheck> precision_check;

  const RootResult& final_root() const { return entries.back().root; }
};

/// One root of H_D^d from `seed` at the precision of `ctx`.
RootResult find_root(const ProblemSpec& spec, const HankelSpec& h, const Complex& seed,
                     const SolveConfig& cfg, const PrecisionContext& ctx);

/// Zeroes |Im| below 10^(-digits+10) and returns the Im >= 0 representative.
Complex canonical_root(const Complex& e, const PrecisionContext& ctx);

/// Significant digits on which a and b agree: -log10(|a-b| / max(|a|, 10^-digits)),
/// clamped to [0, digits].
int agreement_digits(const Real& a, const Real& b, int digits);

/// D = 2..D_max at the given precision.
SequenceReport hankel_sequence(const ProblemSpec& spec, const SolveConfig& cfg,
                               const PrecisionContext& ctx);
/// As above at cfg.fixed_digits, or at 2 target + 10 D_max digits when adaptive.
SequenceReport hankel_sequence(const ProblemSpec& spec, const SolveConfig& cfg);

/// Starting precision of the adaptive policy.
int initial_digits(const SolveConfig& cfg);

/// Sequence with precision escalation until the last two D values agree with
/// a +20-digit recomputation to target_digits in both components. Under a
/// fixed precision the check still runs but never escalates.
SequenceReport solve_adaptive(const ProblemSpec& spec, const SolveConfig& cfg);

struct SweepRow {
  Rational g;
  std::optional<SequenceReport> report;
  /// Table ratio column, when defined for the preset and g > 0.
  std::optional<Real> ratio;
  std::string error;

  bool ok() const noexcept { return report.has_value(); }
};

/// Independent adaptive solves over `g_values`, in input order; failures are
/// recorded in the row. `jobs` bounds the worker threads.
std::vector<SweepRow> sweep(const std::function<ProblemSpec(const Rational&)>& factory,
                            const std::vector<Rational>& g_values, const SolveConfig& cfg,
                            int jobs = 1);

/// Preset sweep: adds the WKB hint per row and the matching ratio column.
std::vector<SweepRow> sweep(Preset preset, const std::vector<Rational>& g_values,
                            const SolveConfig& cfg, int jobs = 1);

}  // namespace rpm
