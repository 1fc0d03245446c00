#include "rpm/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "rpm/errors.hpp"
#include "rpm/oracle.hpp"

namespace rpm {

namespace {

constexpr int kMaxHalvings = 8;
constexpr int kMaxEscalations = 4;
constexpr int kCheckExtraDigits = 20;
// Im below 10^(-digits + kSnapGuard) is treated as zero.
constexpr int kSnapGuard = 10;
// A step below 10^(-digits + kFloorGuard) relative ends the iteration.
constexpr int kFloorGuard = 15;
// Consecutive step ratios in (kSlowLow, kSlowHigh) that mark a multiple root.
constexpr double kSlowLow = 0.3;
constexpr double kSlowHigh = 1.2;
constexpr int kSlowCount = 3;
constexpr int kSlowMinIterations = 6;

double log10_scale(const Complex& e) { return std::max(0.0, e.log10_abs()); }

Complex seed_for(const ProblemSpec& spec, const SolveConfig& cfg, const PrecisionContext& ctx) {
  if (cfg.seed) return cfg.seed->rounded(ctx);
  const Rational level = Rational(4 * cfg.state_index + 1) + 2 * spec.alpha();
  return Complex(Real(level, ctx));
}

int stable_digits(const Real& previous, const Real& last, int digits) {
  return agreement_digits(last, previous, digits);
}

PrecisionCheck run_precision_check(const ProblemSpec& spec, const SolveConfig& cfg,
                                   const SequenceReport& report, int digits) {
  PrecisionCheck check;
  check.digits = digits;
  check.check_digits = digits + kCheckExtraDigits;
  check.agreement = digits;
  const auto ctx = PrecisionContext::with_digits(check.check_digits);
  const std::size_t first = report.entries.size() >= 2 ? report.entries.size() - 2 : 0;
  for (std::size_t i = first; i < report.entries.size(); ++i) {
    const SequenceEntry& entry = report.entries[i];
    const Complex& low = entry.root.energy;
    const RootResult high_root =
        find_root(spec, HankelSpec::make(entry.D, cfg.d), low, cfg, ctx);
    const Complex high = canonical_root(high_root.energy, ctx);
    int agree = std::min(agreement_digits(low.re(), high.re(), digits),
                         agreement_digits(low.im(), high.im(), digits));
    if (!high_root.converged) agree = 0;
    check.agreement = std::min(check.agreement, agree);
    check.values.emplace_back(low, high);
  }
  return check;
}

}  // namespace

std::string_view step_rule_name(StepRule r) {
  return r == StepRule::quadratic ? "quadratic" : "newton";
}

StepRule parse_step_rule(std::string_view name) {
  if (name == "quadratic") return StepRule::quadratic;
  if (name == "newton") return StepRule::newton;
  throw ConfigError("unknown step rule '" + std::string(name) + "' (quadratic|newton)");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::not_converged: return "not-converged";
    case Verdict::collapsed_to_real: return "collapsed-to-real";
  }
  return "unknown";
}

void SolveConfig::validate() const {
  if (d < 0) throw ConfigError("d must be >= 0");
  if (D_max < 3) throw ConfigError("D_max must be >= 3");
  if (target_digits < 6) throw ConfigError("target_digits must be >= 6");
  if (state_index < 0) throw ConfigError("state_index must be >= 0");
  if (!(imag_kick > 0)) throw ConfigError("imag_kick must be positive");
  if (max_newton_iters < 1) throw ConfigError("max_newton_iters must be >= 1");
  if (fixed_digits && *fixed_digits < PrecisionContext::kMinDigits) {
    throw ConfigError("working precision must be at least " +
                      std::to_string(PrecisionContext::kMinDigits) + " digits");
  }
  if (seed && !seed->is_finite()) throw ConfigError("seed must be finite");
}

Complex canonical_root(const Complex& e, const PrecisionContext& ctx) {
  Complex out = e;
  if (!out.im().is_zero() && out.im().log10_abs() < -(ctx.digits() - kSnapGuard)) {
    mpfr_set_zero(out.im().raw(), 1);
  }
  if (out.im().sign() < 0) out = conj(out);
  return out;
}

int agreement_digits(const Real& a, const Real& b, int digits) {
  const Real diff = a - b;
  if (diff.is_zero()) return digits;
  const double scale = std::max(a.log10_abs(), -static_cast<double>(digits));
  const double value = -(diff.log10_abs() - scale);
  if (!(value > 0)) return 0;
  return std::min(digits, static_cast<int>(std::floor(value)));
}

RootResult find_root(const ProblemSpec& spec, const HankelSpec& h, const Complex& seed,
                     const SolveConfig& cfg, const PrecisionContext& ctx) {
  if (!seed.is_finite()) throw DomainError("seed must be finite");
  const int digits = ctx.digits();
  RootResult result;
  result.digits_used = digits;
  result.final_step = Real(ctx);

  Complex e = seed.rounded(ctx);
  const Real limit = (abs(e) + Real(1L, ctx)) * 1000L;
  HankelLocalModel model = local_model(spec, e, h, ctx);

  std::optional<double> previous_log;
  int slow = 0;
  bool multiplicity = false;
  double final_log = -std::numeric_limits<double>::infinity();

  for (int it = 1; it <= cfg.max_newton_iters; ++it) {
    if (model.at_root) {
      final_log = -std::numeric_limits<double>::infinity();
      result.final_step = Real(ctx);
      result.diagnostics = "singular to working precision";
      break;
    }
    Complex step = model.newton_step();
    if (multiplicity) {
      if (auto s = model.multiplicity_step()) step = std::move(*s);
    } else if (cfg.step_rule == StepRule::quadratic) {
      if (auto s = model.quadratic_step()) step = std::move(*s);
    }
    const double scale = log10_scale(e);
    double log_step = step.log10_abs();
    final_log = log_step - scale;
    result.final_step = abs(step);

    // Further steps are rounding noise: they no longer shrink.
    if (previous_log && log_step > *previous_log + std::log10(0.5) &&
        log_step < scale - digits / 2.0) {
      result.diagnostics = "stagnated at working precision";
      break;
    }

    Complex trial = e + step;
    HankelLocalModel trial_model = local_model(spec, trial, h, ctx);
    if (log_step > scale - digits / 2.0) {
      const double current = model.determinant.log10_abs();
      for (int k = 0; k < kMaxHalvings; ++k) {
        if (trial_model.at_root || trial_model.determinant.log10_abs() < current) break;
        step = step / 2L;
        trial = e + step;
        trial_model = local_model(spec, trial, h, ctx);
      }
      log_step = step.log10_abs();
      result.final_step = abs(step);
      final_log = log_step - scale;
    }
    e = std::move(trial);
    model = std::move(trial_model);
    result.iterations = it;

    if (abs(e) > limit) {
      result.diverged = true;
      result.diagnostics = "diverged";
      break;
    }
    if (final_log < -(digits - kFloorGuard)) {
      result.diagnostics = "step below working precision";
      break;
    }
    if (previous_log) {
      const double ratio = std::pow(10.0, log_step - *previous_log);
      slow = (ratio > kSlowLow && ratio < kSlowHigh) ? slow + 1 : 0;
      if (!multiplicity && slow >= kSlowCount && it >= kSlowMinIterations) {
        multiplicity = true;
        slow = 0;
      }
    }
    previous_log = log_step;
    if (it == cfg.max_newton_iters) result.diagnostics = "iteration cap reached";
  }

  result.energy = std::move(e);
  result.converged = !result.diverged && final_log <= -(cfg.target_digits + 2);
  if (multiplicity) result.diagnostics += "; multiple-root step";
  return result;
}

SequenceReport hankel_sequence(const ProblemSpec& spec, const SolveConfig& cfg,
                               const PrecisionContext& ctx) {
  cfg.validate();
  SequenceReport report{spec, cfg.d, {}, 0, 0, Verdict::not_converged, ctx.digits(), 0, {}};
  Complex previous = seed_for(spec, cfg, ctx);
  bool all_failed = true;
  bool any_failed = false;
  bool was_complex = false;
  std::string last_diagnostics;

  for (int D = 2; D <= cfg.D_max; ++D) {
    Complex seed = previous;
    if (D > 2 && cfg.step_rule == StepRule::newton && seed.is_real()) {
      Real size = abs(seed);
      if (size < Real(1L, ctx)) size = Real(1L, ctx);
      seed.im() = size * Real(cfg.imag_kick, ctx);
    }
    RootResult root = find_root(spec, HankelSpec::make(D, cfg.d), seed, cfg, ctx);
    root.energy = canonical_root(root.energy, ctx);
    if (root.converged) {
      all_failed = false;
    } else {
      any_failed = true;
      last_diagnostics = "D=" + std::to_string(D) + ": " + root.diagnostics;
    }
    if (!root.diverged) previous = root.energy;
    if (D < cfg.D_max && !root.energy.is_real()) was_complex = true;
    report.entries.push_back({D, std::move(root)});
  }
  if (all_failed) throw SolveError("no Hankel root converged; last: " + last_diagnostics);

  const Complex& last = report.entries.back().root.energy;
  const Complex& before = report.entries[report.entries.size() - 2].root.energy;
  report.stable_digits_re = stable_digits(before.re(), last.re(), ctx.digits());
  report.stable_digits_im = stable_digits(before.im(), last.im(), ctx.digits());
  if (any_failed) {
    report.verdict = Verdict::not_converged;
  } else if (was_complex && last.is_real()) {
    report.verdict = Verdict::collapsed_to_real;
  } else {
    report.verdict = Verdict::converged;
  }
  return report;
}

int initial_digits(const SolveConfig& cfg) {
  int digits = 2 * cfg.target_digits + 10 * cfg.D_max;
  if (cfg.im_scale_log10 && *cfg.im_scale_log10 < 0) {
    digits += static_cast<int>(std::ceil(-*cfg.im_scale_log10));
  }
  return std::max(digits, PrecisionContext::kMinDigits);
}

SequenceReport hankel_sequence(const ProblemSpec& spec, const SolveConfig& cfg) {
  const int digits = cfg.fixed_digits ? *cfg.fixed_digits : initial_digits(cfg);
  return hankel_sequence(spec, cfg, PrecisionContext::with_digits(digits));
}

SequenceReport solve_adaptive(const ProblemSpec& spec, const SolveConfig& cfg) {
  cfg.validate();
  int digits = cfg.fixed_digits ? *cfg.fixed_digits : initial_digits(cfg);
  for (int escalation = 0;; ++escalation) {
    SequenceReport report = hankel_sequence(spec, cfg, PrecisionContext::with_digits(digits));
    report.escalations = escalation;
    report.precision_check = run_precision_check(spec, cfg, report, digits);
    const bool honest = report.precision_check->agreement >= cfg.target_digits;
    if (honest) return report;
    if (cfg.fixed_digits || escalation == kMaxEscalations) {
      report.verdict = Verdict::not_converged;
      return report;
    }
    digits = static_cast<int>(std::ceil(1.5 * digits));
  }
}

namespace {

template <class Fn>
void run_rows(std::size_t count, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void check_g_list(const std::vector<Rational>& g_values) {
  if (g_values.empty()) throw ConfigError("g-list is empty");
  for (std::size_t i = 0; i < g_values.size(); ++i) {
    if (g_values[i] < 0) throw DomainError("g must be >= 0");
    if (i > 0 && !(g_values[i - 1] < g_values[i])) {
      throw ConfigError("g-list must be strictly ascending");
    }
  }
}

void solve_row(SweepRow& row, const ProblemSpec& spec, const SolveConfig& cfg) {
  try {
    row.report = solve_adaptive(spec, cfg);
  } catch (const Error& e) {
    row.error = e.what();
  }
}

}  // namespace

std::vector<SweepRow> sweep(const std::function<ProblemSpec(const Rational&)>& factory,
                            const std::vector<Rational>& g_values, const SolveConfig& cfg,
                            int jobs) {
  check_g_list(g_values);
  cfg.validate();
  std::vector<SweepRow> rows(g_values.size());
  run_rows(rows.size(), jobs, [&](std::size_t i) {
    rows[i].g = g_values[i];
    try {
      solve_row(rows[i], factory(g_values[i]), cfg);
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

std::vector<SweepRow> sweep(Preset preset, const std::vector<Rational>& g_values,
                            const SolveConfig& cfg, int jobs) {
  if (preset == Preset::custom) throw ConfigError("preset sweep needs a named preset");
  check_g_list(g_values);
  cfg.validate();
  const int table_id = preset == Preset::triple_well ? 2 : 3;
  std::vector<SweepRow> rows(g_values.size());
  run_rows(rows.size(), jobs, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.g = g_values[i];
    SolveConfig row_cfg = cfg;
    if (!row_cfg.im_scale_log10) row_cfg.im_scale_log10 = oracle::im_scale_log10(preset, row.g);
    solve_row(row, make_preset(preset, row.g), row_cfg);
    if (row.report) {
      row.ratio = oracle::wkb_ratio(table_id, row.g, row.report->final_root().energy.im(),
                                    RenderMode::truncate);
    }
  });
  return rows;
}

}  // namespace rpm
