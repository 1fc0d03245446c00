// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
// exits nonzero when any selected criterion fails.
//
//   acceptance            run every criterion
//   acceptance 2 9        run the listed criteria

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rpm/hankel.hpp"
#include "rpm/oracle.hpp"
#include "rpm/reference.hpp"
#include "rpm/series.hpp"
#include "rpm/solver.hpp"

using namespace rpm;

namespace {

// Pinned tolerances and budgets.
constexpr double kTable1Seconds = 60;
constexpr double kSweepSeconds = 600;
constexpr int kTargetDigits = 20;
constexpr int kDMax = 15;
constexpr int kHarmonicDigits = 60;
constexpr int kDerivativeDigits = 60;
constexpr int kDerivativeSamples = 10;
constexpr int kDeterminantDigits = 50;
constexpr int kDeterminantSlack = 5;
constexpr int kRotationDigitsTable3 = 6;
constexpr int kRotationDigitsTable2 = 5;
constexpr double kRotationSeconds = 60;
constexpr int kRotationMaxBasis = 400;
constexpr double kSeedTolerance = 1e-20;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    pass = false;
    detail << why << "; ";
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolveConfig table_config() {
  SolveConfig cfg;
  cfg.d = 0;
  cfg.D_max = kDMax;
  cfg.target_digits = kTargetDigits;
  return cfg;
}

// Runs are shared between criteria 1-3 and 9.
struct Runs {
  std::optional<SequenceReport> table1;
  double table1_seconds = 0;
  std::map<int, std::vector<SweepRow>> sweeps;
  std::map<int, double> sweep_seconds;

  const SequenceReport& t1() {
    if (!table1) {
      const auto t0 = std::chrono::steady_clock::now();
      SolveConfig cfg = table_config();
      cfg.im_scale_log10 = oracle::im_scale_log10(Preset::triple_well, Rational(7, 50));
      table1 = solve_adaptive(preset_triple_well(Rational(7, 50)), cfg);
      table1_seconds = seconds_since(t0);
    }
    return *table1;
  }

  const std::vector<SweepRow>& sweep_of(int table_id) {
    auto it = sweeps.find(table_id);
    if (it == sweeps.end()) {
      const auto t0 = std::chrono::steady_clock::now();
      const Preset preset = table_id == 2 ? Preset::triple_well : Preset::double_well;
      it = sweeps.emplace(table_id, sweep(preset, reference::sweep_couplings(), table_config(), 1)).first;
      sweep_seconds[table_id] = seconds_since(t0);
    }
    return it->second;
  }
};

void report_rows(const std::vector<reference::RowCheck>& rows, Outcome& o) {
  int cells = 0;
  int passed = 0;
  for (const auto& row : rows) {
    if (!row.error.empty()) o.fail(row.label + " solve failed: " + row.error);
    for (const auto& c : row.cells) {
      ++cells;
      if (c.pass) {
        ++passed;
      } else {
        o.fail(row.label + " " + c.column + " printed " + c.printed + " computed " + c.computed +
               " (" + std::to_string(c.matching) + "/" + std::to_string(c.required_digits) + " digits)");
      }
    }
  }
  o.detail << passed << "/" << cells << " cells";
}

void criterion1(Runs& runs, Outcome& o) {
  const auto& r = runs.t1();
  report_rows(reference::compare_table1(r), o);
  o.detail << ", " << runs.table1_seconds << " s";
  if (runs.table1_seconds >= kTable1Seconds) o.fail("runtime budget exceeded");
}

void sweep_criterion(Runs& runs, int table_id, Outcome& o) {
  report_rows(reference::compare_sweep(table_id, runs.sweep_of(table_id)), o);
  o.detail << ", " << runs.sweep_seconds[table_id] << " s";
  if (runs.sweep_seconds[table_id] >= kSweepSeconds) o.fail("runtime budget exceeded");
}

void criterion3(Runs& runs, Outcome& o) {
  sweep_criterion(runs, 3, o);
  // Spot row g = 0.14.
  const auto& rows = runs.sweep_of(3);
  const auto gs = reference::sweep_couplings();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (gs[i] != Rational(7, 50)) continue;
    if (!rows[i].ok()) {
      o.fail("g=0.14 spot row missing");
      return;
    }
    const Complex& e = rows[i].report->final_root().energy;
    const bool re = reference::digits_match(e.re(), "0.96816424784205963513");
    const bool im = reference::digits_match(e.im(), "4.297124100601175228e-7");
    if (re && im) {
      o.detail << ", spot g=0.14 ok";
    } else {
      o.detail << ", ";
      o.fail("spot g=0.14 mismatch");
    }
  }
}

void criterion4(Outcome& o) {
  constexpr int kJmax = 30;
  const std::vector<std::pair<Rational, Rational>> pairs = {
      {Rational(7, 50), Rational(1)},     {Rational(1, 10), Rational(97, 100)},
      {Rational(3, 10), Rational(-1, 3)}, {Rational(1, 4), Rational(5, 2)},
      {Rational(1, 5), Rational(81, 7)}};
  int compared = 0;
  for (const Preset preset : {Preset::triple_well, Preset::double_well}) {
    for (const Rational& alpha : {Rational(0), Rational(1)}) {
      for (const auto& [g, E] : pairs) {
        const ProblemSpec spec = make_preset(preset, g).with_alpha(alpha);
        const auto direct = rational_coefficients(spec, E, kJmax);
        const auto via_psi = oracle::f_from_psi(oracle::psi_series(spec, E, kJmax + 1));
        for (int j = 0; j <= kJmax; ++j) {
          ++compared;
          if (j >= static_cast<int>(via_psi.size()) || via_psi[j] != direct[j]) {
            std::ostringstream why;
            why << preset_name(preset) << " alpha=" << alpha << " g=" << g << " E=" << E << " j=" << j;
            o.fail(why.str());
            break;
          }
        }
      }
    }
  }
  o.detail << compared << " coefficients equal";
}

void criterion5(Outcome& o) {
  const ProblemSpec harmonic = custom({{2, 1}});
  const auto ctx = PrecisionContext::with_digits(kHarmonicDigits);
  SolveConfig cfg;
  cfg.target_digits = kTargetDigits;
  int exact_zeros = 0;
  int roots = 0;
  const Real tol = pow10(-kTargetDigits, ctx);
  for (const int alpha : {0, 1}) {
    const ProblemSpec spec = harmonic.with_alpha(alpha);
    for (const int n : {0, 1}) {
      // Level n of the parity family alpha; covers 2n+1 for n = 0, 1.
      const Rational level = 4 * n + 2 * alpha + 1;
      for (const int d : {0, 1}) {
        for (int D = 2; D <= 6; ++D) {
          const HankelSpec h = HankelSpec::make(D, d);
          const auto f = rational_coefficients(spec, level, h.jmax());
          const auto m = hankel_matrix<Rational>(f, h);
          if (oracle::exact_determinant(m) == 0) {
            ++exact_zeros;
          } else {
            std::ostringstream why;
            why << "H(" << level << ") != 0 alpha=" << alpha << " D=" << D << " d=" << d;
            o.fail(why.str());
          }
        }
        for (const char* shift : {"0.1", "-0.1"}) {
          const Complex seed = Complex(Real(level, ctx)) + parse_decimal(shift, ctx);
          const HankelSpec h = HankelSpec::make(4, d);
          const RootResult r = find_root(spec, h, seed, cfg, ctx);
          ++roots;
          if (!(abs(r.energy - Complex(Real(level, ctx))) < tol)) {
            std::ostringstream why;
            why << "root from " << level << shift << " d=" << d << " gave "
                << render_decimal(r.energy, 25);
            o.fail(why.str());
          }
        }
      }
    }
  }
  o.detail << exact_zeros << " exact zeros, " << roots << " roots within 1e-" << kTargetDigits;
}

void criterion6(Outcome& o) {
  const auto ctx = PrecisionContext::with_digits(kDerivativeDigits);
  const ProblemSpec spec = preset_triple_well(Rational(7, 50));
  std::mt19937_64 rng(20260930);
  std::uniform_real_distribution<double> dre(-0.03, 0.03);
  std::uniform_real_distribution<double> dim(-0.01, 0.01);
  const Real h_step = pow10(-kDerivativeDigits / 3, ctx);
  const Complex h(h_step, Real(0L, ctx));
  const double tolerance_log = -kDerivativeDigits / 3.0;
  double worst = -1e9;
  for (int sample = 0; sample < kDerivativeSamples; ++sample) {
    const Complex E(Real(0.97 + dre(rng), ctx), Real(dim(rng), ctx));
    for (const int D : {5, 10, 15}) {
      const HankelSpec hs = HankelSpec::make(D, 0);
      const NewtonIncrement inc = newton_increment(spec, E, hs, ctx);
      const Complex H0 = hankel_determinant(spec, E, hs, ctx).value();
      const Complex Hp = hankel_determinant(spec, E + h, hs, ctx).value();
      const Complex Hm = hankel_determinant(spec, E - h, hs, ctx).value();
      const Complex fd = -(H0 * (h * 2)) / (Hp - Hm);
      const double rel = (fd - inc.increment).log10_abs() - fd.log10_abs();
      worst = std::max(worst, rel);
      if (inc.at_root || !(rel <= tolerance_log)) {
        std::ostringstream why;
        why << "D=" << D << " E=" << render_decimal(E, 8) << " log10 rel=" << rel;
        o.fail(why.str());
      }
    }
  }
  o.detail << "worst log10 relative difference " << worst << " (bound " << tolerance_log << ")";
}

void criterion7(Outcome& o) {
  const auto ctx = PrecisionContext::with_digits(kDeterminantDigits);
  const int required = kDeterminantDigits - kDeterminantSlack;
  int compared = 0;
  int worst = kDeterminantDigits;
  const std::vector<Rational> energies = {Rational(97, 100), Rational(3, 2), Rational(-2, 7)};
  for (const ProblemSpec& spec :
       {preset_triple_well(Rational(7, 50)), preset_double_well(Rational(3, 10)),
        preset_double_well(Rational(1, 5)).with_alpha(1)}) {
    for (const Rational& E : energies) {
      for (const int d : {0, 1}) {
        for (int D = 2; D <= 6; ++D) {
          const HankelSpec hs = HankelSpec::make(D, d);
          const auto f = rational_coefficients(spec, E, hs.jmax());
          const auto exact = oracle::exact_determinant(hankel_matrix<Rational>(f, hs));
          ComplexMatrix m(D, D, Complex(0L, ctx));
          for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) m(i, j) = Complex(Real(f[i + j + d + 1], ctx));
          const Complex approx = scaled_determinant(m, ctx).value();
          const int agree = exact == 0 ? (approx.is_zero() ? kDeterminantDigits : 0)
                                       : agreement_digits(approx.re(), Real(exact, ctx),
                                                          kDeterminantDigits);
          ++compared;
          worst = std::min(worst, agree);
          if (agree < required || !approx.im().is_zero()) {
            std::ostringstream why;
            why << "D=" << D << " d=" << d << " E=" << E << " agrees to " << agree;
            o.fail(why.str());
          }
        }
      }
    }
  }
  o.detail << compared << " determinants, worst agreement " << worst << " digits (need " << required << ")";
}

void rotation_row(int table_id, int required, Outcome& o) {
  const auto rows = table_id == 2 ? reference::table2() : reference::table3();
  const auto& row = rows.back();
  const ProblemSpec spec = make_preset(table_id == 2 ? Preset::triple_well : Preset::double_well,
                                       parse_rational(row.g));
  const auto ctx = PrecisionContext::with_digits(30);
  const Real re = parse_real(row.re, ctx);
  const Real im = parse_real(row.im, ctx);
  const auto t0 = std::chrono::steady_clock::now();
  oracle::RotationOptions options;
  const auto r = oracle::complex_rotation_check(spec, {re.to_double(), -im.to_double()}, options);
  const double secs = seconds_since(t0);
  const int re_digits = agreement_digits(Real(r.energy.real(), ctx), re, 16);
  const int im_digits = agreement_digits(Real(std::abs(r.energy.imag()), ctx), im, 16);
  o.detail << "table " << table_id << " g=" << row.g << ": re " << re_digits << ", im " << im_digits
           << " digits (need " << required << "), " << secs << " s; ";
  if (!r.found) o.fail("table " + std::to_string(table_id) + " no theta-stable eigenvalue");
  if (re_digits < required || im_digits < required) o.fail("table " + std::to_string(table_id) + " digits");
  if (secs >= kRotationSeconds) o.fail("runtime budget exceeded");
  if (options.basis_size > kRotationMaxBasis) o.fail("basis too large");
}

void criterion8(Outcome& o) {
  rotation_row(3, kRotationDigitsTable3, o);
  rotation_row(2, kRotationDigitsTable2, o);
}

void criterion9(Runs& runs, Outcome& o) {
  int cases = 0;
  int worst = 1 << 30;
  auto check = [&](const std::string& label, const SequenceReport& r) {
    ++cases;
    if (!r.precision_check) {
      o.fail(label + " no precision check");
      return;
    }
    worst = std::min(worst, r.precision_check->agreement);
    if (r.precision_check->agreement < kTargetDigits) {
      o.fail(label + " agrees to " + std::to_string(r.precision_check->agreement));
    }
  };
  check("table 1", runs.t1());
  for (const int table_id : {2, 3}) {
    const auto& rows = runs.sweep_of(table_id);
    for (const auto& row : rows) {
      const std::string label = "table " + std::to_string(table_id) + " g=" + render_rational(row.g);
      if (!row.ok()) {
        o.fail(label + " failed");
        continue;
      }
      check(label, *row.report);
    }
  }
  o.detail << cases << " cases, smallest agreement " << worst << " digits (need " << kTargetDigits << ")";
}

void criterion10(Outcome& o) {
  const auto ctx = PrecisionContext::with_digits(40);
  std::vector<Complex> finals;
  for (const char* seed : {"0.9", "1.0", "1.05"}) {
    SolveConfig cfg = table_config();
    cfg.seed = parse_decimal(seed, ctx);
    cfg.im_scale_log10 = oracle::im_scale_log10(Preset::triple_well, Rational(7, 50));
    const auto r = solve_adaptive(preset_triple_well(Rational(7, 50)), cfg);
    if (r.verdict != Verdict::converged) o.fail(std::string("seed ") + seed + " " + std::string(verdict_name(r.verdict)));
    finals.push_back(r.final_root().energy);
  }
  const Real tol(kSeedTolerance, ctx);
  double worst = -1e9;
  for (std::size_t i = 1; i < finals.size(); ++i) {
    const Complex diff = finals[i] - finals[0];
    worst = std::max(worst, diff.log10_abs());
    if (!(abs(diff) <= tol)) o.fail("seed " + std::to_string(i) + " differs");
  }
  o.detail << "max log10 |dE| " << worst << " (bound " << std::log10(kSeedTolerance) << ")";
}

}  // namespace

int main(int argc, char** argv) {
  Runs runs;
  const std::map<int, std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {1, {"Table 1 reproduction", [&](Outcome& o) { criterion1(runs, o); }}},
      {2, {"Table 2 reproduction", [&](Outcome& o) { sweep_criterion(runs, 2, o); }}},
      {3, {"Table 3 reproduction", [&](Outcome& o) { criterion3(runs, o); }}},
      {4, {"two-route identity", criterion4}},
      {5, {"harmonic exactness", criterion5}},
      {6, {"derivative consistency", criterion6}},
      {7, {"determinant oracle", criterion7}},
      {8, {"complex rotation check", criterion8}},
      {9, {"precision honesty", [&](Outcome& o) { criterion9(runs, o); }}},
      {10, {"seed robustness", criterion10}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [id, _] : criteria) selected.push_back(id);
  }
  bool all_pass = true;
  for (const int id : selected) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    Outcome o;
    try {
      it->second.second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << it->second.first
              << "): " << o.detail.str() << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
