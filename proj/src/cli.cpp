#include "rpm/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rpm/errors.hpp"
#include "rpm/oracle.hpp"
#include "rpm/problem.hpp"
#include "rpm/reference.hpp"
#include "rpm/report.hpp"
#include "rpm/solver.hpp"

namespace rpm::cli {

namespace {

constexpr int kSeedDigits = 100;

struct ProblemArgs {
  std::string preset;
  std::string potential;
  std::string g;
  std::string alpha = "0";
  std::string centrifugal = "0";
};

struct SolverArgs {
  int d = 0;
  int dmax = 15;
  int target_digits = 20;
  std::string seed;
  int state = 0;
  std::optional<int> digits;
  std::string step_rule = "quadratic";
  double kick = 1e-6;
  int max_iters = 60;
  std::string format = "table";
  int jobs = 1;
};

void add_problem_options(CLI::App* app, ProblemArgs& p) {
  auto* preset = app->add_option("--preset", p.preset, "triple-well or double-well")
                     ->check(CLI::IsMember({"triple-well", "double-well"}));
  auto* potential = app->add_option("--potential", p.potential,
                                    "custom potential, e.g. k2=1,k4=-0.0392 (power k<n>)");
  preset->excludes(potential);
  app->add_option("--g", p.g, "coupling, decimal or p/q");
  app->add_option("--alpha", p.alpha, "parity exponent alpha (0 even, 1 odd)");
  app->add_option("--centrifugal", p.centrifugal, "V_-2 strength, must equal alpha(alpha-1)");
}

void add_solver_options(CLI::App* app, SolverArgs& s) {
  app->add_option("--d", s.d, "Hankel displacement")->check(CLI::NonNegativeNumber);
  app->add_option("--dmax", s.dmax, "largest Hankel dimension D")->check(CLI::Range(3, 200));
  app->add_option("--target-digits", s.target_digits, "significant digits wanted")
      ->check(CLI::Range(6, 2000));
  app->add_option("--seed", s.seed, "complex seed for D = 2, e.g. 0.97 or 0.97+1e-6i");
  app->add_option("--state", s.state, "eigenvalue family when no seed is given")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--digits", s.digits, "fixed working precision (default: adaptive)")
      ->check(CLI::Range(PrecisionContext::kMinDigits, 100000));
  app->add_option("--step-rule", s.step_rule, "quadratic or newton")
      ->check(CLI::IsMember({"quadratic", "newton"}));
  app->add_option("--kick", s.kick, "relative imaginary kick of the newton rule")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-iters", s.max_iters, "iteration cap per root")->check(CLI::PositiveNumber);
  app->add_option("--format", s.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
}

void add_config_option(CLI::App* app, std::string& path) {
  app->add_option("--config", path, "file of key = value lines; flags override it");
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  return text.substr(first, text.find_last_not_of(" \t\r") - first + 1);
}

// Fills options not given on the command line from a key = value file.
void apply_config_file(CLI::App* app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = key == "config" ? nullptr : app->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw ConfigError(path + ":" + std::to_string(number) + ": unknown key " + key);
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

// RPM_PRECISION supplies --digits when neither the flag nor a config file did.
void apply_precision_env(CLI::App* app) {
  CLI::Option* opt = app->get_option_no_throw("--digits");
  if (opt == nullptr || opt->count() > 0) return;
  const char* env = std::getenv("RPM_PRECISION");
  if (env == nullptr || *env == '\0') return;
  opt->add_result(std::string(env));
  opt->run_callback();
}

void finish_options(CLI::App* app, const std::string& config_path) {
  if (!config_path.empty()) apply_config_file(app, config_path);
  apply_precision_env(app);
}

ProblemSpec build_problem(const ProblemArgs& p) {
  if (!p.preset.empty() && !p.potential.empty()) {
    throw ConfigError("--preset and --potential are mutually exclusive");
  }
  const Rational alpha = parse_rational(p.alpha);
  const Rational centrifugal = parse_rational(p.centrifugal);
  if (!p.potential.empty()) {
    if (!p.g.empty()) throw ConfigError("--g applies only to presets");
    return custom(parse_potential(p.potential), alpha, centrifugal);
  }
  if (p.preset.empty()) throw ConfigError("one of --preset or --potential is required");
  if (p.g.empty()) throw ConfigError("--preset needs --g");
  ProblemSpec spec = make_preset(parse_preset(p.preset), parse_rational(p.g));
  if (alpha != 0 || centrifugal != 0) spec = spec.with_alpha(alpha, centrifugal);
  return spec;
}

SolveConfig build_config(const SolverArgs& s) {
  SolveConfig cfg;
  cfg.d = s.d;
  cfg.D_max = s.dmax;
  cfg.target_digits = s.target_digits;
  if (!s.seed.empty()) cfg.seed = parse_decimal(s.seed, PrecisionContext::with_digits(kSeedDigits));
  cfg.state_index = s.state;
  cfg.fixed_digits = s.digits;
  cfg.step_rule = parse_step_rule(s.step_rule);
  cfg.imag_kick = s.kick;
  cfg.max_newton_iters = s.max_iters;
  cfg.validate();
  return cfg;
}

std::vector<Rational> parse_g_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  if (out.empty()) throw ConfigError("--g-list is empty");
  return out;
}

int sequence_exit(const SequenceReport& r) {
  return r.verdict == Verdict::not_converged ? kNotConverged : kSuccess;
}

int cmd_solve(const ProblemArgs& p, const SolverArgs& s, std::ostream& out) {
  const ProblemSpec spec = build_problem(p);
  SolveConfig cfg = build_config(s);
  if (spec.g()) cfg.im_scale_log10 = oracle::im_scale_log10(spec.preset(), *spec.g());
  const SequenceReport report = solve_adaptive(spec, cfg);
  out << report::render_sequence(report, report::parse_format(s.format),
                                 report::config_json(spec, cfg), cfg.target_digits);
  return sequence_exit(report);
}

int cmd_sweep(const ProblemArgs& p, const SolverArgs& s, const std::string& g_list,
              std::ostream& out) {
  const std::vector<Rational> g_values = parse_g_list(g_list);
  const SolveConfig cfg = build_config(s);
  const report::Format format = report::parse_format(s.format);
  std::vector<SweepRow> rows;
  report::Json config;
  Preset preset = Preset::custom;
  if (!p.potential.empty()) throw ConfigError("sweep needs --preset");
  if (p.preset.empty()) throw ConfigError("sweep needs --preset");
  preset = parse_preset(p.preset);
  const Rational alpha = parse_rational(p.alpha);
  const Rational centrifugal = parse_rational(p.centrifugal);
  if (alpha != 0 || centrifugal != 0) {
    // Ratio columns refer to the even ground-state family only.
    rows = sweep([&](const Rational& g) { return make_preset(preset, g).with_alpha(alpha, centrifugal); },
                 g_values, cfg, s.jobs);
    config = report::config_json(preset, g_values, cfg);
    config["problem"]["alpha"] = render_rational(alpha);
    preset = Preset::custom;
  } else {
    rows = sweep(preset, g_values, cfg, s.jobs);
    config = report::config_json(preset, g_values, cfg);
  }
  out << report::render_sweep(rows, preset, format, config, cfg.target_digits);
  for (const SweepRow& row : rows) {
    if (!row.ok() || row.report->verdict == Verdict::not_converged) return kNotConverged;
  }
  return kSuccess;
}

void print_checks(const std::vector<reference::RowCheck>& checks, std::ostream& out) {
  int cells = 0;
  int passed = 0;
  for (const auto& row : checks) {
    out << std::left << std::setw(7) << row.label;
    if (!row.error.empty()) out << " error: " << row.error;
    for (const auto& c : row.cells) {
      ++cells;
      passed += c.pass ? 1 : 0;
      out << "  " << c.column << ' ' << c.matching << '/' << c.required_digits << ' '
          << (c.pass ? "ok" : "MISMATCH");
      if (!c.pass) out << " (printed " << c.printed << ", computed " << c.computed << ')';
    }
    out << '\n';
  }
  out << "cells passing: " << passed << '/' << cells << '\n';
}

int cmd_reproduce(int table_id, bool diff, const SolverArgs& s, std::ostream& out) {
  SolveConfig cfg;
  cfg.D_max = 15;
  cfg.target_digits = 20;
  cfg.fixed_digits = s.digits;
  const report::Format format = report::parse_format(s.format);
  if (table_id == 1) {
    const Rational g(7, 50);
    const ProblemSpec spec = preset_triple_well(g);
    cfg.im_scale_log10 = oracle::im_scale_log10(Preset::triple_well, g);
    const SequenceReport r = solve_adaptive(spec, cfg);
    if (!diff) {
      out << report::render_sequence(r, format, report::config_json(spec, cfg), cfg.target_digits);
      return sequence_exit(r);
    }
    const auto checks = reference::compare_table1(r);
    print_checks(checks, out);
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass(); })
               ? kSuccess
               : kCheckFailed;
  }
  const Preset preset = table_id == 2 ? Preset::triple_well : Preset::double_well;
  const std::vector<Rational> g_values = reference::sweep_couplings();
  const std::vector<SweepRow> rows = sweep(preset, g_values, cfg, s.jobs);
  if (!diff) {
    out << report::render_sweep(rows, preset, format, report::config_json(preset, g_values, cfg),
                                cfg.target_digits);
    for (const SweepRow& row : rows) {
      if (!row.ok() || row.report->verdict == Verdict::not_converged) return kNotConverged;
    }
    return kSuccess;
  }
  const auto checks = reference::compare_sweep(table_id, rows);
  print_checks(checks, out);
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass(); })
             ? kSuccess
             : kCheckFailed;
}

struct OracleArgs {
  std::string check;
  double theta = 0;
  int basis = 200;
  double omega = 1.0;
  std::string energies;
};

void print_outcome(const oracle::CheckOutcome& c, std::ostream& out) {
  out << c.name << ": " << (c.pass ? "pass" : "FAIL");
  if (!c.detail.empty()) out << "  " << c.detail;
  out << '\n';
}

oracle::CheckOutcome wkb_outcome() {
  oracle::CheckOutcome outcome{"wkb", true, ""};
  int cells = 0;
  int passed = 0;
  std::ostringstream detail;
  for (const int table : {2, 3}) {
    const auto rows = table == 2 ? reference::table2() : reference::table3();
    for (const auto& row : rows) {
      // The columns were evaluated from Im digits the tables do not print;
      // the solver supplies them.
      const Rational g = parse_rational(row.g);
      SolveConfig cfg;
      cfg.im_scale_log10 = oracle::im_scale_log10(table == 2 ? Preset::triple_well : Preset::double_well, g);
      const SequenceReport r =
          solve_adaptive(make_preset(table == 2 ? Preset::triple_well : Preset::double_well, g), cfg);
      const auto ratio = oracle::wkb_ratio(table, g, r.final_root().energy.im(), RenderMode::truncate);
      ++cells;
      if (ratio && reference::digits_match(*ratio, row.ratio)) {
        ++passed;
      } else {
        outcome.pass = false;
        detail << "table " << table << " g=" << row.g << " gives "
               << (ratio ? render_decimal(*ratio, 10) : std::string("undefined")) << "; ";
      }
    }
  }
  detail << passed << '/' << cells << " ratio cells";
  outcome.detail = detail.str();
  return outcome;
}

oracle::CheckOutcome rotation_outcome(const ProblemSpec& spec, const OracleArgs& a) {
  // Compare against the high-precision Hankel value of the same problem.
  SolveConfig cfg;
  cfg.target_digits = 12;
  if (spec.g()) cfg.im_scale_log10 = oracle::im_scale_log10(spec.preset(), *spec.g());
  const SequenceReport r = solve_adaptive(spec, cfg);
  const Complex& e = r.final_root().energy;
  const std::complex<double> target(e.re().to_double(), -e.im().to_double());
  oracle::RotationOptions options;
  if (a.theta > 0) options.theta = a.theta;
  options.basis_size = a.basis;
  options.omega = a.omega;
  const oracle::RotationResult rot = oracle::complex_rotation_check(spec, target, options);
  const double re_rel = std::abs(rot.energy.real() - target.real()) / std::abs(target.real());
  const double im_mag = std::abs(target.imag());
  const double im_rel = im_mag > 0 ? std::abs(std::abs(rot.energy.imag()) - im_mag) / im_mag
                                   : std::abs(rot.energy.imag());
  constexpr double kTolerance = 1e-6;
  oracle::CheckOutcome c{"rotation", rot.found && re_rel <= kTolerance && im_rel <= kTolerance, ""};
  std::ostringstream detail;
  detail << std::setprecision(12) << "theta=" << rot.theta << " E=" << rot.energy.real()
         << (rot.energy.imag() < 0 ? "" : "+") << rot.energy.imag() << "i"
         << " theta-variation=" << std::setprecision(3) << rot.theta_variation
         << " rel.err re=" << re_rel << " |im|=" << im_rel << " (tolerance " << kTolerance << ")";
  c.detail = detail.str();
  return c;
}

std::vector<Rational> oracle_energies(const OracleArgs& a) {
  if (!a.energies.empty()) return parse_g_list(a.energies);
  return {Rational(1), Rational(97, 100), Rational(3), Rational(-1, 2), Rational(123, 7)};
}

int cmd_oracle(const OracleArgs& a, const ProblemArgs& p, std::ostream& out) {
  const bool all = a.check == "all";
  std::vector<oracle::CheckOutcome> outcomes;
  const bool have_problem = !p.preset.empty() || !p.potential.empty();
  auto problem = [&]() {
    if (have_problem) return build_problem(p);
    return preset_triple_well(Rational(7, 50));
  };
  if (all || a.check == "two-route") {
    outcomes.push_back(oracle::two_route_check(problem(), oracle_energies(a), 30));
  }
  if (all || a.check == "determinant") {
    outcomes.push_back(oracle::determinant_check(problem(), Rational(97, 100), 6,
                                                 PrecisionContext::with_digits(50)));
  }
  if (all || a.check == "rotation") {
    const ProblemSpec spec = have_problem ? build_problem(p) : preset_double_well(Rational(3, 10));
    outcomes.push_back(rotation_outcome(spec, a));
  }
  if (all || a.check == "wkb") outcomes.push_back(wkb_outcome());
  bool pass = true;
  for (const auto& c : outcomes) {
    print_outcome(c, out);
    pass = pass && c.pass;
  }
  out << "summary: " << (pass ? "pass" : "FAIL") << '\n';
  return pass ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riccati-Pade eigenvalues and resonances of polynomial oscillators", "rpade"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(report::kToolVersion));

  std::string solve_config;
  std::string sweep_config;
  ProblemArgs solve_problem;
  SolverArgs solve_solver;
  auto* solve = app.add_subcommand("solve", "one Hankel sequence with adaptive precision");
  add_problem_options(solve, solve_problem);
  add_solver_options(solve, solve_solver);
  add_config_option(solve, solve_config);

  ProblemArgs sweep_problem;
  SolverArgs sweep_solver;
  std::string g_list;
  auto* sweep_cmd = app.add_subcommand("sweep", "independent solves over a list of couplings");
  add_problem_options(sweep_cmd, sweep_problem);
  add_solver_options(sweep_cmd, sweep_solver);
  sweep_cmd->add_option("--g-list", g_list, "comma-separated ascending couplings")->required();
  sweep_cmd->add_option("--jobs", sweep_solver.jobs, "worker threads")->check(CLI::Range(1, 256));
  add_config_option(sweep_cmd, sweep_config);

  int table_id = 1;
  bool diff = false;
  SolverArgs reproduce_solver;
  auto* reproduce = app.add_subcommand("reproduce", "regenerate a reference table");
  reproduce->add_option("table", table_id, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
  reproduce->add_flag("--diff", diff, "compare against the printed values; exit 3 on mismatch");
  reproduce->add_option("--format", reproduce_solver.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  reproduce->add_option("--jobs", reproduce_solver.jobs, "worker threads")->check(CLI::Range(1, 256));
  reproduce->add_option("--digits", reproduce_solver.digits, "fixed working precision")
      ->check(CLI::Range(PrecisionContext::kMinDigits, 100000));

  OracleArgs oracle_args;
  ProblemArgs oracle_problem;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "independent verification suites");
  oracle_cmd->add_option("check", oracle_args.check, "two-route, determinant, rotation, wkb or all")
      ->required()
      ->check(CLI::IsMember({"two-route", "determinant", "rotation", "wkb", "all"}));
  add_problem_options(oracle_cmd, oracle_problem);
  oracle_cmd->add_option("--theta", oracle_args.theta, "rotation angle (default by potential)");
  oracle_cmd->add_option("--basis", oracle_args.basis, "oscillator basis size")->check(CLI::Range(4, 400));
  oracle_cmd->add_option("--omega", oracle_args.omega, "basis frequency")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--energies", oracle_args.energies, "rational energies for two-route");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (solve->parsed()) finish_options(solve, solve_config);
    if (sweep_cmd->parsed()) finish_options(sweep_cmd, sweep_config);
    if (reproduce->parsed()) finish_options(reproduce, "");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_problem, solve_solver, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_problem, sweep_solver, g_list, out);
    if (reproduce->parsed()) return cmd_reproduce(table_id, diff, reproduce_solver, out);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_args, oracle_problem, out);
  } catch (const SolveError& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rpm::cli
