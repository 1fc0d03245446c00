#include "rpm/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "rpm/errors.hpp"

namespace rpm::report {

namespace {

std::string real_text(const Real& x, int digits) { return render_decimal(x, digits); }

int shown_digits(int stable, int target) { return std::clamp(stable, 1, target); }

std::string seed_text(const SolveConfig& cfg) {
  return cfg.seed ? render_decimal(*cfg.seed, 30) : std::string("auto");
}

Json solver_json(const SolveConfig& cfg) {
  Json j;
  j["d"] = cfg.d;
  j["D_max"] = cfg.D_max;
  j["target_digits"] = cfg.target_digits;
  j["seed"] = seed_text(cfg);
  j["state"] = cfg.state_index;
  j["step_rule"] = std::string(step_rule_name(cfg.step_rule));
  j["imag_kick"] = render_decimal(Real(cfg.imag_kick, PrecisionContext::with_digits(20)), 6);
  j["max_newton_iters"] = cfg.max_newton_iters;
  j["precision"] = cfg.fixed_digits ? std::to_string(*cfg.fixed_digits) : std::string("adaptive");
  return j;
}

Json root_json(const SequenceEntry& entry, int digits) {
  const RootResult& r = entry.root;
  Json j;
  j["D"] = entry.D;
  j["re"] = real_text(r.energy.re(), digits);
  j["im"] = real_text(r.energy.im(), digits);
  j["iterations"] = r.iterations;
  j["final_step"] = render_decimal(r.final_step, 3);
  j["converged"] = r.converged;
  return j;
}

Json summary_json(const SequenceReport& report, int digits) {
  const Complex& e = report.final_root().energy;
  Json j;
  j["re"] = real_text(e.re(), digits);
  j["im"] = real_text(e.im(), digits);
  j["stable_digits_re"] = report.stable_digits_re;
  j["stable_digits_im"] = report.stable_digits_im;
  j["verdict"] = std::string(verdict_name(report.verdict));
  j["digits_used"] = report.digits_used;
  j["escalations"] = report.escalations;
  if (report.precision_check) {
    const PrecisionCheck& c = *report.precision_check;
    Json check;
    check["check_digits"] = c.check_digits;
    check["agreement_digits"] = c.agreement;
    Json values = Json::array();
    for (const auto& [low, high] : c.values) {
      values.push_back({{"re", real_text(low.re(), digits)},
                        {"im", real_text(low.im(), digits)},
                        {"re_check", real_text(high.re(), digits)},
                        {"im_check", real_text(high.im(), digits)}});
    }
    check["values"] = std::move(values);
    j["precision_check"] = std::move(check);
  }
  return j;
}

Json envelope(const Json& config, Json rows, Json summary) {
  Json j;
  j["tool_version"] = std::string(kToolVersion);
  j["config_hash"] = config_hash(config);
  j["config"] = config;
  j["rows"] = std::move(rows);
  if (!summary.is_null()) j["summary"] = std::move(summary);
  return j;
}

std::string pad(std::string s, std::size_t width) {
  // Width counts code points so the em-dash placeholder lines up.
  std::size_t shown = 0;
  for (const unsigned char c : s) shown += (c & 0xC0) != 0x80;
  if (shown < width) s.append(width - shown, ' ');
  return s;
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::size_t shown = 0;
      for (const unsigned char c : row[i]) shown += (c & 0xC0) != 0x80;
      width[i] = std::max(width[i], shown);
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += i + 1 == row.size() ? row[i] : pad(row[i], width[i] + 2);
    }
    out << line << '\n';
  }
  return out.str();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_lines(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string problem_line(const Json& config) {
  std::ostringstream out;
  const Json& p = config.at("problem");
  out << "# " << p.at("preset").get<std::string>();
  if (p.contains("g")) out << " g=" << p.at("g").get<std::string>();
  if (p.contains("g_list")) out << " g-list of " << p.at("g_list").size();
  out << " V=" << p.at("potential").get<std::string>() << " alpha=" << p.at("alpha").get<std::string>()
      << " d=" << config.at("solver").at("d").get<int>();
  return out.str();
}

Json problem_json(const ProblemSpec& spec) {
  Json p;
  p["preset"] = std::string(preset_name(spec.preset()));
  if (spec.g()) p["g"] = render_rational(*spec.g());
  p["potential"] = render_potential(spec);
  p["alpha"] = render_rational(spec.alpha());
  if (spec.central_field()) p["centrifugal"] = render_rational(spec.centrifugal());
  return p;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "table") return Format::table;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw ConfigError("unknown format '" + std::string(name) + "' (table|json|csv)");
}

Json config_json(const ProblemSpec& spec, const SolveConfig& cfg) {
  Json j;
  j["problem"] = problem_json(spec);
  j["solver"] = solver_json(cfg);
  const auto warnings = spec.warnings();
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

Json config_json(Preset preset, const std::vector<Rational>& g_values, const SolveConfig& cfg) {
  Json p;
  p["preset"] = std::string(preset_name(preset));
  Json list = Json::array();
  for (const Rational& g : g_values) list.push_back(render_rational(g));
  p["g_list"] = std::move(list);
  p["potential"] = preset == Preset::triple_well ? "k2=1,k4=-2g^2,k6=g^4" : "k2=1,k4=-2g^2";
  p["alpha"] = "0";
  Json j;
  j["problem"] = std::move(p);
  j["solver"] = solver_json(cfg);
  return j;
}

std::string config_hash(const Json& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json sequence_json(const SequenceReport& report, const Json& config, int target_digits) {
  const int digits = target_digits + kExtraOutputDigits;
  Json rows = Json::array();
  for (const SequenceEntry& e : report.entries) rows.push_back(root_json(e, digits));
  return envelope(config, std::move(rows), summary_json(report, digits));
}

Json sweep_json(const std::vector<SweepRow>& rows, const Json& config, int target_digits) {
  const int digits = target_digits + kExtraOutputDigits;
  Json out = Json::array();
  int failures = 0;
  for (const SweepRow& row : rows) {
    Json j;
    j["g"] = render_rational(row.g);
    if (row.ok()) {
      const SequenceReport& r = *row.report;
      j["re"] = real_text(r.final_root().energy.re(), digits);
      j["im"] = real_text(r.final_root().energy.im(), digits);
      j["ratio"] = row.ratio ? render_decimal(*row.ratio, 10) : std::string(kUndefined);
      j["stable_digits_re"] = r.stable_digits_re;
      j["stable_digits_im"] = r.stable_digits_im;
      j["verdict"] = std::string(verdict_name(r.verdict));
      j["digits_used"] = r.digits_used;
      if (r.verdict == Verdict::not_converged) ++failures;
    } else {
      j["error"] = row.error;
      ++failures;
    }
    out.push_back(std::move(j));
  }
  Json summary;
  summary["rows"] = static_cast<int>(rows.size());
  summary["failures"] = failures;
  return envelope(config, std::move(out), std::move(summary));
}

std::string json_text(const Json& payload) { return payload.dump(2) + "\n"; }

std::string stable_energy_text(const SequenceReport& report, int target_digits) {
  const Complex& e = report.final_root().energy;
  std::string out = render_decimal(e.re(), shown_digits(report.stable_digits_re, target_digits),
                                   RenderMode::truncate);
  if (!e.im().is_zero()) {
    out += " + " + render_decimal(e.im(), shown_digits(report.stable_digits_im, target_digits),
                                  RenderMode::truncate) + "i";
  } else {
    out += " + 0i";
  }
  return out;
}

std::string_view ratio_header(Preset preset) {
  return preset == Preset::triple_well ? "Im E g^2 exp(1/(2g^2))" : "Im E g exp(1/(3g^2))";
}

std::string render_sequence(const SequenceReport& report, Format format, const Json& config,
                            int target_digits) {
  if (format == Format::json) return json_text(sequence_json(report, config, target_digits));
  if (format == Format::csv) {
    std::vector<std::vector<std::string>> rows{{"D", "re", "im", "iterations", "converged"}};
    const int digits = target_digits + kExtraOutputDigits;
    for (const SequenceEntry& e : report.entries) {
      rows.push_back({std::to_string(e.D), real_text(e.root.energy.re(), digits),
                      real_text(e.root.energy.im(), digits), std::to_string(e.root.iterations),
                      e.root.converged ? "true" : "false"});
    }
    return csv_lines(rows);
  }
  std::vector<std::vector<std::string>> rows{{"D", "Re E", "Im E", "iter"}};
  for (const SequenceEntry& e : report.entries) {
    std::string iter = std::to_string(e.root.iterations);
    if (!e.root.converged) iter += " (not converged: " + e.root.diagnostics + ")";
    rows.push_back({std::to_string(e.D),
                    render_decimal(e.root.energy.re(), target_digits, RenderMode::truncate),
                    render_decimal(e.root.energy.im(), target_digits, RenderMode::truncate), iter});
  }
  std::ostringstream out;
  out << problem_line(config) << '\n' << text_table(rows);
  out << "E = " << stable_energy_text(report, target_digits) << '\n';
  out << "stable digits re " << report.stable_digits_re << ", im " << report.stable_digits_im
      << "; verdict " << verdict_name(report.verdict) << "; digits used " << report.digits_used;
  if (report.precision_check) {
    out << " (+" << report.precision_check->check_digits - report.precision_check->digits
        << "-digit check agrees to " << report.precision_check->agreement << ")";
  }
  out << '\n';
  if (config.contains("warnings")) {
    for (const auto& w : config.at("warnings")) out << "warning: " << w.get<std::string>() << '\n';
  }
  return out.str();
}

std::string render_sweep(const std::vector<SweepRow>& rows, Preset preset, Format format,
                         const Json& config, int target_digits) {
  if (format == Format::json) return json_text(sweep_json(rows, config, target_digits));
  const bool with_ratio = preset != Preset::custom;
  std::vector<std::vector<std::string>> cells;
  if (format == Format::csv) {
    std::vector<std::string> header{"g", "re", "im"};
    if (with_ratio) header.emplace_back("ratio");
    header.insert(header.end(), {"stable_digits_re", "stable_digits_im", "verdict"});
    cells.push_back(header);
    const int digits = target_digits + kExtraOutputDigits;
    for (const SweepRow& row : rows) {
      std::vector<std::string> line{render_rational(row.g)};
      if (row.ok()) {
        const SequenceReport& r = *row.report;
        line.push_back(real_text(r.final_root().energy.re(), digits));
        line.push_back(real_text(r.final_root().energy.im(), digits));
        if (with_ratio) line.push_back(row.ratio ? render_decimal(*row.ratio, 10) : std::string(kUndefined));
        line.push_back(std::to_string(r.stable_digits_re));
        line.push_back(std::to_string(r.stable_digits_im));
        line.emplace_back(verdict_name(r.verdict));
      } else {
        line.insert(line.end(), {"", ""});
        if (with_ratio) line.emplace_back(kUndefined);
        line.insert(line.end(), {"", "", "error: " + row.error});
      }
      cells.push_back(std::move(line));
    }
    return csv_lines(cells);
  }

  std::vector<std::string> header{"g", "Re E", "Im E"};
  if (with_ratio) header.emplace_back(ratio_header(preset));
  header.emplace_back("verdict");
  cells.push_back(header);
  for (const SweepRow& row : rows) {
    std::vector<std::string> line{render_decimal(Real(row.g, PrecisionContext::with_digits(20)), 20)};
    if (row.ok()) {
      const SequenceReport& r = *row.report;
      const Complex& e = r.final_root().energy;
      line.push_back(render_decimal(e.re(), shown_digits(r.stable_digits_re, target_digits),
                                    RenderMode::truncate));
      line.push_back(e.im().is_zero()
                         ? std::string("0")
                         : render_decimal(e.im(), shown_digits(r.stable_digits_im, target_digits),
                                          RenderMode::truncate));
      if (with_ratio) line.push_back(row.ratio ? render_decimal(*row.ratio, 10) : std::string(kUndefined));
      line.emplace_back(verdict_name(r.verdict));
    } else {
      line.insert(line.end(), {"", ""});
      if (with_ratio) line.emplace_back(kUndefined);
      line.push_back("error: " + row.error);
    }
    cells.push_back(std::move(line));
  }
  return problem_line(config) + "\n" + text_table(cells);
}

}  // namespace rpm::report
