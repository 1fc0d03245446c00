#include "rpm/reference.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace rpm::reference {

namespace {

constexpr std::array<ConvergenceRow, 14> kTable1{{
    {2, "0.96913474062929793208", "0"},
    {3, "0.96912933030952144688", "0"},
    {4, "0.96912932029284635448", "0"},
    {5, "0.96912932006642961226", "3.6781221743857153252e-10"},
    {6, "0.96912932002647227146", "3.3990326234127550889e-10"},
    {7, "0.96912932002710973379", "3.3801038698293392418e-10"},
    {8, "0.96912932002717289039", "3.3798079586780234680e-10"},
    {9, "0.96912932002717518442", "3.3798093143407212241e-10"},
    {10, "0.96912932002717525409", "3.3798095397280767486e-10"},
    {11, "0.96912932002717525622", "3.3798095479442123313e-10"},
    {12, "0.96912932002717525629", "3.3798095481219295624e-10"},
    {13, "0.96912932002717525629", "3.3798095481219029216e-10"},
    {14, "0.96912932002717525629", "3.3798095481216587093e-10"},
    {15, "0.96912932002717525629", "3.3798095481216435223e-10"},
}};

constexpr std::array<SweepRow, 13> kTable2{{
    {"0.08", "0.99025645954150600314", "1.16994e-32", "0.6362094894"},
    {"0.09", "0.98761765110834730415", "1.28623698e-25", "0.6700502315"},
    {"0.10", "0.98464158830285882643", "1.3513930260e-20", "0.7006574893"},
    {"0.12", "0.97763491479323529157", "4.3530125379031e-14", "0.7530467190"},
    {"0.14", "0.96912932002717525629", "3.37980954812164e-10", "0.7944913345"},
    {"0.16", "0.95896997046169207832", "1.0619001732959989e-7", "0.8253492417"},
    {"0.18", "0.94691604067745932355", "5.18077667159013113e-6", "0.8453084682"},
    {"0.20", "0.93255571582477452180", "7.94775543996767651e-5", "0.8530716514"},
    {"0.22", "0.91525354748034208273", "5.70253065914296141e-4", "0.8461088416"},
    {"0.24", "0.89442055320991452496", "2.424632840047890532e-3", "0.8222158493"},
    {"0.26", "0.87011531157430539225", "7.104058338260953225e-3", "0.7828715436"},
    {"0.28", "0.84333442392342060412", "1.5915859465250206010e-2", "0.7343132667"},
    {"0.30", "0.81560795814733914293", "2.9400216892153485663e-2", "0.6844475376"},
}};

constexpr std::array<SweepRow, 13> kTable3{{
    {"0.08", "0.99017315154568105030", "4.66667951e-22", "1.554541174"},
    {"0.09", "0.98748105548308533216", "2.3014736620e-17", "1.543296673"},
    {"0.10", "0.98442766976525540084", "5.1093948883947e-14", "1.530566484"},
    {"0.12", "0.97716020191841551216", "1.1063680213861671e-9", "1.500354438"},
    {"0.14", "0.96816424784205963513", "4.297124100601175228e-7", "1.463074727"},
    {"0.16", "0.95708500653988706061", "1.9606870293524100682e-5", "1.417112487"},
    {"0.18", "0.94328218799381038166", "2.5699864836055797687e-4", "1.35910675"},
    {"0.20", "0.92594246107314318252", "1.5440221243204925966e-3", "1.284707315"},
    {"0.22", "0.90482508551985951067", "5.5395017058573660278e-3", "1.193719284"},
    {"0.24", "0.88093011197386366807", "1.3978475279423154843e-2", "1.093828654"},
    {"0.26", "0.85613353763295142744", "2.767004146177769213e-2", "0.9964939951"},
    {"0.28", "0.83225989985769363726", "4.6300611971065823176e-2", "0.9104055713"},
    {"0.30", "0.81052712217939364397", "6.8908503646837670242e-2", "0.839251556"},
}};

// Enough digits to hold every printed value exactly.
PrecisionContext parse_context() { return PrecisionContext::with_digits(60); }

}  // namespace

std::span<const ConvergenceRow> table1() { return kTable1; }
std::span<const SweepRow> table2() { return kTable2; }
std::span<const SweepRow> table3() { return kTable3; }

int printed_digits(std::string_view printed) {
  int count = 0;
  bool leading = true;
  for (const char c : printed) {
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

// Digits of a printed value reduced to n significant digits in text, so the
// printed digits are never disturbed by a binary round trip.
static DecimalDigits printed_to(const Real& reference, std::string_view printed, int n, RenderMode mode) {
  DecimalDigits full = decimal_digits(reference, printed_digits(printed), RenderMode::nearest);
  if (n >= static_cast<int>(full.digits.size())) {
    full.digits.append(static_cast<std::size_t>(n) - full.digits.size(), '0');
    return full;
  }
  const bool round_up = mode == RenderMode::nearest && full.digits[static_cast<std::size_t>(n)] >= '5';
  full.digits.resize(static_cast<std::size_t>(n));
  if (round_up) {
    int i = n - 1;
    while (i >= 0 && full.digits[static_cast<std::size_t>(i)] == '9') {
      full.digits[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i >= 0) {
      ++full.digits[static_cast<std::size_t>(i)];
    } else {
      full.digits.insert(full.digits.begin(), '1');
      full.digits.pop_back();
      ++full.exponent;
    }
  }
  return full;
}

bool digits_match(const Real& value, std::string_view printed, std::optional<int> n) {
  const Real reference = parse_real(printed, parse_context());
  if (reference.is_zero()) return value.is_zero();
  if (value.is_zero()) return false;
  const int digits = std::max(1, n ? *n : printed_digits(printed));
  for (const RenderMode mode : {RenderMode::nearest, RenderMode::truncate}) {
    if (decimal_digits(value, digits, mode) == printed_to(reference, printed, digits, mode)) {
      return true;
    }
  }
  return false;
}

int matching_digits(const Real& value, std::string_view printed) {
  const Real reference = parse_real(printed, parse_context());
  if (reference.is_zero()) return value.is_zero() ? 1 : 0;
  for (int n = printed_digits(printed); n >= 1; --n) {
    if (digits_match(value, printed, n)) return n;
  }
  return 0;
}

namespace {

CellCheck check_cell(std::string column, const Real& value, std::string_view printed,
                     std::optional<int> required = {}) {
  CellCheck c;
  c.column = std::move(column);
  c.printed = std::string(printed);
  const int n = required ? *required : printed_digits(printed);
  c.required_digits = std::max(n, 1);
  c.computed = value.is_zero() ? std::string("0") : render_decimal(value, c.required_digits + 3);
  c.matching = matching_digits(value, printed);
  c.pass = digits_match(value, printed, required);
  return c;
}

}  // namespace

bool RowCheck::pass() const {
  if (!error.empty()) return false;
  for (const CellCheck& c : cells) {
    if (!c.pass) return false;
  }
  return !cells.empty();
}

std::vector<RowCheck> compare_table1(const SequenceReport& report) {
  std::vector<RowCheck> out;
  for (const ConvergenceRow& row : table1()) {
    RowCheck check;
    check.label = "D=" + std::to_string(row.D);
    const auto it = std::find_if(report.entries.begin(), report.entries.end(),
                                 [&](const rpm::SequenceEntry& e) { return e.D == row.D; });
    if (it == report.entries.end()) {
      check.error = "no entry for this D";
      out.push_back(std::move(check));
      continue;
    }
    const Complex& e = it->root.energy;
    check.cells.push_back(check_cell("re", e.re(), row.D >= 13 ? kTable1StableRe : row.re));
    if (row.im == "0") {
      check.cells.push_back(check_cell("im", e.im(), row.im));
    } else {
      check.cells.push_back(check_cell("im", e.im(), row.im, kTable1ImDigits));
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<RowCheck> compare_sweep(int table_id, const std::vector<rpm::SweepRow>& rows) {
  const auto ref = table_id == 2 ? table2() : table3();
  std::vector<RowCheck> out;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    RowCheck check;
    check.label = "g=" + std::string(ref[i].g);
    if (i >= rows.size() || !rows[i].ok()) {
      check.error = i < rows.size() ? rows[i].error : "missing row";
      out.push_back(std::move(check));
      continue;
    }
    const Complex& e = rows[i].report->final_root().energy;
    check.cells.push_back(check_cell("re", e.re(), ref[i].re));
    check.cells.push_back(check_cell("im", e.im(), ref[i].im));
    if (rows[i].ratio) {
      check.cells.push_back(check_cell("ratio", *rows[i].ratio, ref[i].ratio));
    } else {
      check.error = "ratio undefined";
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<Rational> sweep_couplings() {
  std::vector<Rational> g;
  for (const SweepRow& row : table2()) g.push_back(parse_rational(row.g));
  return g;
}

}  // namespace rpm::reference
