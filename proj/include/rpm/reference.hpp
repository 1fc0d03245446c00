#pragma once

// Reference values for the g = 0.14 Hankel sequence of the
// triple well and the triple- and double-well sweeps, kept as the printed
// decimal strings, plus the digit-matching rules used to compare against them.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpm/apnum.hpp"
#include "rpm/solver.hpp"

namespace rpm::reference {

struct ConvergenceRow {
  int D;
  std::string_view re;
  /// "0" where the printed root is real.
  std::string_view im;
};

struct SweepRow {
  std::string_view g;
  std::string_view re;
  std::string_view im;
  std::string_view ratio;
};

/// Triple well, g = 0.14, d = 0, D = 2..15.
std::span<const ConvergenceRow> table1();
/// Triple well, 13 couplings.
std::span<const SweepRow> table2();
/// Double well, same couplings.
std::span<const SweepRow> table3();

/// Stable real part of table 1 at D = 13..15.
inline constexpr std::string_view kTable1StableRe = "0.96912932002717525629";
/// Significant digits required of table 1 imaginary parts.
inline constexpr int kTable1ImDigits = 12;

/// Significant digits in a printed decimal ("0.0392" has 3, "1.50e-3" has 3).
int printed_digits(std::string_view printed);

/// `value` matches `printed` on n significant digits (default: all printed
/// digits) when rounding both to n digits, or truncating both, gives the
/// same digit string and exponent. A printed "0" matches only an exact zero.
bool digits_match(const Real& value, std::string_view printed, std::optional<int> n = {});

/// Largest n <= printed_digits(printed) with digits_match(value, printed, n),
/// 0 when none.
int matching_digits(const Real& value, std::string_view printed);

/// One compared cell of a reproduced table.
struct CellCheck {
  std::string column;
  std::string printed;
  std::string computed;
  /// Digits the cell must match.
  int required_digits = 0;
  /// Leading digits that do match (see matching_digits).
  int matching = 0;
  bool pass = false;
};

struct RowCheck {
  std::string label;
  std::vector<CellCheck> cells;
  /// Solver failure for the row, if any.
  std::string error;

  bool pass() const;
};

/// Table 1 rules: Re to every printed digit (the stable value for D = 13..15),
/// Im exactly 0 for D = 2..4 and to kTable1ImDigits digits from D = 5.
std::vector<RowCheck> compare_table1(const SequenceReport& report);

/// Table 2 or 3: Re, Im and the truncated ratio column to every printed digit.
std::vector<RowCheck> compare_sweep(int table_id, const std::vector<rpm::SweepRow>& rows);

/// Couplings of tables 2 and 3 as exact rationals.
std::vector<Rational> sweep_couplings();

}  // namespace rpm::reference
