#pragma once

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "dart/errors.hpp"
#include "dart/io.hpp"
#include "dart/text.hpp"

namespace dart {

// One manually judged relation: three independent verdicts.
struct SheetRow {
  std::string relation;
  std::array<bool, 3> correct{};
};

// Sheet format: relation <TAB> v1 <TAB> v2 <TAB> v3 with each verdict either
// "correct" or "incorrect". Lines starting with '#' are comments.
inline std::vector<SheetRow> load_sheet(const std::string& path) {
  std::vector<SheetRow> rows;
  size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 4) {
      throw DataError(path + ":" + std::to_string(lineno) + ": expected 4 fields");
    }
    SheetRow row;
    row.relation = f[0];
    for (int i = 0; i < 3; ++i) {
      std::string v = lower_ascii(f[i + 1]);
      if (v == "correct") {
        row.correct[i] = true;
      } else if (v == "incorrect") {
        row.correct[i] = false;
      } else {
        throw DataError(path + ":" + std::to_string(lineno) + ": bad verdict '" + f[i + 1] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct AccuracyResult {
  size_t numCorrect = 0;  // rows all three judges marked correct
  size_t total = 0;
  double accuracy = 0.0;  // numCorrect / total, rounded to 2 decimals
};

inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

inline AccuracyResult evaluate_accuracy(const std::vector<SheetRow>& rows) {
  AccuracyResult r;
  r.total = rows.size();
  for (const SheetRow& row : rows) {
    if (row.correct[0] && row.correct[1] && row.correct[2]) ++r.numCorrect;
  }
  r.accuracy = r.total == 0
                   ? 0.0
                   : round2(static_cast<double>(r.numCorrect) / static_cast<double>(r.total));
  return r;
}

struct ComparisonRow {
  std::string system;
  std::string classPair;
  AccuracyResult result;
};

inline std::string format_accuracy(double accuracy) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << accuracy;
  return ss.str();
}

// Side-by-side accuracy table for two runs over the same class pair.
inline std::string format_comparison(const std::vector<ComparisonRow>& rows) {
  size_t sysW = 6, pairW = 10;
  for (const ComparisonRow& r : rows) {
    sysW = std::max(sysW, r.system.size());
    pairW = std::max(pairW, r.classPair.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(sysW) + 2) << "system"
      << std::setw(static_cast<int>(pairW) + 2) << "class-pair" << std::right << std::setw(9)
      << "correct" << std::setw(7) << "total" << std::setw(10) << "accuracy" << '\n';
  for (const ComparisonRow& r : rows) {
    out << std::left << std::setw(static_cast<int>(sysW) + 2) << r.system
        << std::setw(static_cast<int>(pairW) + 2) << r.classPair << std::right << std::setw(9)
        << r.result.numCorrect << std::setw(7) << r.result.total << std::setw(10)
        << format_accuracy(r.result.accuracy) << '\n';
  }
  return out.str();
}

}  // namespace dart
