#pragma once

// Markov operators M_F = (1/2|F|) Σ (g + g⁻¹) on the levels of a tower,
// their spectra, and coverage of a target interval by the union of spectra.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbor/actions.hpp"

namespace arbor {

class SpectraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDenseCap = 4096;

struct MarkovMatrix {
  std::size_t level = 0;
  std::size_t size = 0;
  std::vector<double> entries;             // row-major, size × size
  std::vector<std::string> generating_set;  // F as words over the tower labels
  std::vector<bool> nontrivial;             // per word: acts nontrivially on this level

  double operator()(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
  double trace() const;
};

/// F holds words over the tower's generator labels, e.g. {"a", "b", "ab^-1"}.
MarkovMatrix markov_matrix(const LevelTower& tower, std::size_t level, const std::vector<std::string>& F);

/// All eigenvalues in ascending order (symmetric tridiagonalization and
/// implicit QL). Throws SpectraError above dense_cap.
std::vector<double> spectrum(const MarkovMatrix& m, std::size_t dense_cap = kDenseCap);

struct NestingResult {
  bool nested = false;
  double worst_gap = 0;  // max over level-n eigenvalues of the distance to level n+1
};

NestingResult nesting_check(const LevelTower& tower, const std::vector<std::string>& F, std::size_t level,
                            double tol);

struct SpectrumReport {
  std::vector<std::string> generating_set;
  std::map<std::size_t, std::vector<double>> levels;  // sorted eigenvalues per level

  /// Union over levels ≤ top (all levels by default), sorted.
  std::vector<double> union_values(std::size_t top = static_cast<std::size_t>(-1)) const;
  /// `level,index,value` rows with a header line.
  std::string to_csv() const;
};

SpectrumReport spectrum_report(const LevelTower& tower, const std::vector<std::string>& F, std::size_t first,
                               std::size_t last);

/// Largest distance from a point of [lo, hi] to the value set. Throws
/// SpectraError if the interval leaves [-1, 1] or the set is empty.
double interval_coverage(const std::vector<double>& values, double lo, double hi);
double interval_coverage(const SpectrumReport& report, double lo, double hi);

struct CoverageTrend {
  double lo = 0, hi = 0;
  std::vector<std::pair<std::size_t, double>> gaps;  // (top level, gap of union up to it)

  bool non_increasing() const;
  double final_gap() const { return gaps.empty() ? 0 : gaps.back().second; }
  std::string to_text() const;
};

CoverageTrend coverage_trend(const SpectrumReport& report, double lo, double hi);

}  // namespace arbor
