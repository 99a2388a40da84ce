#include "arbor/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace arbor {

namespace {

Permutation word_permutation(const LevelTower& tower, std::size_t level, const Word& word) {
  const auto& lv = tower.level(level);
  Permutation p = Permutation::identity(lv.size);
  for (const auto& letter : word) {
    const auto& g = lv.generators.at(letter.state);
    p = compose(p, letter.inverse ? g.inverse() : g);
  }
  return p;
}

double distance_to(const std::vector<double>& sorted, double x) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double d = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) d = *it - x;
  if (it != sorted.begin()) d = std::min(d, x - *std::prev(it));
  return d;
}

}  // namespace

double MarkovMatrix::trace() const {
  double t = 0;
  for (std::size_t i = 0; i < size; ++i) t += (*this)(i, i);
  return t;
}

MarkovMatrix markov_matrix(const LevelTower& tower, std::size_t level, const std::vector<std::string>& F) {
  if (F.empty()) throw SpectraError("markov_matrix: empty generating set");
  if (level > tower.top()) throw SpectraError("markov_matrix: level " + std::to_string(level) + " beyond tower top");
  const auto n = tower.level(level).size;
  MarkovMatrix m{level, n, std::vector<double>(n * n, 0.0), F, {}};
  const double w = 1.0 / (2.0 * static_cast<double>(F.size()));
  for (const auto& text : F) {
    Word word;
    try {
      word = parse_word(tower.labels(), text);
    } catch (const MachineError& e) {
      throw SpectraError("markov_matrix: generating word '" + text + "': " + e.what());
    }
    const auto p = word_permutation(tower, level, word);
    m.nontrivial.push_back(!p.is_identity());
    for (std::uint32_t x = 0; x < n; ++x) {
      m.entries[p(x) * n + x] += w;
      m.entries[x * n + p(x)] += w;
    }
  }
  return m;
}

std::vector<double> spectrum(const MarkovMatrix& m, std::size_t dense_cap) {
  if (m.size > dense_cap)
    throw SpectraError("spectrum: size " + std::to_string(m.size) + " above dense cap " + std::to_string(dense_cap));
  if (m.size == 0) return {};
  auto a = m.entries;
  std::vector<double> w(m.size);
  const auto n = static_cast<lapack_int>(m.size);
  const auto info = LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data());
  if (info != 0)
    throw SpectraError("spectrum: eigensolver failed at level " + std::to_string(m.level) + " (info " +
                       std::to_string(info) + ": off-diagonal elements did not converge to zero)");
  return w;
}

NestingResult nesting_check(const LevelTower& tower, const std::vector<std::string>& F, std::size_t level,
                            double tol) {
  const auto lower = spectrum(markov_matrix(tower, level, F));
  const auto upper = spectrum(markov_matrix(tower, level + 1, F));
  NestingResult r{true, 0};
  for (double x : lower) r.worst_gap = std::max(r.worst_gap, distance_to(upper, x));
  r.nested = r.worst_gap <= tol;
  return r;
}

std::vector<double> SpectrumReport::union_values(std::size_t top) const {
  std::vector<double> out;
  for (const auto& [n, values] : levels)
    if (n <= top) out.insert(out.end(), values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string SpectrumReport::to_csv() const {
  std::string out = "level,index,value\n";
  char buf[64];
  for (const auto& [n, values] : levels)
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\n", n, i, values[i]);
      out += buf;
    }
  return out;
}

SpectrumReport spectrum_report(const LevelTower& tower, const std::vector<std::string>& F, std::size_t first,
                               std::size_t last) {
  if (first > last) throw SpectraError("spectrum_report: empty level range");
  SpectrumReport r{F, {}};
  for (std::size_t n = first; n <= last; ++n) r.levels[n] = spectrum(markov_matrix(tower, n, F));
  return r;
}

double interval_coverage(const std::vector<double>& values, double lo, double hi) {
  if (!(lo <= hi) || lo < -1 || hi > 1)
    throw SpectraError("interval_coverage: interval must lie inside [-1, 1] with lo <= hi");
  if (values.empty()) throw SpectraError("interval_coverage: empty eigenvalue set");
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  // distance to the set is a tent on each gap, so its maximum over [lo, hi]
  // sits at an endpoint or at a gap midpoint clamped into the interval
  double gap = std::max(distance_to(sorted, lo), distance_to(sorted, hi));
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double mid = std::clamp(0.5 * (sorted[i] + sorted[i + 1]), lo, hi);
    gap = std::max(gap, distance_to(sorted, mid));
  }
  return gap;
}

double interval_coverage(const SpectrumReport& report, double lo, double hi) {
  return interval_coverage(report.union_values(), lo, hi);
}

bool CoverageTrend::non_increasing() const {
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i].second > gaps[i - 1].second) return false;
  return true;
}

std::string CoverageTrend::to_text() const {
  std::ostringstream out;
  out.precision(10);
  out << "interval: [" << lo << ", " << hi << "]\n";
  for (const auto& [n, g] : gaps) out << "  levels <= " << n << ": max gap " << g << "\n";
  out << "non-increasing: " << (non_increasing() ? "yes" : "no") << "\n"
      << "final gap: " << final_gap() << "\n";
  return out.str();
}

CoverageTrend coverage_trend(const SpectrumReport& report, double lo, double hi) {
  CoverageTrend t{lo, hi, {}};
  for (const auto& [n, values] : report.levels) t.gaps.emplace_back(n, interval_coverage(report.union_values(n), lo, hi));
  return t;
}

}  // namespace arbor
