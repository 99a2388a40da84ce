#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "arbor/catalog.hpp"
#include "arbor/spectra.hpp"

using namespace arbor;

namespace {

// Cyclic Jacobi rotations: slow but independent of the library solver.
std::vector<double> jacobi_eigenvalues(const MarkovMatrix& m) {
  const std::size_t n = m.size;
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::size_t orbit_count(const LevelTower& tower, std::size_t level, const std::vector<std::size_t>& gens) {
  const auto& lv = tower.level(level);
  std::vector<std::size_t> parent(lv.size);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto g : gens)
    for (std::uint32_t x = 0; x < lv.size; ++x) parent[find(x)] = find(lv.generators[g](x));
  std::size_t count = 0;
  for (std::size_t x = 0; x < lv.size; ++x) count += find(x) == x;
  return count;
}

double max_error(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("markov matrix entries") {
  const auto tower = tower_from_action(catalog::grigorchuk(), 2);
  const auto m = markov_matrix(tower, 1, {"a", "b", "c", "d"});
  CHECK(m(0, 0) == doctest::Approx(6.0 / 8));
  CHECK(m(0, 1) == doctest::Approx(2.0 / 8));
  CHECK(m.nontrivial == std::vector<bool>{true, false, false, false});
  const auto odo = tower_from_action(catalog::odometer(), 1);
  const auto m1 = markov_matrix(odo, 1, {"a"});
  CHECK(m1(0, 1) == 1.0);
  CHECK(m1(0, 0) == 0.0);
  const auto s = spectrum(m1);
  CHECK(max_error(s, {-1, 1}) < 1e-12);
  CHECK(spectrum(markov_matrix(odo, 0, {"a"})) == std::vector<double>{1.0});
  CHECK_THROWS_AS(markov_matrix(odo, 1, {}), SpectraError);
  CHECK_THROWS_AS(markov_matrix(odo, 1, {"z"}), SpectraError);
  CHECK_THROWS_AS(spectrum(m, 1), SpectraError);

  // word generators: a^-1 a is trivial, a a acts as a 2-cycle square
  const auto w = markov_matrix(tower_from_action(catalog::odometer(), 3), 3, {"a^-1 a", "aa"});
  CHECK(w.nontrivial == std::vector<bool>{false, true});
}

TEST_CASE("odometer cosine oracle") {
  const auto tower = tower_from_action(catalog::odometer(), 8);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto size = std::size_t{1} << n;
    std::vector<double> expected;
    for (std::size_t k = 0; k < size; ++k) expected.push_back(std::cos(2 * std::numbers::pi * k / size));
    std::sort(expected.begin(), expected.end());
    CHECK(max_error(spectrum(markov_matrix(tower, n, {"a"})), expected) <= 1e-9);
  }
}

TEST_CASE("solver against Jacobi, trace and bounds") {
  for (const auto& name : catalog::names()) {
    const auto& action = catalog::by_name(name);
    const auto tower = tower_from_action(action, 4);
    const auto labels = action.generator_labels();
    for (std::size_t n = 0; n <= 4; ++n) {
      const auto m = markov_matrix(tower, n, labels);
      if (m.size > 200) continue;
      const auto ev = spectrum(m);
      CHECK(max_error(ev, jacobi_eigenvalues(m)) < 1e-9);
      CHECK(std::accumulate(ev.begin(), ev.end(), 0.0) == doctest::Approx(m.trace()).epsilon(1e-8));
      CHECK(ev.front() >= -1 - 1e-9);
      CHECK(ev.back() <= 1 + 1e-9);
      CHECK(ev.back() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("multiplicity of 1 counts orbits") {
  const auto tower = tower_from_action(catalog::grigorchuk(), 5);
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& F : std::vector<std::vector<std::string>>{{"b"}, {"a", "b"}, {"b", "c"}, {"ac"}}) {
      std::vector<std::size_t> gens;
      for (const auto& w : F)
        for (char ch : w) gens.push_back(static_cast<std::size_t>(ch - 'a'));
      const auto ev = spectrum(markov_matrix(tower, n, F));
      const auto ones = std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x - 1) < 1e-8; });
      // for the single word "ac" the orbits are those of the product, not of a and c
      if (F == std::vector<std::string>{"ac"}) {
        const auto& lv = tower.level(n);
        const auto p = compose(lv.generators[0], lv.generators[2]);
        std::size_t cycles = 0;
        std::vector<bool> seen(lv.size);
        for (std::uint32_t x = 0; x < lv.size; ++x) {
          if (seen[x]) continue;
          ++cycles;
          for (auto y = x; !seen[y]; y = p(y)) seen[y] = true;
        }
        CHECK(static_cast<std::size_t>(ones) == cycles);
      } else {
        CHECK(static_cast<std::size_t>(ones) == orbit_count(tower, n, gens));
      }
    }
}

TEST_CASE("nesting") {
  for (const auto& name : catalog::names()) {
    const auto& action = catalog::by_name(name);
    const auto tower = tower_from_action(action, 8);
    for (std::size_t n = 0; n <= 7; ++n) {
      const auto r = nesting_check(tower, action.generator_labels(), n, 1e-8);
      CHECK_MESSAGE(r.nested, name << " level " << n << " gap " << r.worst_gap);
    }
  }
  const auto odo = tower_from_action(catalog::odometer(), 6);
  CHECK(nesting_check(odo, {"a"}, 5, 1e-8).worst_gap <= 1e-9);
}

TEST_CASE("interval coverage") {
  CHECK(interval_coverage({-0.5, 0.5}, -0.5, 0.5) == doctest::Approx(0.5));
  CHECK(interval_coverage({0.0}, -1, 1) == doctest::Approx(1.0));
  CHECK(interval_coverage({-1, 0.2, 1}, -1, 1) == doctest::Approx(0.6));
  CHECK(interval_coverage({5.0}, 0, 0.5) == doctest::Approx(5.0));
  CHECK_THROWS_AS(interval_coverage({0.0}, -2, 1), SpectraError);
  CHECK_THROWS_AS(interval_coverage({0.0}, 0.5, 0.2), SpectraError);
  CHECK_THROWS_AS(interval_coverage(std::vector<double>{}, 0, 0.5), SpectraError);

  const auto odo = tower_from_action(catalog::odometer(), 10);
  const auto report = spectrum_report(odo, {"a"}, 1, 10);
  // cosines are spaced linearly near 0, so the widest hole is around 0:
  // half of sin(2π/1024)
  CHECK(interval_coverage(report, -1, 1) == doctest::Approx(std::sin(2 * std::numbers::pi / 1024) / 2).epsilon(1e-9));
  const auto trend = coverage_trend(report, -1, 1);
  CHECK(trend.gaps.size() == 10);
  CHECK(trend.non_increasing());
  CHECK(trend.final_gap() == interval_coverage(report, -1, 1));
}

TEST_CASE("csv") {
  const auto odo = tower_from_action(catalog::odometer(), 3);
  const auto csv = spectrum_report(odo, {"a"}, 1, 3).to_csv();
  CHECK(csv.rfind("level,index,value\n1,0,-1\n1,1,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 + 4 + 8);
}
