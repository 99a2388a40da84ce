#include "arbor/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "arbor/catalog.hpp"
#include "arbor/groupalg.hpp"
#include "arbor/reps.hpp"
#include "arbor/spectra.hpp"

namespace arbor::acceptance {

namespace {

struct Check {
  bool ok = true;
  bool inconclusive = false;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (ok) detail << "failed: ";
      else detail << "; ";
      detail << what;
      ok = false;
    }
  }
  void verdict(Verdict v, const std::string& what) {
    if (v == Verdict::kInconclusive) {
      inconclusive = true;
      detail << (ok ? "inconclusive: " : "; ") << what;
      ok = false;
      return;
    }
    require(v == Verdict::kTrue, what);
  }
  Status status() const { return ok ? Status::kPass : inconclusive ? Status::kInconclusive : Status::kFail; }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

void odometer_spectra(Check& c) {
  const auto tower = tower_from_action(catalog::odometer(), 10);
  double worst = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto size = std::size_t{1} << n;
    std::vector<double> expected;
    for (std::size_t k = 0; k < size; ++k) expected.push_back(std::cos(2 * std::numbers::pi * k / size));
    std::sort(expected.begin(), expected.end());
    const auto got = spectrum(markov_matrix(tower, n, {"a"}));
    for (std::size_t i = 0; i < size; ++i) worst = std::max(worst, std::abs(got[i] - expected[i]));
  }
  c.require(worst <= 1e-9, "max error " + fmt(worst) + " > 1e-9");
  if (c.ok) c.detail << "levels 1..10, max error " << fmt(worst);
}

void example_finite_part(Check& c) {
  const auto H = catalog::enumerate_group({catalog::alpha(), catalog::beta_r()});
  c.require(H.size() == 12, "|H| = " + std::to_string(H.size()));
  const auto chi = catalog::fixed_point_character(H);
  const std::vector<Permutation> betas = {catalog::beta_r(), Permutation::from_cycles(6, {{3, 4}, {5, 6}}),
                                          Permutation::from_cycles(6, {{1, 2}, {5, 6}})};
  int six = 0, two = 0, zero = 0;
  for (const auto& [h, value] : chi) {
    const bool is_beta = std::find(betas.begin(), betas.end(), h) != betas.end();
    if (h.is_identity()) {
      six += value == 6;
    } else if (is_beta) {
      two += value == 2;
    } else {
      zero += value == 0;
    }
  }
  c.require(six == 1 && two == 3 && zero == 8,
            "character table: 6 x" + std::to_string(six) + ", 2 x" + std::to_string(two) + ", 0 x" +
                std::to_string(zero));
  const auto dim = catalog::algebra_image_dimension(H, 6);
  c.require(dim == 12, "algebra image dimension " + std::to_string(dim));
  if (c.ok) c.detail << "|H| = 12, tau = (6, 2, 2, 2, 0 x8), image dimension 12";
}

void example_tree_part(Check& c) {
  const auto& action = catalog::example6();
  const auto br = Element::parse(action.machine, "beta_r");
  c.verdict(fixes_subtree(br, Vertex::parse("5")), "beta_r fixes subtree at 5");
  c.verdict(fixes_subtree(br, Vertex::parse("6")), "beta_r fixes subtree at 6");
  for (std::size_t n = 1; n <= 5; ++n)
    c.require(is_level_transitive(action, n), "not transitive on level " + std::to_string(n));
  const auto idx = chain_indices(action, 3);
  c.require(idx == std::vector<std::uint64_t>{6, 2, 2}, "chain indices " + join(idx));
  if (c.ok) c.detail << "beta_r fixes 5T and 6T, transitive to depth 5, chain indices " << join(idx);
}

void grigorchuk_kernel(Check& c) {
  const auto& action = catalog::grigorchuk();
  for (auto w : {"aa", "bb", "cc", "dd", "bcd"})
    c.verdict(is_identity(Element::parse(action.machine, w)), std::string(w) + " = 1");
  const auto order = bounded_order(Element::parse(action.machine, "ab"), 32);
  c.require(order.is_certified() && order.value() == 16,
            "order of ab: " + (order.is_certified() ? std::to_string(order.value()) : order.bounds()));

  const auto k1 = weakly_branched_kernel(action, 1, 8, 8);
  c.verdict(k1.nonzero, "n=1 kernel nonzero");
  c.require(vanishes_to_depth(k1.kernel, 8), "n=1 kernel vanishes to depth 8");
  c.require(k1.augmentation == 0, "n=1 augmentation 0");

  // level-2 rigid witnesses first appear at word length 16
  const auto k2 = weakly_branched_kernel(action, 2, 16, 4, 3);
  c.verdict(k2.nonzero, "n=2 kernel nonzero");
  c.verdict(k2.vanishing, "n=2 tensor power 3 vanishes to depth 4");
  if (c.ok)
    c.detail << "relations hold, |ab| = 16, n=1: " << k1.kernel.terms().size() << " terms, n=2: "
             << k2.kernel.terms().size() << " terms, both nonzero and vanishing";
}

void nesting(Check& c) {
  double worst = 0;
  for (const auto& name : catalog::names()) {
    const auto& action = catalog::by_name(name);
    const auto tower = tower_from_action(action, 8);
    for (std::size_t n = 0; n <= 7; ++n) {
      const auto r = nesting_check(tower, action.generator_labels(), n, 1e-8);
      worst = std::max(worst, r.worst_gap);
      c.require(r.nested, name + " level " + std::to_string(n) + " gap " + fmt(r.worst_gap));
    }
  }
  if (c.ok) c.detail << "5 actions, levels 0..7, worst gap " << fmt(worst);
}

std::vector<Element> nontrivial_ball(const ActionSpec& action, std::size_t radius) {
  auto ball = enumerate_ball(action, radius);
  return {ball.elements.begin() + 1, ball.elements.end()};
}

void lsf(Check& c) {
  const auto lamp = lsf_certificate(catalog::lamplighter(), nontrivial_ball(catalog::lamplighter(), 3), 10);
  const auto odo = lsf_certificate(catalog::odometer(), nontrivial_ball(catalog::odometer(), 3), 6);
  if (!lamp.is_certified()) c.verdict(Verdict::kInconclusive, "lamplighter: " + lamp.bounds());
  if (!odo.is_certified()) c.verdict(Verdict::kInconclusive, "odometer: " + odo.bounds());
  if (c.ok)
    c.detail << "lamplighter vertex " << lamp.value().to_string() << ", odometer vertex " << odo.value().to_string();
}

void aleshin_experiment(Check& c) {
  const auto& action = catalog::aleshin();
  const auto sweep = reduced_word_sweep(action, 10);
  c.require(sweep.identities.empty(),
            "identity word " + (sweep.identities.empty() ? std::string() : sweep.identities.front()));
  if (!sweep.undecided.empty()) c.verdict(Verdict::kInconclusive, "undecided word " + sweep.undecided.front());

  const auto tower = tower_from_action(action, 12);
  const auto level1 = spectrum(markov_matrix(tower, 1, {"a", "b", "c"}));
  c.require(std::abs(level1.back() - 1) < 1e-9, "1 missing from the level-1 spectrum");
  const auto report = spectrum_report(tower, {"a", "b", "c"}, 1, 12);
  const auto trend = coverage_trend(report, -1.0 / 3, std::sqrt(5.0) / 3);
  c.require(trend.non_increasing(), "coverage gap increased");
  c.require(trend.final_gap() <= kAleshinGapThreshold,
            "final gap " + fmt(trend.final_gap()) + " above " + fmt(kAleshinGapThreshold));
  if (c.ok)
    c.detail << sweep.words << " reduced words nontrivial (" << sweep.deep_checks
             << " by exact test), final gap " << fmt(trend.final_gap()) << " <= " << fmt(kAleshinGapThreshold);
}

void chain_round_trip(Check& c) {
  std::size_t checked = 0;
  for (const auto& name : catalog::names()) {
    const auto& action = catalog::by_name(name);
    bool transitive = true;
    for (std::size_t n = 1; n <= 5 && transitive; ++n) transitive = is_level_transitive(action, n);
    if (!transitive) continue;
    ++checked;
    const auto idx = chain_indices(tower_from_action(action, 5), 5);
    std::vector<std::uint64_t> degrees;
    for (std::size_t n = 0; n < 5; ++n) degrees.push_back(degree(action.shape(), n));
    c.require(idx == degrees, name + ": indices " + join(idx) + " vs degrees " + join(degrees));
  }
  c.require(checked == catalog::names().size(), "only " + std::to_string(checked) + " actions transitive");

  auto levels = tower_from_action(catalog::odometer(), 3).levels();
  levels[2].parent[0] = 1;
  std::string error;
  try {
    tower_from_tables(levels);
  } catch (const TowerError& e) {
    error = e.what();
  }
  c.require(error.find("level 2") != std::string::npos, "corrupted parent map not located: '" + error + "'");
  if (c.ok) c.detail << checked << " actions reproduce their degrees; corruption reported as: " << error;
}

struct Criterion {
  const char* title;
  double limit;
  void (*body)(Check&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"odometer spectra match cos(2 pi k / 2^n), n = 1..10", 30, odometer_spectra},
      {"example6 finite part: |H| = 12, fixed-point character, faithful", 5, example_finite_part},
      {"example6 tree part: fixed subtrees, transitivity, chain indices", 0, example_tree_part},
      {"grigorchuk relations, order of ab, kernel elements at n = 1, 2", 300, grigorchuk_kernel},
      {"spectral nesting for every catalog action, n <= 7", 300, nesting},
      {"l.s.f. certificates for lamplighter and odometer", 60, lsf},
      {"aleshin: reduced words <= 10 nontrivial, interval coverage", 900, aleshin_experiment},
      {"chain indices reproduce shape degrees; corrupted towers rejected", 0, chain_round_trip},
  };
  return list;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

WordSweep reduced_word_sweep(const ActionSpec& action, std::size_t max_length) {
  const auto& shape = action.shape();
  std::size_t level = 1;
  while (level < 8 && level_size(shape, level + 1) <= 64) ++level;
  const auto points = static_cast<std::size_t>(level_size(shape, level));

  // letters 2i and 2i+1 are generator i and its inverse
  std::vector<Element> letters;
  std::vector<std::vector<std::uint32_t>> perms;
  for (const auto& g : action.generators) {
    for (const auto& e : {g, inverse(g)}) {
      letters.push_back(e);
      perms.push_back(level_permutation(e, level).images());
    }
  }
  const auto alphabet = letters.size();
  std::vector<std::string> labels = action.generator_labels();

  WordSweep out;
  std::vector<std::size_t> word;  // word.back() is the leftmost letter
  std::vector<std::vector<std::uint32_t>> stack{Permutation::identity(points).images()};
  std::vector<std::size_t> next{0};

  auto text = [&](const std::vector<std::size_t>& w) {
    std::string s;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      s += (s.empty() ? "" : " ") + labels[*it / 2] + (*it % 2 ? "^-1" : "");
    return s;
  };

  // depth-first, extending words on the left so each step is one lookup per point
  while (!next.empty()) {
    auto& k = next.back();
    if (k == alphabet || stack.size() > max_length) {
      next.pop_back();
      stack.pop_back();
      if (!word.empty()) word.pop_back();
      continue;
    }
    const std::size_t letter = k++;
    if (!word.empty() && (letter ^ 1) == word.back()) continue;
    const auto& g = perms[letter];
    const auto& top = stack.back();
    std::vector<std::uint32_t> p(points);
    bool trivial = true;
    for (std::size_t x = 0; x < points; ++x) {
      p[x] = g[top[x]];
      trivial &= p[x] == x;
    }
    word.push_back(letter);
    ++out.words;
    if (trivial) {
      ++out.deep_checks;
      Element e = Element::identity(action.machine);
      for (auto letter_index : word) e = compose(letters[letter_index], e);
      const auto v = is_identity(e);
      if (v == Verdict::kTrue) out.identities.push_back(text(word));
      if (v == Verdict::kInconclusive) out.undecided.push_back(text(word));
    }
    stack.push_back(std::move(p));
    next.push_back(0);
  }
  return out;
}

int criterion_count() { return static_cast<int>(criteria().size()); }

Result run_criterion(int id) {
  if (id < 1 || id > criterion_count()) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const auto& crit = criteria()[static_cast<std::size_t>(id - 1)];
  Result r{id, crit.title, Status::kFail, "", 0, crit.limit};
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    crit.body(c);
  } catch (const InconclusiveError& e) {
    c.verdict(Verdict::kInconclusive, e.what());
  } catch (const std::exception& e) {
    c.require(false, std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (crit.limit > 0) c.require(r.seconds < crit.limit, "runtime " + fmt(r.seconds) + " s over " + fmt(crit.limit) + " s");
  r.status = c.status();
  r.detail = c.detail.str();
  return r;
}

std::vector<Result> run(const std::vector<int>& ids, const std::function<void(const Result&)>& report) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= criterion_count(); ++i) todo.push_back(i);
  std::vector<Result> out;
  for (int id : todo) {
    out.push_back(run_criterion(id));
    if (report) report(out.back());
  }
  return out;
}

std::string format_line(const Result& r) {
  std::ostringstream out;
  out << to_string(r.status) << " " << r.id << " " << r.title << " (" << fmt(r.seconds) << " s";
  if (r.limit_seconds > 0) out << ", limit " << fmt(r.limit_seconds) << " s";
  out << "): " << r.detail;
  return out.str();
}

}  // namespace arbor::acceptance
