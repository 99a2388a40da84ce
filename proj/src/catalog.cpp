#include "arbor/catalog.hpp"

#include <gmpxx.h>

#include <deque>
#include <set>
#include <sstream>

namespace arbor::catalog {

namespace {

Permutation swap2() { return Permutation::from_cycles(2, {{1, 2}}); }

void require_trivial(const ActionSpec& action, std::string_view word) {
  const auto e = Element::parse(action.machine, word);
  if (!is_identity_strict(e))
    throw std::logic_error("catalog '" + action.name + "': relation " + std::string(word) +
                           " = 1 fails; recursion table is wrong");
}

void require_commute(const ActionSpec& action, std::string_view g, std::string_view h) {
  const auto x = Element::parse(action.machine, g);
  const auto y = Element::parse(action.machine, h);
  if (commutes(x, y) != Verdict::kTrue)
    throw std::logic_error("catalog '" + action.name + "': " + std::string(g) + " and " +
                           std::string(h) + " do not commute");
}

ActionSpec build_odometer() {
  auto m = build_machine(TreeShape::regular(2), {{"a", 0, swap2(), {"", "a"}}});
  return make_action("odometer", m, {"a"});
}

ActionSpec build_grigorchuk() {
  const auto id = Permutation::identity(2);
  auto m = build_machine(TreeShape::regular(2), {
                                                    {"a", 0, swap2(), {"", ""}},
                                                    {"b", 0, id, {"a", "c"}},
                                                    {"c", 0, id, {"a", "d"}},
                                                    {"d", 0, id, {"", "b"}},
                                                });
  auto action = make_action("grigorchuk", m, {"a", "b", "c", "d"});
  for (auto rel : {"aa", "bb", "cc", "dd", "bcd"}) require_trivial(action, rel);
  return action;
}

ActionSpec build_lamplighter() {
  auto m = build_machine(TreeShape::regular(2), {
                                                    {"a", 0, swap2(), {"a", "b"}},
                                                    {"b", 0, Permutation::identity(2), {"a", "b"}},
                                                });
  return make_action("lamplighter", m, {"a", "b"});
}

ActionSpec build_aleshin() {
  auto m = build_machine(TreeShape::regular(2), {
                                                    {"a", 0, swap2(), {"b", "c"}},
                                                    {"b", 0, swap2(), {"c", "b"}},
                                                    {"c", 0, Permutation::identity(2), {"a", "a"}},
                                                });
  return make_action("aleshin", m, {"a", "b", "c"});
}

ActionSpec build_example6() {
  const std::vector<std::string> trivial(6, "");
  auto m = build_machine(TreeShape({6}, {2}), {
                                                  {"alpha", 0, alpha(), trivial},
                                                  {"beta_r", 0, beta_r(), trivial},
                                                  {"sbar", 0, Permutation::identity(6), std::vector<std::string>(6, "s")},
                                                  {"s", 1, swap2(), {"", "s"}},
                                              });
  auto action = make_action("example6", m, {"alpha", "beta_r", "sbar"});
  require_trivial(action, "alpha^3");
  require_trivial(action, "beta_r^2");
  require_commute(action, "sbar", "alpha");
  require_commute(action, "sbar", "beta_r");
  return action;
}

}  // namespace

const ActionSpec& odometer() {
  static const ActionSpec spec = build_odometer();
  return spec;
}

const ActionSpec& grigorchuk() {
  static const ActionSpec spec = build_grigorchuk();
  return spec;
}

const ActionSpec& lamplighter() {
  static const ActionSpec spec = build_lamplighter();
  return spec;
}

const ActionSpec& aleshin() {
  static const ActionSpec spec = build_aleshin();
  return spec;
}

const ActionSpec& example6() {
  static const ActionSpec spec = build_example6();
  return spec;
}

std::vector<std::string> names() { return {"odometer", "grigorchuk", "lamplighter", "aleshin", "example6"}; }

const ActionSpec& by_name(std::string_view name) {
  if (name == "odometer") return odometer();
  if (name == "grigorchuk") return grigorchuk();
  if (name == "lamplighter") return lamplighter();
  if (name == "aleshin") return aleshin();
  if (name == "example6") return example6();
  throw ActionError("unknown catalog action '" + std::string(name) + "'");
}

std::string source(std::string_view name) {
  if (name == "odometer") return "adding machine; Z acting on Z/2^n by +1 at every level";
  if (name == "grigorchuk") return "first Grigorchuk group (intermediate growth, weakly branched)";
  if (name == "lamplighter") return "lamplighter group (Z/2)^(Z) x Z as an automaton group";
  if (name == "aleshin") return "Aleshin automaton generating a free group of rank 3";
  if (name == "example6") return "H + Z on T(6;2,2,...), H = <alpha, beta_r> = (Z/2+Z/2) x| Z/3";
  throw ActionError("unknown catalog action '" + std::string(name) + "'");
}

std::string recursion_table(const Machine& machine) {
  std::ostringstream out;
  const auto child_name = [&](const Word& w) { return machine.format_word(w); };
  for (const auto& st : machine.states()) {
    out << st.name << " = (";
    for (std::size_t x = 0; x < st.transitions.size(); ++x)
      out << (x ? ", " : "") << child_name(st.transitions[x]);
    out << ")";
    if (!st.root_perm.is_identity()) out << "\xC2\xB7" << st.root_perm.to_string();
    if (machine.shape().prefix().size() > 0) out << "    [level-offset " << st.offset << "]";
    out << "\n";
  }
  return out.str();
}

Permutation alpha() { return Permutation::from_cycles(6, {{1, 3, 5}, {2, 4, 6}}); }
Permutation beta_r() { return Permutation::from_cycles(6, {{1, 2}, {3, 4}}); }

std::vector<Permutation> enumerate_group(const std::vector<Permutation>& generators) {
  if (generators.empty()) throw std::invalid_argument("enumerate_group: no generators");
  const auto n = generators.front().size();
  if (n > 12) throw std::invalid_argument("enumerate_group: degree above 12");
  for (const auto& g : generators)
    if (g.size() != n) throw std::invalid_argument("enumerate_group: generators of different degree");
  std::vector<Permutation> elements{Permutation::identity(n)};
  std::set<Permutation> seen(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      auto h = compose(elements[i], g);
      if (seen.insert(h).second) elements.push_back(std::move(h));
    }
    if (elements.size() > 1'000'000) throw std::invalid_argument("enumerate_group: group too large");
  }
  return elements;
}

std::map<Permutation, int> fixed_point_character(const std::vector<Permutation>& group) {
  std::map<Permutation, int> chi;
  for (const auto& h : group) chi.emplace(h, static_cast<int>(h.fixed_points()));
  return chi;
}

std::size_t algebra_image_dimension(const std::vector<Permutation>& group, std::size_t degree) {
  if (group.size() > 4096) throw std::invalid_argument("algebra_image_dimension: |H| above 4096");
  const std::size_t cols = degree * degree;
  std::vector<std::vector<mpq_class>> rows;
  rows.reserve(group.size());
  for (const auto& h : group) {
    if (h.size() != degree) throw std::invalid_argument("algebra_image_dimension: degree mismatch");
    std::vector<mpq_class> row(cols, 0);
    for (std::uint32_t x = 0; x < degree; ++x) row[h(x) * degree + x] = 1;
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const mpq_class factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace arbor::catalog
