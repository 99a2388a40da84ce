#include "arbor/actions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace arbor {

namespace {

std::size_t perm_hash(const Permutation& p) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto y : p.images()) {
    h ^= y;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// Deepest level with at most 256 vertices; used to bucket ball elements
// before exact equality tests.
std::size_t fingerprint_level(const TreeShape& shape) {
  std::size_t k = 1;
  while (k < 10 && shape.level_size(k + 1) <= 256) ++k;
  return k;
}

// Drops elements of K that are provably trivial. Inconclusive identity tests
// propagate as InconclusiveError.
std::vector<Element> nontrivial(const std::vector<Element>& K) {
  std::vector<Element> out;
  for (const auto& k : K) {
    const auto v = is_identity(k);
    if (v == Verdict::kInconclusive)
      throw InconclusiveError("identity test of " + k.to_string() + " exceeded node budget");
    if (v == Verdict::kFalse) out.push_back(k);
  }
  return out;
}

bool moves(const Element& k, const Vertex& v) { return apply(k, v) != v; }

// Breadth-first orbit of v under the generators, with transversal words.
struct Orbit {
  std::vector<Vertex> points;
  std::map<Vertex, std::size_t> index;
  std::vector<Element> transversal;  // transversal[i](v) = points[i]
};

Orbit vertex_orbit(const ActionSpec& action, const Vertex& v) {
  Orbit orbit;
  orbit.points.push_back(v);
  orbit.index.emplace(v, 0);
  orbit.transversal.push_back(Element::identity(action.machine));
  for (std::size_t i = 0; i < orbit.points.size(); ++i) {
    for (const auto& s : action.generators) {
      auto w = apply(s, orbit.points[i]);
      if (orbit.index.contains(w)) continue;
      orbit.index.emplace(w, orbit.points.size());
      orbit.points.push_back(w);
      orbit.transversal.push_back(compose(s, orbit.transversal[i]));
    }
  }
  return orbit;
}

std::size_t orbit_size(const std::vector<Permutation>& gens, std::uint32_t start, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> stack{start};
  seen[start] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      const auto y = g(x);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count;
}

}  // namespace

std::vector<std::string> ActionSpec::generator_labels() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.to_string());
  return out;
}

ActionSpec make_action(std::string name, MachinePtr machine,
                       const std::vector<std::string>& generator_words) {
  if (generator_words.empty()) throw ActionError("action '" + name + "' has no generators");
  ActionSpec spec{std::move(name), machine, {}};
  for (const auto& w : generator_words) {
    auto e = Element::parse(machine, w);
    if (e.offset() != 0)
      throw ActionError("generator '" + w + "' does not act at the root (level-offset " +
                        std::to_string(e.offset()) + ")");
    spec.generators.push_back(std::move(e));
  }
  return spec;
}

SchreierGraph schreier_graph(const ActionSpec& action, std::size_t level) {
  SchreierGraph g;
  g.level = level;
  g.vertices = level_vertices(action.shape(), level);
  g.labels = action.generator_labels();
  for (const auto& s : action.generators) g.generators.push_back(level_permutation(s, level));
  return g;
}

std::string to_dot(const SchreierGraph& graph) {
  std::ostringstream out;
  out << "digraph \"schreier_L" << graph.level << "\" {\n";
  for (const auto& v : graph.vertices) out << "  \"" << v.to_string() << "\";\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    for (std::size_t k = 0; k < graph.generators.size(); ++k)
      out << "  \"" << graph.vertices[i].to_string() << "\" -> \""
          << graph.vertices[graph.generators[k](static_cast<std::uint32_t>(i))].to_string()
          << "\" [label=\"" << graph.labels[k] << "\"];\n";
  out << "}\n";
  return out.str();
}

bool is_level_transitive(const ActionSpec& action, std::size_t level) {
  if (level == 0) return true;
  const auto g = schreier_graph(action, level);
  return orbit_size(g.generators, 0, g.vertices.size()) == g.vertices.size();
}

std::vector<Element> vertex_stabilizer_gens(const ActionSpec& action, const Vertex& v) {
  validate_vertex(action.shape(), v);
  const auto orbit = vertex_orbit(action, v);
  std::vector<Element> out;
  std::vector<Word> seen;
  for (std::size_t i = 0; i < orbit.points.size(); ++i) {
    for (const auto& s : action.generators) {
      const auto j = orbit.index.at(apply(s, orbit.points[i]));
      auto g = compose(inverse(orbit.transversal[j]), compose(s, orbit.transversal[i]));
      if (g.is_trivial_word() || is_identity(g) == Verdict::kTrue) continue;
      if (std::find(seen.begin(), seen.end(), g.word()) != seen.end()) continue;
      if (apply(g, v) != v)
        throw std::logic_error("vertex_stabilizer_gens: Schreier generator moves " + v.to_string());
      seen.push_back(g.word());
      out.push_back(std::move(g));
    }
  }
  return out;
}

Verdict fixes_subtree(const Element& e, const Vertex& v, std::size_t node_budget) {
  if (apply(e, v) != v) return Verdict::kFalse;
  return is_identity(section(e, v), node_budget);
}

Ball enumerate_ball(const ActionSpec& action, std::size_t radius, const BallOptions& options) {
  const auto fp_level = fingerprint_level(action.shape());
  std::vector<Element> letters;
  std::vector<Permutation> letter_fp;
  for (const auto& g : action.generators) {
    for (auto x : {g, inverse(g)}) {
      letter_fp.push_back(level_permutation(x, fp_level));
      letters.push_back(std::move(x));
    }
  }

  Ball ball;
  ball.radius = radius;
  std::vector<Permutation> fps;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  auto add = [&](Element e, Permutation fp, std::size_t len) {
    buckets[perm_hash(fp)].push_back(ball.elements.size());
    ball.elements.push_back(std::move(e));
    ball.length.push_back(len);
    fps.push_back(std::move(fp));
  };
  add(Element::identity(action.machine), Permutation::identity(action.shape().level_size(fp_level)), 0);

  std::size_t layer_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t layer_end = ball.elements.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (std::size_t k = 0; k < letters.size(); ++k) {
        auto cand = compose(ball.elements[i], letters[k]);
        auto fp = compose(fps[i], letter_fp[k]);
        bool duplicate = false;
        if (auto it = buckets.find(perm_hash(fp)); it != buckets.end()) {
          for (auto j : it->second) {
            if (fps[j] != fp) continue;
            const auto v = equals(cand, ball.elements[j], options.node_budget);
            if (v == Verdict::kTrue) {
              duplicate = true;
              break;
            }
            if (v == Verdict::kInconclusive) ++ball.undecided_merges;
          }
        }
        if (duplicate) continue;
        if (ball.elements.size() >= options.max_elements) {
          ball.truncated = true;
          return ball;
        }
        add(std::move(cand), std::move(fp), r);
      }
    }
    layer_begin = layer_end;
  }
  return ball;
}

SearchOutcome<Element> rigid_stabilizer_search(const Ball& ball, const Vertex& v) {
  if (ball.elements.empty()) return SearchOutcome<Element>::inconclusive("empty ball");
  const auto& shape = ball.elements.front().machine()->shape();
  validate_vertex(shape, v);
  const auto others = [&] {
    auto all = level_vertices(shape, v.depth());
    all.erase(std::remove(all.begin(), all.end(), v), all.end());
    return all;
  }();
  for (std::size_t i = 1; i < ball.elements.size(); ++i) {
    const auto& e = ball.elements[i];
    if (!level_permutation(e, v.depth()).is_identity()) continue;
    bool rigid = true;
    for (const auto& w : others)
      if (is_identity(section(e, w)) != Verdict::kTrue) {
        rigid = false;
        break;
      }
    if (rigid && is_identity(e) == Verdict::kFalse) return SearchOutcome<Element>::certified(e);
  }
  return SearchOutcome<Element>::inconclusive(
      "no element of Rist(" + v.to_string() + ") in ball of radius " + std::to_string(ball.radius) +
      " (" + std::to_string(ball.elements.size()) + " elements" + (ball.truncated ? ", truncated" : "") +
      ")");
}

SearchOutcome<Element> rigid_stabilizer_search(const ActionSpec& action, const Vertex& v,
                                               std::size_t radius) {
  if (radius < 1) throw std::invalid_argument("rigid_stabilizer_search: radius must be at least 1");
  return rigid_stabilizer_search(enumerate_ball(action, radius), v);
}

SearchOutcome<Vertex> lsf_certificate(const ActionSpec& action, const std::vector<Element>& K,
                                      std::size_t depth) {
  const auto moving = nontrivial(K);
  for (std::size_t n = 0; n <= depth; ++n) {
    for (const auto& v : level_vertices(action.shape(), n)) {
      if (std::all_of(moving.begin(), moving.end(), [&](const Element& k) { return moves(k, v); }))
        return SearchOutcome<Vertex>::certified(v);
    }
  }
  return SearchOutcome<Vertex>::inconclusive("no vertex of depth <= " + std::to_string(depth) +
                                             " is moved by all " + std::to_string(moving.size()) +
                                             " nontrivial elements");
}

std::vector<Element> upsilon(const ActionSpec& action, const std::vector<Element>& K, const Vertex& v) {
  validate_vertex(action.shape(), v);
  std::vector<Element> out;
  for (const auto& k : K)
    if (!moves(k, v)) out.push_back(k);
  return out;
}

SearchOutcome<std::vector<Vertex>> joint_free_tuple(const ActionSpec& action,
                                                    const std::vector<Element>& K,
                                                    std::size_t arity, std::size_t depth) {
  if (arity < 1) throw std::invalid_argument("joint_free_tuple: arity must be at least 1");
  auto unresolved = nontrivial(K);
  std::vector<Vertex> candidates;
  for (std::size_t n = 0; n <= depth; ++n)
    for (auto& v : level_vertices(action.shape(), n)) candidates.push_back(std::move(v));

  std::vector<Vertex> tuple;
  while (!unresolved.empty()) {
    const auto& k = unresolved.front();
    // among the vertices k moves, take the one moving the most unresolved elements
    std::optional<Vertex> best;
    std::size_t best_count = 0;
    for (const auto& v : candidates) {
      if (!moves(k, v)) continue;
      const auto count = static_cast<std::size_t>(std::count_if(
          unresolved.begin(), unresolved.end(), [&](const Element& u) { return moves(u, v); }));
      if (count > best_count) {
        best = v;
        best_count = count;
      }
    }
    if (!best)
      return SearchOutcome<std::vector<Vertex>>::inconclusive(
          k.to_string() + " moves no vertex of depth <= " + std::to_string(depth));
    tuple.push_back(*best);
    std::erase_if(unresolved, [&](const Element& u) { return moves(u, *best); });
    if (tuple.size() > arity)
      return SearchOutcome<std::vector<Vertex>>::inconclusive("greedy tuple needs more than " +
                                                              std::to_string(arity) + " vertices");
  }
  while (tuple.size() < arity) tuple.push_back(Vertex::root());
  return SearchOutcome<std::vector<Vertex>>::certified(std::move(tuple));
}

SearchOutcome<FixingSubset> fixing_subset_search(const ActionSpec& action, std::size_t level,
                                                 std::size_t radius) {
  if (level < 1 || radius < 1)
    throw std::invalid_argument("fixing_subset_search: level and radius must be at least 1");
  const auto ball = enumerate_ball(action, radius);
  const auto vertices = level_vertices(action.shape(), level);
  std::optional<FixingSubset> best;
  for (std::size_t i = 1; i < ball.elements.size(); ++i) {
    const auto& g = ball.elements[i];
    if (is_identity(g) != Verdict::kFalse) continue;
    FixingSubset cand{{}, g, level_permutation(g, level).is_identity()};
    for (const auto& w : vertices)
      if (fixes_subtree(g, w) == Verdict::kTrue) cand.subset.push_back(w);
    if (cand.subset.empty()) continue;
    const bool better = !best || cand.subset.size() > best->subset.size() ||
                        (cand.subset.size() == best->subset.size() && cand.fixes_level && !best->fixes_level);
    if (better) best = std::move(cand);
  }
  if (!best)
    return SearchOutcome<FixingSubset>::inconclusive(
        "no nontrivial element of the radius-" + std::to_string(radius) + " ball fixes a subtree at level " +
        std::to_string(level));
  return SearchOutcome<FixingSubset>::certified(std::move(*best));
}

LevelTower::LevelTower(std::vector<TowerLevel> levels, std::vector<std::string> labels)
    : levels_(std::move(levels)), labels_(std::move(labels)) {
  if (levels_.empty()) throw TowerError("tower has no levels");
  const auto count = levels_.front().generators.size();
  if (labels_.empty())
    for (std::size_t k = 0; k < count; ++k) labels_.push_back("g" + std::to_string(k + 1));
  if (labels_.size() != count) throw TowerError("tower: label count differs from generator count");
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    const auto& L = levels_[n];
    const std::string at = "level " + std::to_string(n);
    if (L.size == 0) throw TowerError(at + ": empty level");
    if (L.generators.size() != count) throw TowerError(at + ": wrong number of generators");
    for (std::size_t k = 0; k < count; ++k)
      if (L.generators[k].size() != L.size)
        throw TowerError(at + ", generator " + labels_[k] + ": permutation size " +
                         std::to_string(L.generators[k].size()) + " != level size " + std::to_string(L.size));
    if (n == 0) {
      if (!L.parent.empty()) throw TowerError(at + ": the bottom level has no parent map");
      continue;
    }
    const auto& P = levels_[n - 1];
    if (L.parent.size() != L.size) throw TowerError(at + ": parent map has wrong length");
    if (L.size % P.size != 0) throw TowerError(at + ": size is not a multiple of the level below");
    std::vector<std::size_t> fiber(P.size, 0);
    for (std::size_t x = 0; x < L.size; ++x) {
      if (L.parent[x] >= P.size)
        throw TowerError(at + ", point " + std::to_string(x) + ": parent out of range");
      ++fiber[L.parent[x]];
    }
    for (std::size_t y = 0; y < P.size; ++y)
      if (fiber[y] != L.size / P.size)
        throw TowerError(at + ": parent map is not " + std::to_string(L.size / P.size) +
                         "-to-1 (point " + std::to_string(y) + " of level " + std::to_string(n - 1) +
                         " has " + std::to_string(fiber[y]) + " preimages)");
    for (std::size_t k = 0; k < count; ++k)
      for (std::uint32_t x = 0; x < L.size; ++x)
        if (L.parent[L.generators[k](x)] != P.generators[k](L.parent[x]))
          throw TowerError(at + ", generator " + labels_[k] + ", point " + std::to_string(x) +
                           ": parent(g·x) != g·parent(x)");
  }
}

LevelTower tower_from_action(const ActionSpec& action, std::size_t depth) {
  std::vector<TowerLevel> levels;
  for (std::size_t n = 0; n <= depth; ++n) {
    TowerLevel L;
    L.size = action.shape().level_size(n);
    for (const auto& g : action.generators) L.generators.push_back(level_permutation(g, n));
    if (n > 0) {
      const auto d = action.shape().degree(n - 1);
      L.parent.resize(L.size);
      for (std::size_t x = 0; x < L.size; ++x) L.parent[x] = static_cast<std::uint32_t>(x / d);
    }
    levels.push_back(std::move(L));
  }
  return LevelTower(std::move(levels), action.generator_labels());
}

LevelTower tower_from_tables(std::vector<TowerLevel> tables, std::vector<std::string> labels) {
  return LevelTower(std::move(tables), std::move(labels));
}

std::optional<std::vector<Permutation>> tower_isomorphism(const LevelTower& a, const LevelTower& b) {
  if (a.levels().size() != b.levels().size() || a.generator_count() != b.generator_count())
    return std::nullopt;
  for (std::size_t n = 0; n <= a.top(); ++n)
    if (a.level(n).size != b.level(n).size) return std::nullopt;
  const auto top = a.top();
  const auto& A = a.level(top);
  const auto& B = b.level(top);
  for (std::uint32_t image = 0; image < B.size; ++image) {
    // orbit map at the top level, determined by the image of point 0
    std::vector<std::int64_t> map(A.size, -1);
    map[0] = image;
    std::vector<std::uint32_t> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      const auto x = stack.back();
      stack.pop_back();
      for (std::size_t k = 0; k < A.generators.size() && ok; ++k) {
        const auto y = A.generators[k](x);
        const auto fy = B.generators[k](static_cast<std::uint32_t>(map[x]));
        if (map[y] < 0) {
          map[y] = fy;
          stack.push_back(y);
        } else if (map[y] != fy) {
          ok = false;
        }
      }
    }
    if (!ok || std::count(map.begin(), map.end(), -1) > 0) continue;
    std::vector<std::vector<std::uint32_t>> maps(top + 1);
    maps[top].assign(map.begin(), map.end());
    for (std::size_t n = top; n > 0 && ok; --n) {
      std::vector<std::int64_t> lower(a.level(n - 1).size, -1);
      for (std::size_t x = 0; x < a.level(n).size && ok; ++x) {
        const auto px = a.level(n).parent[x];
        const std::int64_t py = b.level(n).parent[maps[n][x]];
        if (lower[px] < 0)
          lower[px] = py;
        else if (lower[px] != py)
          ok = false;
      }
      maps[n - 1].assign(lower.begin(), lower.end());
    }
    if (!ok) continue;
    std::vector<Permutation> result;
    try {
      for (auto& m : maps) result.emplace_back(m);
    } catch (const PermutationError&) {
      continue;
    }
    bool equivariant = true;
    for (std::size_t n = 0; n <= top && equivariant; ++n)
      for (std::size_t k = 0; k < a.generator_count() && equivariant; ++k)
        equivariant = compose(result[n], a.level(n).generators[k]) ==
                      compose(b.level(n).generators[k], result[n]);
    if (equivariant) return result;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> chain_indices(const ActionSpec& action, std::size_t levels) {
  for (std::size_t n = 1; n <= levels; ++n)
    if (!is_level_transitive(action, n))
      throw ActionError("chain_indices: action '" + action.name + "' is not transitive on level " +
                        std::to_string(n));
  std::vector<std::uint64_t> out;
  Vertex v;
  for (std::size_t n = 0; n < levels; ++n) {
    const auto gens = vertex_stabilizer_gens(action, v);
    const auto next = v.child(1);
    std::vector<Permutation> perms;
    for (const auto& g : gens) perms.push_back(level_permutation(g, n + 1));
    const auto size = action.shape().level_size(n + 1);
    out.push_back(orbit_size(perms, static_cast<std::uint32_t>(vertex_rank(action.shape(), next)), size));
    v = next;
  }
  return out;
}

std::vector<std::uint64_t> chain_indices(const LevelTower& tower, std::size_t levels) {
  if (levels > tower.top()) throw TowerError("chain_indices: tower has only " + std::to_string(tower.top()) + " levels");
  std::vector<std::uint64_t> out;
  std::uint32_t x = 0;
  for (std::size_t n = 0; n < levels; ++n) {
    const auto& L = tower.level(n);
    const auto& U = tower.level(n + 1);
    if (orbit_size(L.generators, x, L.size) != L.size)
      throw TowerError("chain_indices: tower is not transitive on level " + std::to_string(n));
    // transversal of the orbit of x at level n, stored as level-(n+1) permutations
    std::vector<std::optional<Permutation>> transversal(L.size);
    transversal[x] = Permutation::identity(U.size);
    std::deque<std::uint32_t> queue{x};
    while (!queue.empty()) {
      const auto y = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < L.generators.size(); ++k) {
        const auto z = L.generators[k](y);
        if (transversal[z]) continue;
        transversal[z] = compose(U.generators[k], *transversal[y]);
        queue.push_back(z);
      }
    }
    std::vector<Permutation> schreier;
    for (std::uint32_t y = 0; y < L.size; ++y)
      for (std::size_t k = 0; k < L.generators.size(); ++k) {
        auto g = compose(transversal[L.generators[k](y)]->inverse(), compose(U.generators[k], *transversal[y]));
        if (!g.is_identity()) schreier.push_back(std::move(g));
      }
    std::uint32_t next = 0;
    while (U.parent[next] != x) ++next;
    out.push_back(orbit_size(schreier, next, U.size));
    x = next;
  }
  return out;
}

}  // namespace arbor
