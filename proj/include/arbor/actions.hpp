#pragma once

// Actions of finitely generated groups on rooted trees: level actions,
// Schreier graphs, stabilizers, bounded witness searches, and the
// correspondence between level-transitive actions and coset towers.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbor/autom.hpp"
#include "arbor/outcome.hpp"
#include "arbor/perm.hpp"
#include "arbor/tree.hpp"

namespace arbor {

class ActionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The group generated by `generators` (elements at offset 0) acting on the
/// machine's tree.
struct ActionSpec {
  std::string name;
  MachinePtr machine;
  std::vector<Element> generators;

  const TreeShape& shape() const { return machine->shape(); }
  std::vector<std::string> generator_labels() const;
};

/// Generators are parsed as words over the machine's states.
ActionSpec make_action(std::string name, MachinePtr machine, const std::vector<std::string>& generator_words);

struct SchreierGraph {
  std::size_t level = 0;
  std::vector<Vertex> vertices;       // L_n in lex order
  std::vector<std::string> labels;    // one per generator
  std::vector<Permutation> generators;
};

SchreierGraph schreier_graph(const ActionSpec& action, std::size_t level);
std::string to_dot(const SchreierGraph& graph);

bool is_level_transitive(const ActionSpec& action, std::size_t level);

/// Schreier generators of St_G(v), from the orbit of v on its level with a
/// breadth-first transversal. Elements that are provably trivial are dropped.
std::vector<Element> vertex_stabilizer_gens(const ActionSpec& action, const Vertex& v);

/// g(v) = v and the section of g at v is trivial.
Verdict fixes_subtree(const Element& e, const Vertex& v, std::size_t node_budget = kDefaultNodeBudget);

struct BallOptions {
  std::size_t max_elements = 250'000;
  std::size_t node_budget = 100'000;  // per equality test
};

struct Ball {
  std::vector<Element> elements;    // breadth-first order; elements[0] is the identity
  std::vector<std::size_t> length;  // word length over the generators
  std::size_t radius = 0;
  bool truncated = false;           // max_elements reached
  std::size_t undecided_merges = 0;  // equality tests that ran out of budget
};

/// Ball of the given radius in the word metric over generators and their
/// inverses, with duplicates removed by exact group equality.
Ball enumerate_ball(const ActionSpec& action, std::size_t radius, const BallOptions& options = {});

/// Nontrivial element acting trivially outside vT, i.e. in Rist_G(v).
SearchOutcome<Element> rigid_stabilizer_search(const ActionSpec& action, const Vertex& v,
                                               std::size_t radius);
SearchOutcome<Element> rigid_stabilizer_search(const Ball& ball, const Vertex& v);

/// A vertex moved by every nontrivial element of K, searched breadth-first
/// to the given depth.
SearchOutcome<Vertex> lsf_certificate(const ActionSpec& action, const std::vector<Element>& K,
                                      std::size_t depth);

/// Elements of K fixing v.
std::vector<Element> upsilon(const ActionSpec& action, const std::vector<Element>& K, const Vertex& v);

/// A tuple of `arity` vertices such that no nontrivial element of K fixes
/// all of them. Shorter greedy tuples are padded with the root.
SearchOutcome<std::vector<Vertex>> joint_free_tuple(const ActionSpec& action,
                                                    const std::vector<Element>& K,
                                                    std::size_t arity, std::size_t depth);

struct FixingSubset {
  std::vector<Vertex> subset;  // A(g) = {w ∈ L_n : g fixes wT}
  Element witness;
  bool fixes_level = false;    // g ∈ St_G(L_n)
};

/// Nontrivial ball element g maximizing |A(g)| > 0, preferring elements
/// that fix L_n on ties.
SearchOutcome<FixingSubset> fixing_subset_search(const ActionSpec& action, std::size_t level,
                                                 std::size_t radius);

/// A descending family of finite G-sets: level sizes, generator
/// permutations and parent maps, checked for equivariance.
struct TowerLevel {
  std::size_t size = 1;
  std::vector<Permutation> generators;
  std::vector<std::uint32_t> parent;  // empty at level 0
};

class TowerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LevelTower {
 public:
  /// Throws TowerError naming the level, generator and point of the first
  /// violated condition.
  explicit LevelTower(std::vector<TowerLevel> levels, std::vector<std::string> labels = {});

  const std::vector<TowerLevel>& levels() const { return levels_; }
  const TowerLevel& level(std::size_t n) const { return levels_.at(n); }
  std::size_t top() const { return levels_.size() - 1; }
  std::size_t generator_count() const { return levels_.front().generators.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<TowerLevel> levels_;
  std::vector<std::string> labels_;
};

/// Levels 0..depth of the action on the tree; parent = drop the last letter.
LevelTower tower_from_action(const ActionSpec& action, std::size_t depth);
LevelTower tower_from_tables(std::vector<TowerLevel> tables, std::vector<std::string> labels = {});

/// Level bijections commuting with generators and parent maps, if any.
/// Both towers must be transitive on every level.
std::optional<std::vector<Permutation>> tower_isomorphism(const LevelTower& a, const LevelTower& b);

/// [St(v_n) : St(v_{n+1})] for n < N along the leftmost ray v_n = 1…1.
std::vector<std::uint64_t> chain_indices(const ActionSpec& action, std::size_t levels);
/// Same indices computed purely on a tower, along the ray of points 0.
std::vector<std::uint64_t> chain_indices(const LevelTower& tower, std::size_t levels);

}  // namespace arbor
