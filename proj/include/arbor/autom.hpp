#pragma once

// Tree automorphisms given by wreath recursion. A Machine lists states, each
// with a root permutation and one section word per child; an Element is a
// word over states and their inverses.
//
// Conventions:
//   s(x w) = root_perm(s)(x) · section(s, x)(w)      (sections indexed by source)
//   (g h)(v) = g(h(v))                                (rightmost letter acts first)
//   section(g h, v) = section(g, h(v)) · section(h, v)

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/outcome.hpp"
#include "arbor/perm.hpp"
#include "arbor/tree.hpp"

namespace arbor {

class MachineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One letter of a word: a state or its formal inverse.
struct Letter {
  std::uint32_t state = 0;
  bool inverse = false;

  Letter inverted() const { return {state, !inverse}; }
  std::uint32_t code() const { return (state << 1) | (inverse ? 1u : 0u); }
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Cancels adjacent s·s⁻¹ pairs only; no other relation is assumed.
Word reduce(Word word);
Word invert(const Word& word);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

struct StateDef {
  std::string name;
  std::size_t offset = 0;
  Permutation root_perm;
  std::vector<Word> transitions;  // one per letter 1..degree(offset)
};

class Machine {
 public:
  /// Validates names, permutation sizes, transition counts and offsets.
  Machine(TreeShape shape, std::vector<StateDef> states);

  static std::shared_ptr<const Machine> make(TreeShape shape, std::vector<StateDef> states) {
    return std::make_shared<const Machine>(std::move(shape), std::move(states));
  }

  const TreeShape& shape() const { return shape_; }
  const std::vector<StateDef>& states() const { return states_; }
  const StateDef& state(std::uint32_t i) const { return states_.at(i); }
  std::size_t state_count() const { return states_.size(); }
  std::optional<std::uint32_t> find(std::string_view name) const;

  /// Parses a word such as "b c d", "bcd", "a*b^-1" or "alpha beta_r^-1".
  /// Tokens are matched greedily against state names; "1" and the empty
  /// string denote the identity, "^k" repeats a token (negative k inverts).
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& word) const;

  /// Inverse root permutation and inverted section words, precomputed.
  const Permutation& inverse_perm(std::uint32_t s) const { return inverse_perms_[s]; }
  const Word& inverse_transition(std::uint32_t s, std::uint32_t x) const {
    return inverse_transitions_[s][x];
  }

 private:
  TreeShape shape_;
  std::vector<StateDef> states_;
  std::vector<Permutation> inverse_perms_;
  std::vector<std::vector<Word>> inverse_transitions_;
  bool compact_names_ = true;
};

using MachinePtr = std::shared_ptr<const Machine>;

/// Greedy longest-match tokenizer shared by Machine::parse_word and
/// build_machine.
Word parse_word(const std::vector<std::string>& names, std::string_view text);

/// State description with transitions still written as text.
struct StateSpec {
  std::string name;
  std::size_t offset = 0;
  Permutation root_perm;
  std::vector<std::string> transitions;
};

MachinePtr build_machine(TreeShape shape, const std::vector<StateSpec>& specs);

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

class Element {
 public:
  Element(MachinePtr machine, Word word, std::size_t offset = 0);
  static Element identity(MachinePtr machine, std::size_t offset = 0);
  static Element parse(MachinePtr machine, std::string_view text, std::size_t offset = 0);
  static Element state(MachinePtr machine, std::string_view name);

  const MachinePtr& machine() const { return machine_; }
  const Word& word() const { return word_; }
  std::size_t offset() const { return offset_; }
  bool is_trivial_word() const { return word_.empty(); }
  std::string to_string() const { return machine_->format_word(word_); }

  /// Literal word equality (not group equality; see equals()).
  bool operator==(const Element& other) const {
    return machine_ == other.machine_ && offset_ == other.offset_ && word_ == other.word_;
  }

 private:
  MachinePtr machine_;
  Word word_;
  std::size_t offset_ = 0;
};

Permutation root_permutation(const Element& e);
Element section(const Element& e, const Vertex& v);
Vertex apply(const Element& e, const Vertex& v);
/// Permutation of L_n (relative to e's offset) in lexicographic indexing.
Permutation level_permutation(const Element& e, std::size_t level);
Element compose(const Element& g, const Element& h);
Element inverse(const Element& g);
Element power(const Element& g, std::int64_t k);

/// Exact identity test by breadth-first search over sections.
Verdict is_identity(const Element& e, std::size_t node_budget = kDefaultNodeBudget);
Verdict equals(const Element& g, const Element& h, std::size_t node_budget = kDefaultNodeBudget);
/// Same as equals() on g·h·g⁻¹·h⁻¹.
Verdict commutes(const Element& g, const Element& h, std::size_t node_budget = kDefaultNodeBudget);

/// Throws InconclusiveError when the budget runs out.
bool is_identity_strict(const Element& e, std::size_t node_budget = kDefaultNodeBudget);
bool equals_strict(const Element& g, const Element& h, std::size_t node_budget = kDefaultNodeBudget);

/// Minimal k ≤ bound with e^k = 1, if any.
SearchOutcome<std::size_t> bounded_order(const Element& e, std::size_t bound,
                                         std::size_t node_budget = kDefaultNodeBudget);

using Portrait = std::map<Vertex, Permutation>;

/// Root permutations of all sections at vertices of depth < depth.
Portrait portrait(const Element& e, std::size_t depth);

}  // namespace arbor
