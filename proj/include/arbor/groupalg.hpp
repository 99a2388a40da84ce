#pragma once

// Group algebra ℚG over tree automorphisms, and the kernel products
// M(g_0,...,g_N) = ∏ (1 - g_i).

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "arbor/autom.hpp"
#include "arbor/outcome.hpp"

namespace arbor {

using Rational = mpq_class;

struct Term {
  Rational coeff;
  Element element;
};

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Normalization;

/// Finite ℚ-linear combination of group elements. Arithmetic results are
/// normalized: equal group elements merged, zero coefficients dropped. When
/// an equality test runs out of budget the terms stay separate and the
/// element is flagged unnormalized.
class AlgebraElement {
 public:
  explicit AlgebraElement(MachinePtr machine) : machine_(std::move(machine)) {}
  static AlgebraElement zero(MachinePtr machine) { return AlgebraElement(std::move(machine)); }
  static AlgebraElement one(MachinePtr machine);
  static AlgebraElement of(const Element& e, Rational coeff = 1);
  /// Terms taken as given, without merging.
  static AlgebraElement from_terms(MachinePtr machine, std::vector<Term> terms);

  const MachinePtr& machine() const { return machine_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool normalized() const { return normalized_; }

 private:
  MachinePtr machine_;
  std::vector<Term> terms_;
  bool normalized_ = true;

  friend Normalization normalize(const AlgebraElement& raw, std::size_t node_budget);
};

/// Normal form together with the classes of raw term indices that were
/// merged into each surviving or cancelled group element.
struct Normalization {
  AlgebraElement value;
  std::vector<std::vector<std::size_t>> classes;
  std::size_t undecided = 0;  // equality tests that ran out of budget
};

Normalization normalize(const AlgebraElement& raw, std::size_t node_budget = kDefaultNodeBudget);

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement subtract(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(const AlgebraElement& a, const Rational& q);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/// Exact; Inconclusive only when normalization could not decide an equality.
Verdict is_zero(const AlgebraElement& a);

/// Sum of coefficients (image under the trivial representation).
Rational augmentation(const AlgebraElement& a);

/// "c*word" terms ordered by word, e.g. "1 - a - b + ab"; "0" when empty.
std::string to_string(const AlgebraElement& a);

struct KernelProduct {
  std::vector<Element> factors;
  AlgebraElement value;
  /// Subsets S ⊆ {0..N} (bit masks) whose products ∏_{i∈S} g_i were merged
  /// into one group element, one entry per class.
  std::vector<std::vector<std::uint64_t>> merged_subsets;
  std::size_t raw_terms = 0;

  /// Pairs (S, T) merged although |S| + |T| is odd. Each is a relation
  /// ∏_S g_i = ∏_T g_i of odd total length; a vanishing product has one.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> odd_relations() const;
};

/// ∏ (1 - g_i) for pairwise commuting g_i (checked; throws AlgebraError
/// otherwise). At most 20 factors.
KernelProduct kernel_product(const std::vector<Element>& elements);

/// Picks one candidate per block so that each pick lies outside the finite
/// group generated by the previous picks. Candidates must commute across
/// blocks and have order at most `bound`.
SearchOutcome<std::vector<Element>> independent_tuple_search(
    const std::vector<std::vector<Element>>& blocks, std::size_t bound,
    std::size_t closure_cap = 4096);

}  // namespace arbor
