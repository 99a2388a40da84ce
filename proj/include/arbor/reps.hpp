#pragma once

// The profinite representation ρ_T and its tensor powers, evaluated column
// by column on basis vectors δ_{z₁}⊗…⊗δ_{z_p} of bounded depth.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbor/actions.hpp"
#include "arbor/groupalg.hpp"

namespace arbor {

class RepsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite combination of basis tuples; zero coefficients are never stored.
class FormalVector {
 public:
  using Tuple = std::vector<Vertex>;

  void add(const Tuple& t, const Rational& c);
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Tuple, Rational>& coefficients() const { return coeffs_; }
  Rational at(const Tuple& t) const;
  std::string to_string() const;

  bool operator==(const FormalVector&) const = default;

 private:
  std::map<Tuple, Rational> coeffs_;
};

/// ρ(a)δ_v = Σ cᵢ δ_{gᵢ·v}.
FormalVector rho_apply(const AlgebraElement& a, const Vertex& v);
/// Diagonal action on δ_{z₁}⊗…⊗δ_{z_p}.
FormalVector rho_apply(const AlgebraElement& a, const std::vector<Vertex>& tuple);

/// ρ(a)δ_v = 0 for every vertex of depth ≤ depth.
bool vanishes_to_depth(const AlgebraElement& a, std::size_t depth);

inline constexpr std::size_t kDefaultTupleBudget = 10'000'000;

/// ρ^{⊗p}(a) vanishes on every p-tuple of vertices of depth ≤ depth.
/// Inconclusive when tuples × terms exceeds the budget.
Verdict tensor_vanishes_to_depth(const AlgebraElement& a, std::size_t p, std::size_t depth,
                                 std::size_t budget = kDefaultTupleBudget);

struct KernelReport {
  std::string action;
  std::size_t level = 0;
  std::size_t radius = 0;
  std::size_t depth = 0;
  std::vector<std::pair<Vertex, Element>> witnesses;  // g_v ∈ Rist(v), v ∈ L_n
  AlgebraElement kernel;                              // ∏ (1 - g_v)
  std::size_t raw_terms = 0;
  std::vector<std::string> nonzero_transcript;        // one line per v: φ_v(g_v)
  Verdict nonzero = Verdict::kInconclusive;           // is_zero(M) = false
  std::size_t power = 0;                              // |L_n| - 1
  Verdict vanishing = Verdict::kInconclusive;         // tensor power p, to `depth`
  Rational augmentation;

  bool passed() const { return nonzero == Verdict::kTrue && vanishing == Verdict::kTrue; }
  std::string to_text() const;
};

/// Builds M = ∏_{v∈L_n} (1 - g_v) from rigid witnesses found in the ball of
/// the given radius and checks it is nonzero and killed by ρ^{⊗(|L_n|-1)}
/// on tuples of depth ≤ depth. Throws RepsError naming the first vertex
/// without a witness. `power` overrides |L_n| - 1 when nonzero.
KernelReport weakly_branched_kernel(const ActionSpec& action, std::size_t level, std::size_t radius,
                                    std::size_t depth, std::size_t power = 0);

/// 0/1 matrix with P[g·x][x] = 1 for generator `index` on level n.
std::vector<std::vector<int>> level_matrix(const LevelTower& tower, std::size_t level, std::size_t index);

}  // namespace arbor
