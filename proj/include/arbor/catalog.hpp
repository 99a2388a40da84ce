#pragma once

// Built-in actions and the finite permutation-group checks used for the
// six-point group H = <α, β_r>.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/actions.hpp"
#include "arbor/perm.hpp"

namespace arbor::catalog {

/// Adding machine a = (1, a)·(1 2) on the binary tree.
const ActionSpec& odometer();
/// a = (1,1)·σ, b = (a,c), c = (a,d), d = (1,b); relations checked on first use.
const ActionSpec& grigorchuk();
/// a = (a,b)·σ, b = (a,b).
const ActionSpec& lamplighter();
/// a = (b,c)·σ, b = (c,b)·σ, c = (a,a).
const ActionSpec& aleshin();
/// H ⊕ ℤ on T_{6,2,2,...}: alpha = α, beta_r = β_r with trivial sections,
/// sbar with every section equal to the odometer state s.
const ActionSpec& example6();

std::vector<std::string> names();
/// Throws ActionError for unknown names.
const ActionSpec& by_name(std::string_view name);
std::string source(std::string_view name);

/// "name = (s_1, ..., s_d)·perm", one line per state.
std::string recursion_table(const Machine& machine);

/// α = (1,3,5)(2,4,6) and β_r = (1,2)(3,4) on six points.
Permutation alpha();
Permutation beta_r();

/// Closure of the generators under composition (degree at most 12).
std::vector<Permutation> enumerate_group(const std::vector<Permutation>& generators);

/// Number of fixed points of each element.
std::map<Permutation, int> fixed_point_character(const std::vector<Permutation>& group);

/// Rank over ℚ of the permutation matrices of the group, flattened to
/// vectors; equals |H| iff the permutation representation spans the whole
/// group algebra.
std::size_t algebra_image_dimension(const std::vector<Permutation>& group, std::size_t degree);

}  // namespace arbor::catalog
