#pragma once

// Test-only helpers: seeded random words and an independent Grigorchuk
// evaluator that works directly on 0/1 strings.

#include <random>
#include <string>
#include <vector>

#include "arbor/actions.hpp"

namespace arbor::testing {

inline Element random_word(const ActionSpec& action, std::mt19937& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, action.generators.size() - 1);
  std::bernoulli_distribution flip(0.5);
  Element e = Element::identity(action.machine);
  for (std::size_t i = len(rng); i > 0; --i) {
    const auto& g = action.generators[pick(rng)];
    e = compose(e, flip(rng) ? inverse(g) : g);
  }
  return e;
}

// a flips the first bit; b = (a,c), c = (a,d), d = (1,b).
inline void naive_grigorchuk(char s, std::vector<int>& v, std::size_t from) {
  if (from >= v.size()) return;
  switch (s) {
    case 'a': v[from] ^= 1; return;
    case 'b': naive_grigorchuk(v[from] == 0 ? 'a' : 'c', v, from + 1); return;
    case 'c': naive_grigorchuk(v[from] == 0 ? 'a' : 'd', v, from + 1); return;
    case 'd': if (v[from] == 1) naive_grigorchuk('b', v, from + 1); return;
  }
}

// Word over {a,b,c,d} (all involutions), rightmost letter first.
inline std::vector<int> naive_grigorchuk_word(const std::string& word, std::vector<int> v) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) naive_grigorchuk(*it, v, 0);
  return v;
}

}  // namespace arbor::testing
