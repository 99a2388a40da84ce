#include "arbor/groupalg.hpp"

#include <algorithm>
#include <bit>
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

Permutation fingerprint(const Element& e) {
  const auto shape = e.machine()->shape().shifted(e.offset());
  std::size_t k = 1;
  while (k < 10 && shape.level_size(k + 1) <= 256) ++k;
  return level_permutation(e, k);
}

void require_machine(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.machine() != b.machine()) throw AlgebraError("algebra elements over different machines");
}

}  // namespace

AlgebraElement AlgebraElement::one(MachinePtr machine) {
  auto id = Element::identity(machine);
  return of(id);
}

AlgebraElement AlgebraElement::of(const Element& e, Rational coeff) {
  AlgebraElement a(e.machine());
  if (coeff != 0) a.terms_.push_back({std::move(coeff), e});
  return a;
}

AlgebraElement AlgebraElement::from_terms(MachinePtr machine, std::vector<Term> terms) {
  AlgebraElement a(std::move(machine));
  for (const auto& t : terms)
    if (t.element.machine() != a.machine_) throw AlgebraError("term over a different machine");
  a.terms_ = std::move(terms);
  a.normalized_ = a.terms_.empty();
  return a;
}

Normalization normalize(const AlgebraElement& raw, std::size_t node_budget) {
  struct Class {
    Rational coeff;
    std::size_t rep;  // raw index of the shortest word
    std::vector<std::size_t> members;
    Permutation fp;
  };
  const auto& terms = raw.terms();
  std::vector<Class> classes;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  std::size_t undecided = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto fp = fingerprint(terms[i].element);
    const auto h = perm_hash(fp);
    std::optional<std::size_t> home;
    for (auto c : buckets[h]) {
      if (classes[c].fp != fp) continue;
      const auto v = equals(terms[i].element, terms[classes[c].rep].element, node_budget);
      if (v == Verdict::kTrue) {
        home = c;
        break;
      }
      if (v == Verdict::kInconclusive) ++undecided;
    }
    if (!home) {
      buckets[h].push_back(classes.size());
      classes.push_back({0, i, {}, std::move(fp)});
      home = classes.size() - 1;
    }
    auto& cls = classes[*home];
    cls.coeff += terms[i].coeff;
    cls.members.push_back(i);
    if (terms[i].element.word().size() < terms[cls.rep].element.word().size()) cls.rep = i;
  }

  std::vector<Term> out;
  Normalization result{AlgebraElement(raw.machine()), {}, undecided};
  for (auto& cls : classes) {
    if (cls.coeff != 0) out.push_back({cls.coeff, terms[cls.rep].element});
    result.classes.push_back(std::move(cls.members));
  }
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.element.word() < b.element.word(); });
  result.value.terms_ = std::move(out);
  result.value.normalized_ = undecided == 0;
  return result;
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  require_machine(a, b);
  auto terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return normalize(AlgebraElement::from_terms(a.machine(), std::move(terms))).value;
}

AlgebraElement subtract(const AlgebraElement& a, const AlgebraElement& b) { return add(a, scale(b, -1)); }

AlgebraElement scale(const AlgebraElement& a, const Rational& q) {
  std::vector<Term> terms;
  if (q != 0)
    for (const auto& t : a.terms()) terms.push_back({t.coeff * q, t.element});
  return normalize(AlgebraElement::from_terms(a.machine(), std::move(terms))).value;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  require_machine(a, b);
  std::vector<Term> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) terms.push_back({s.coeff * t.coeff, compose(s.element, t.element)});
  return normalize(AlgebraElement::from_terms(a.machine(), std::move(terms))).value;
}

Verdict is_zero(const AlgebraElement& a) {
  const auto n = a.normalized() ? Normalization{a, {}, 0} : normalize(a);
  if (n.value.terms().empty()) return Verdict::kTrue;
  return n.undecided == 0 ? Verdict::kFalse : Verdict::kInconclusive;
}

Rational augmentation(const AlgebraElement& a) {
  Rational sum = 0;
  for (const auto& t : a.terms()) sum += t.coeff;
  return sum;
}

std::string to_string(const AlgebraElement& a) {
  if (a.terms().empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : a.terms()) {
    const bool negative = t.coeff < 0;
    const Rational magnitude = abs(t.coeff);
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    const bool unit = t.element.is_trivial_word();
    if (magnitude != 1 || unit) {
      out << magnitude.get_str();
      if (!unit) out << "*";
    }
    if (!unit) out << t.element.to_string();
  }
  return out.str();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> KernelProduct::odd_relations() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& cls : merged_subsets) {
    std::optional<std::uint64_t> even, odd;
    for (auto s : cls) {
      auto& slot = std::popcount(s) % 2 == 0 ? even : odd;
      if (!slot) slot = s;
    }
    if (even && odd) out.emplace_back(*even, *odd);
  }
  return out;
}

KernelProduct kernel_product(const std::vector<Element>& elements) {
  if (elements.empty()) throw AlgebraError("kernel_product: empty list");
  if (elements.size() > 20) throw AlgebraError("kernel_product: more than 20 factors");
  const auto machine = elements.front().machine();
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      const auto v = commutes(elements[i], elements[j]);
      if (v == Verdict::kInconclusive)
        throw InconclusiveError("kernel_product: commutation of factors " + std::to_string(i) + " and " +
                                std::to_string(j) + " undecided");
      if (v == Verdict::kFalse)
        throw AlgebraError("kernel_product: factors " + elements[i].to_string() + " and " +
                           elements[j].to_string() + " do not commute");
    }
  const std::uint64_t count = std::uint64_t{1} << elements.size();
  std::vector<Term> raw;
  raw.reserve(count);
  raw.push_back({1, Element::identity(machine, elements.front().offset())});
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const auto high = static_cast<std::size_t>(std::bit_width(mask) - 1);
    const auto rest = mask & ~(std::uint64_t{1} << high);
    raw.push_back({std::popcount(mask) % 2 ? -1 : 1, compose(raw[rest].element, elements[high])});
  }
  auto norm = normalize(AlgebraElement::from_terms(machine, std::move(raw)));
  KernelProduct kp{elements, std::move(norm.value), {}, static_cast<std::size_t>(count)};
  for (auto& cls : norm.classes) {
    std::vector<std::uint64_t> subsets(cls.begin(), cls.end());
    kp.merged_subsets.push_back(std::move(subsets));
  }
  return kp;
}

SearchOutcome<std::vector<Element>> independent_tuple_search(
    const std::vector<std::vector<Element>>& blocks, std::size_t bound, std::size_t closure_cap) {
  using Outcome = SearchOutcome<std::vector<Element>>;
  if (blocks.empty()) return Outcome::inconclusive("no blocks");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      for (const auto& g : blocks[i])
        for (const auto& h : blocks[j])
          if (commutes(g, h) != Verdict::kTrue)
            throw AlgebraError("independent_tuple_search: " + g.to_string() + " (block " + std::to_string(i) +
                               ") and " + h.to_string() + " (block " + std::to_string(j) +
                               ") are not known to commute");

  MachinePtr machine;
  for (const auto& b : blocks)
    if (!b.empty()) machine = b.front().machine();
  if (!machine) return Outcome::inconclusive("all blocks empty");

  std::vector<Element> closure{Element::identity(machine)};
  std::vector<Element> chosen;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::optional<Element> pick;
    std::size_t pick_order = 0;
    for (const auto& cand : blocks[i]) {
      const auto order = bounded_order(cand, bound);
      if (!order.is_certified()) continue;
      bool outside = true;
      for (const auto& h : closure) {
        const auto v = equals(cand, h);
        if (v != Verdict::kFalse) {
          outside = false;  // member, or membership undecided
          break;
        }
      }
      if (!outside) continue;
      pick = cand;
      pick_order = order.value();
      break;
    }
    if (!pick)
      return Outcome::inconclusive("block " + std::to_string(i) +
                                   " has no torsion candidate outside the group generated so far");
    // commuting torsion elements: <closure, g> = closure · {1, g, ..., g^(k-1)}
    std::vector<Element> grown = closure;
    Element gk = *pick;
    for (std::size_t k = 1; k < pick_order; ++k) {
      for (const auto& h : closure) {
        auto x = compose(h, gk);
        bool known = false;
        for (const auto& y : grown)
          if (equals(x, y) == Verdict::kTrue) {
            known = true;
            break;
          }
        if (!known) grown.push_back(std::move(x));
        if (grown.size() > closure_cap)
          return Outcome::inconclusive("closure exceeded " + std::to_string(closure_cap) + " elements");
      }
      gk = compose(gk, *pick);
    }
    closure = std::move(grown);
    chosen.push_back(std::move(*pick));
  }
  return Outcome::certified(std::move(chosen));
}

}  // namespace arbor
