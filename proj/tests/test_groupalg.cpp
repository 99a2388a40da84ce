#include "doctest.h"

#include <random>

#include "arbor/catalog.hpp"
#include "arbor/groupalg.hpp"
#include "support.hpp"

using namespace arbor;

namespace {

const MachinePtr& grig() { return catalog::grigorchuk().machine; }
const MachinePtr& ex6() { return catalog::example6().machine; }

AlgebraElement one_minus(const Element& g) {
  return subtract(AlgebraElement::one(g.machine()), AlgebraElement::of(g));
}

// Independent equality check: compare the action of both sides on every
// vertex of a deep level, coefficient by coefficient.
std::map<std::vector<std::uint32_t>, Rational> evaluate(const AlgebraElement& a, std::size_t level) {
  std::map<std::vector<std::uint32_t>, Rational> out;
  for (const auto& t : a.terms()) {
    auto key = level_permutation(t.element, level).one_line();
    out[key] += t.coeff;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  const auto a = Element::parse(grig(), "a");
  const auto b = Element::parse(grig(), "b");
  CHECK(to_string(multiply(one_minus(a), AlgebraElement::one(grig()))) == "1 - a");
  const auto plus = add(AlgebraElement::one(grig()), AlgebraElement::of(a));
  CHECK(is_zero(multiply(one_minus(a), plus)) == Verdict::kTrue);
  CHECK(is_zero(AlgebraElement::zero(grig())) == Verdict::kTrue);
  CHECK(to_string(AlgebraElement::zero(grig())) == "0");
  CHECK(is_zero(subtract(AlgebraElement::one(grig()), AlgebraElement::of(compose(a, a)))) == Verdict::kTrue);
  // b and c do not commute with a, but b and c commute with each other
  const auto c = Element::parse(grig(), "c");
  CHECK(to_string(multiply(one_minus(b), one_minus(c))) == "1 - b + bc - c");
  CHECK(augmentation(multiply(one_minus(b), one_minus(c))) == 0);
  CHECK(to_string(scale(one_minus(a), Rational(3, 2))) == "3/2 - 3/2*a");
  CHECK(to_string(scale(one_minus(a), -1)) == "-1 + a");
}

TEST_CASE("normal form merges equal group elements") {
  const auto raw = AlgebraElement::from_terms(
      grig(), {{1, Element::parse(grig(), "bc")}, {2, Element::parse(grig(), "d")}, {1, Element::parse(grig(), "cb")}});
  CHECK_FALSE(raw.normalized());
  const auto n = normalize(raw);
  REQUIRE(n.value.terms().size() == 1);
  CHECK(n.value.terms()[0].coeff == 4);
  CHECK(n.value.terms()[0].element.to_string() == "d");
  CHECK(n.classes.size() == 1);
  CHECK(n.value.normalized());
}

TEST_CASE("kernel_product basics") {
  const auto a = Element::parse(grig(), "a");
  CHECK(to_string(kernel_product({a}).value) == "1 - a");
  CHECK(is_zero(kernel_product({Element::identity(grig())}).value) == Verdict::kTrue);
  const auto aa = kernel_product({a, a});
  CHECK(to_string(aa.value) == "2 - 2*a");
  CHECK(aa.raw_terms == 4);
  CHECK_THROWS_AS(kernel_product({a, Element::parse(grig(), "b")}), AlgebraError);
  CHECK_THROWS_AS(kernel_product(std::vector<Element>(21, a)), AlgebraError);
}

TEST_CASE("kernel_product on the Klein four-group of example6") {
  const auto br = Element::parse(ex6(), "beta_r");
  const auto bl = Element::parse(ex6(), "alpha beta_r alpha^-1");
  const auto bm = Element::parse(ex6(), "alpha^2 beta_r alpha^-2");
  CHECK(level_permutation(bl, 1).to_string() == "(3,4)(5,6)");
  CHECK(level_permutation(bm, 1).to_string() == "(1,2)(5,6)");

  const auto pair = kernel_product({br, bl});
  CHECK(is_zero(pair.value) == Verdict::kFalse);
  CHECK(pair.value.terms().size() == 4);
  CHECK(pair.odd_relations().empty());

  // β_r β_l = β_m, so the triple product collapses
  const auto triple = kernel_product({br, bl, bm});
  CHECK(is_zero(triple.value) == Verdict::kTrue);
  const auto rel = triple.odd_relations();
  REQUIRE_FALSE(rel.empty());
  for (auto [s, t] : rel) {
    CHECK((std::popcount(s) + std::popcount(t)) % 2 == 1);
    Element lhs = Element::identity(ex6()), rhs = lhs;
    for (std::size_t i = 0; i < 3; ++i) {
      if (s >> i & 1) lhs = compose(lhs, triple.factors[i]);
      if (t >> i & 1) rhs = compose(rhs, triple.factors[i]);
    }
    CHECK(equals(lhs, rhs) == Verdict::kTrue);
  }
}

TEST_CASE("kernel_product of level-1 rigid witnesses") {
  const auto ball = enumerate_ball(catalog::grigorchuk(), 8);
  const auto g1 = rigid_stabilizer_search(ball, Vertex::parse("1"));
  const auto g2 = rigid_stabilizer_search(ball, Vertex::parse("2"));
  REQUIRE(g1.is_certified());
  REQUIRE(g2.is_certified());
  const auto kp = kernel_product({g1.value(), g2.value()});
  CHECK(kp.value.terms().size() == 4);
  CHECK(is_zero(kp.value) == Verdict::kFalse);

  const auto tuple = independent_tuple_search({{g1.value()}, {g2.value()}}, 16);
  REQUIRE(tuple.is_certified());
  CHECK(tuple.value().size() == 2);
}

TEST_CASE("independent_tuple_search") {
  const auto br = Element::parse(ex6(), "beta_r");
  const auto bl = Element::parse(ex6(), "alpha beta_r alpha^-1");
  const auto bm = Element::parse(ex6(), "alpha^2 beta_r alpha^-2");
  const auto t = independent_tuple_search({{br}, {br, bl, bm}}, 4);
  REQUIRE(t.is_certified());
  CHECK(t.value()[1].to_string() == bl.to_string());
  CHECK_FALSE(independent_tuple_search({{Element::identity(ex6())}}, 4).is_certified());
  CHECK_FALSE(independent_tuple_search({{br}, {br}}, 4).is_certified());
  // a third Klein-group element is already generated by the first two
  CHECK_FALSE(independent_tuple_search({{br}, {bl}, {bm}}, 4).is_certified());
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937 rng(7);
  const auto& action = catalog::grigorchuk();
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_element = [&] {
    std::vector<Term> terms;
    for (int i = 0; i < 3; ++i) terms.push_back({coeff(rng), testing::random_word(action, rng, 5)});
    return normalize(AlgebraElement::from_terms(grig(), terms)).value;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_element(), y = random_element(), z = random_element();
    const auto xy_z = multiply(multiply(x, y), z);
    const auto x_yz = multiply(x, multiply(y, z));
    CHECK(is_zero(subtract(xy_z, x_yz)) == Verdict::kTrue);
    CHECK(evaluate(xy_z, 8) == evaluate(x_yz, 8));
    const auto left = multiply(x, add(y, z));
    const auto right = add(multiply(x, y), multiply(x, z));
    CHECK(is_zero(subtract(left, right)) == Verdict::kTrue);
    CHECK(evaluate(left, 8) == evaluate(right, 8));
    CHECK(augmentation(multiply(x, y)) == augmentation(x) * augmentation(y));
  }
}
