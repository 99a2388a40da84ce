#include "doctest.h"

#include "arbor/catalog.hpp"

using namespace arbor;
using namespace arbor::catalog;

namespace {
Element E(std::string_view w) { return Element::parse(example6().machine, w); }
}  // namespace

TEST_CASE("odometer") {
  const auto a = odometer().generators[0];
  CHECK(level_permutation(a, 1).to_string() == "(1,2)");
  CHECK(level_permutation(a, 2).to_string() == "(1,3,2,4)");
  for (std::size_t n = 1; n <= 8; ++n) CHECK(is_level_transitive(odometer(), n));
}

TEST_CASE("grigorchuk relations") {
  const auto& m = grigorchuk().machine;
  CHECK(is_identity(Element::parse(m, "aa")) == Verdict::kTrue);
  CHECK(is_identity(Element::parse(m, "bcd")) == Verdict::kTrue);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(is_level_transitive(grigorchuk(), n));
}

TEST_CASE("lamplighter") {
  const auto& m = lamplighter().machine;
  for (std::size_t n = 1; n <= 6; ++n) CHECK(is_level_transitive(lamplighter(), n));
  // b^(2^j) fixes the first 2^j levels, so high powers exhaust the budget;
  // either way the outcome is Inconclusive
  constexpr std::size_t budget = 20'000;
  CHECK_FALSE(bounded_order(Element::parse(m, "a"), 64, budget).is_certified());
  CHECK_FALSE(bounded_order(Element::parse(m, "b"), 64, budget).is_certified());
  // with sections read at the source letter, a·b⁻¹ has trivial sections: it is the lamp
  const auto lamp = bounded_order(Element::parse(m, "ab^-1"), 64);
  REQUIRE(lamp.is_certified());
  CHECK(lamp.value() == 2);
  CHECK_FALSE(bounded_order(Element::parse(m, "ab"), 64, budget).is_certified());
}

TEST_CASE("aleshin") {
  for (std::size_t n = 1; n <= 8; ++n) CHECK(is_level_transitive(aleshin(), n));
}

TEST_CASE("example6 generators") {
  CHECK(level_permutation(E("sbar"), 1).is_identity());
  CHECK(fixes_subtree(E("beta_r"), Vertex::parse("5")) == Verdict::kTrue);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(is_level_transitive(example6(), n));
  CHECK(commutes(E("sbar"), E("alpha")) == Verdict::kTrue);
  CHECK(commutes(E("sbar"), E("beta_r")) == Verdict::kTrue);
  CHECK(commutes(E("alpha"), E("beta_r")) == Verdict::kFalse);
  CHECK(level_permutation(E("alpha beta_r alpha^-1"), 1).to_string() == "(3,4)(5,6)");
  CHECK(level_permutation(E("alpha^2 beta_r alpha^-2"), 1).to_string() == "(1,2)(5,6)");
  for (std::size_t k = 1; k <= 4; ++k)
    CHECK(section(E("sbar"), Vertex({static_cast<std::uint32_t>(k)})).to_string() == "s");
}

TEST_CASE("finite group enumeration") {
  CHECK(enumerate_group({Permutation::from_cycles(2, {{1, 2}})}).size() == 2);
  CHECK(enumerate_group({alpha()}).size() == 3);
  const auto H = enumerate_group({alpha(), beta_r()});
  CHECK(H.size() == 12);
  CHECK_THROWS(enumerate_group({Permutation::identity(13)}));
}

TEST_CASE("fixed point character of H") {
  const auto H = enumerate_group({alpha(), beta_r()});
  const auto chi = fixed_point_character(H);
  CHECK(chi.at(Permutation::identity(6)) == 6);
  CHECK(chi.at(beta_r()) == 2);
  CHECK(chi.at(alpha()) == 0);
  const auto beta_l = compose(compose(alpha(), beta_r()), alpha().inverse());
  const auto beta_m = compose(compose(compose(alpha(), alpha()), beta_r()), compose(alpha(), alpha()).inverse());
  CHECK(beta_l.to_string() == "(3,4)(5,6)");
  CHECK(beta_m.to_string() == "(1,2)(5,6)");
  CHECK(compose(beta_r(), beta_l) == beta_m);
  int sixes = 0, twos = 0, zeros = 0;
  for (const auto& [h, value] : chi) {
    sixes += value == 6;
    twos += value == 2;
    zeros += value == 0;
    if (value == 2) CHECK((h == beta_r() || h == beta_l || h == beta_m));
  }
  CHECK(sixes == 1);
  CHECK(twos == 3);
  CHECK(zeros == 8);
}

TEST_CASE("algebra image dimension") {
  CHECK(algebra_image_dimension({Permutation::identity(1)}, 1) == 1);
  CHECK(algebra_image_dimension(enumerate_group({Permutation::from_cycles(2, {{1, 2}})}), 2) == 2);
  CHECK(algebra_image_dimension(enumerate_group({alpha(), beta_r()}), 6) == 12);
  // S_3 on 3 points misses the sign representation: 1 + 4 = 5 < 6
  const auto s3 = enumerate_group({Permutation::from_cycles(3, {{1, 2}}), Permutation::from_cycles(3, {{1, 2, 3}})});
  CHECK(s3.size() == 6);
  CHECK(algebra_image_dimension(s3, 3) == 5);
}

TEST_CASE("lookup and recursion tables") {
  CHECK(names().size() == 5);
  CHECK_THROWS_AS(by_name("nope"), ActionError);
  CHECK(recursion_table(*odometer().machine) == "a = (1, a)\xC2\xB7(1,2)\n");
  const auto table = recursion_table(*grigorchuk().machine);
  CHECK(table.find("b = (a, c)\n") != std::string::npos);
  CHECK(recursion_table(*example6().machine).find("sbar = (s, s, s, s, s, s)") != std::string::npos);
}
