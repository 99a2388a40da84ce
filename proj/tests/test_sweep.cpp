#include "doctest.h"

#include "arbor/acceptance.hpp"
#include "arbor/catalog.hpp"

using namespace arbor;

TEST_CASE("reduced word sweep counts and finds relations") {
  // 6 * 5^(k-1) reduced words of length k over three generators
  const auto aleshin = acceptance::reduced_word_sweep(catalog::aleshin(), 4);
  CHECK(aleshin.words == 6 + 30 + 150 + 750);
  CHECK(aleshin.identities.empty());
  CHECK(aleshin.undecided.empty());

  const auto grig = acceptance::reduced_word_sweep(catalog::grigorchuk(), 3);
  CHECK(grig.words == 8 + 8 * 7 + 8 * 49);
  // a a, b b, c c, d d and their inverse forms are among the identities
  CHECK(std::find(grig.identities.begin(), grig.identities.end(), "a a") != grig.identities.end());
  CHECK(std::find(grig.identities.begin(), grig.identities.end(), "d c b") != grig.identities.end());

  const auto odo = acceptance::reduced_word_sweep(catalog::odometer(), 6);
  CHECK(odo.words == 12);
  CHECK(odo.identities.empty());
}

TEST_CASE("criterion ids") {
  CHECK(acceptance::criterion_count() == 8);
  CHECK_THROWS(acceptance::run_criterion(0));
  const auto r = acceptance::run_criterion(2);
  CHECK(r.status == acceptance::Status::kPass);
  CHECK(acceptance::format_line(r).starts_with("PASS 2 "));
}

TEST_CASE("sweep words are read left to right") {
  // a b^-1 is an involution, so relations of length 4 exist; each printed
  // word must act trivially when parsed back as written
  const auto lamp = acceptance::reduced_word_sweep(catalog::lamplighter(), 4);
  for (const auto& w : lamp.identities) {
    const auto e = Element::parse(catalog::lamplighter().machine, w);
    CHECK(is_identity(e) == Verdict::kTrue);
  }
  CHECK_FALSE(lamp.identities.empty());
}
