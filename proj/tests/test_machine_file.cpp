#include "doctest.h"

#include <fstream>
#include <sstream>

#include "arbor/catalog.hpp"
#include "arbor/machine_file.hpp"

using namespace arbor;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(std::string_view text) {
  try {
    parse_machine(text);
  } catch (const MachineFileError& e) {
    return e.what();
  }
  return "";
}

const char* kOdometer = R"({
  "name": "odo",
  "shape": {"tail": [2]},
  "states": [{"name": "a", "perm": [2, 1], "transitions": ["", "a"]}]
})";

}  // namespace

TEST_CASE("odometer file") {
  const auto action = parse_machine(kOdometer);
  CHECK(action.name == "odo");
  REQUIRE(action.generators.size() == 1);
  CHECK(level_permutation(action.generators[0], 2).to_string() == "(1,3,2,4)");
}

TEST_CASE("cycle-string permutations") {
  const auto action = parse_machine(R"j({"name": "x", "shape": {"tail": [3]},
    "states": [{"name": "t", "perm": "(1,2,3)", "transitions": ["", "", "t"]}]})j");
  CHECK(level_permutation(action.generators[0], 1).to_string() == "(1,2,3)");
}

TEST_CASE("shipped catalog files agree with the catalog") {
  for (const auto& name : catalog::names()) {
    const auto text = read_file(std::string(ARBOR_MACHINES_DIR) + "/" + name + ".json");
    const auto file = parse_machine_file(text);
    const auto action = to_action(file);
    const auto& reference = catalog::by_name(name);
    CHECK(action.name == name);
    CHECK(action.shape() == reference.shape());
    REQUIRE(action.generators.size() == reference.generators.size());
    for (std::size_t i = 0; i < action.generators.size(); ++i)
      for (std::size_t n = 1; n <= 5; ++n)
        CHECK(level_permutation(action.generators[i], n) == level_permutation(reference.generators[i], n));
    CHECK(serialize(file) == text);
    CHECK(serialize(parse_machine_file(serialize(file))) == serialize(file));
  }
}

TEST_CASE("round trip from the catalog") {
  for (const auto& name : catalog::names()) {
    const auto file = machine_file_of(catalog::by_name(name), catalog::source(name));
    const auto again = parse_machine_file(serialize(file));
    CHECK(serialize(again) == serialize(file));
    CHECK(catalog::recursion_table(*to_action(again).machine) == catalog::recursion_table(*catalog::by_name(name).machine));
  }
}

TEST_CASE("diagnostics") {
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [2]},
    "states": [{"name": "a", "perm": [1, 1], "transitions": ["", ""]}]})") == "states[0].perm: not a permutation");
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [2]},
    "states": [{"name": "a", "perm": [2, 1], "transitions": ["", "q"]}]})")
            .starts_with("states[0].transitions[1]: unknown state"));
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [2]},
    "states": [{"name": "a", "perm": [2, 3, 1], "transitions": ["", "", ""]}]})")
            .starts_with("states[0].perm: shape mismatch"));
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [2]},
    "states": [{"name": "a", "perm": [2, 1], "transitions": [""]}]})")
            .starts_with("states[0].transitions: shape mismatch"));
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [2]},
    "states": [{"name": "a", "perm": [2, 1], "transitions": ["", ""]}], "generators": ["b"]})")
            .starts_with("generators[0]"));
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [2]},
    "states": [{"name": "a", "perm": [2, 1], "transitions": ["", ""]}], "relations": ["a"]})")
            == "relations[0]: 'a' does not act trivially");
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [2]}})") == "$: missing field 'states'");
  CHECK(error_of("{\"name\": \n 3").starts_with("syntax:"));
  CHECK(error_of(R"({"name": "x", "shape": {"tail": [0]}, "states": []})").starts_with("shape.tail[0]"));
}
