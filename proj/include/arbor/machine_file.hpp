#pragma once

// JSON machine definitions:
//
//   {
//     "name": "odometer",
//     "source": "...",
//     "shape": {"prefix": [], "tail": [2]},
//     "states": [{"name": "a", "offset": 0, "perm": [2, 1], "transitions": ["", "a"]}],
//     "generators": ["a"]
//   }
//
// "perm" is a 1-based one-line list or a cycle string such as "(1,2)".
// "offset" defaults to 0 and "generators" to every state at offset 0. An
// optional "relations" list holds words that must act trivially; they are
// checked when the action is built.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/actions.hpp"

namespace arbor {

class MachineFileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MachineFile {
  std::string name;
  std::string source;
  TreeShape shape = TreeShape::regular(2);
  std::vector<StateSpec> states;
  std::vector<std::string> generators;
  std::vector<std::string> relations;  // words checked to act trivially
};

/// Syntax and field checks; messages start with the JSON path of the
/// offending field, e.g. "states[2].perm: not a permutation".
MachineFile parse_machine_file(std::string_view text);
/// Validates states and generators and builds the action.
ActionSpec to_action(const MachineFile& file);
ActionSpec parse_machine(std::string_view text);

std::string serialize(const MachineFile& file);
MachineFile machine_file_of(const ActionSpec& action, std::string source = {});

}  // namespace arbor
