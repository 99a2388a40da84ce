#include "arbor/machine_file.hpp"

#include <json.hpp>

namespace arbor {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw MachineFileError(path + ": " + what);
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::vector<std::uint32_t> degree_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of degrees");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 1)
      fail(path + "[" + std::to_string(i) + "]", "degree must be a positive integer");
    out.push_back(j[i].get<std::uint32_t>());
  }
  return out;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

}  // namespace

MachineFile parse_machine_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MachineFileError(std::string("syntax: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "expected an object");
  MachineFile file;
  file.name = get_string(field(doc, "$", "name"), "name");
  if (doc.contains("source")) file.source = get_string(doc["source"], "source");

  const auto& shape = field(doc, "$", "shape");
  if (!shape.is_object()) fail("shape", "expected an object with 'prefix' and 'tail'");
  const auto prefix = shape.contains("prefix") ? degree_list(shape["prefix"], "shape.prefix") : std::vector<std::uint32_t>{};
  const auto tail = degree_list(field(shape, "shape", "tail"), "shape.tail");
  try {
    file.shape = TreeShape(prefix, tail);
  } catch (const std::exception& e) {
    fail("shape", e.what());
  }

  const auto& states = field(doc, "$", "states");
  if (!states.is_array() || states.empty()) fail("states", "expected a nonempty array");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto path = "states[" + std::to_string(i) + "]";
    const auto& st = states[i];
    if (!st.is_object()) fail(path, "expected an object");
    StateSpec spec;
    spec.name = get_string(field(st, path, "name"), path + ".name");
    if (st.contains("offset")) {
      if (!st["offset"].is_number_integer() || st["offset"].get<long long>() < 0)
        fail(path + ".offset", "expected a nonnegative integer");
      spec.offset = st["offset"].get<std::size_t>();
    }
    const auto degree = arbor::degree(file.shape, spec.offset);
    const auto& perm = field(st, path, "perm");
    try {
      if (perm.is_string()) {
        spec.root_perm = Permutation::parse_cycles(degree, perm.get<std::string>());
      } else if (perm.is_array()) {
        std::vector<std::uint32_t> one_line;
        for (const auto& x : perm) {
          if (!x.is_number_integer() || x.get<long long>() < 1) throw PermutationError("not a permutation");
          one_line.push_back(x.get<std::uint32_t>());
        }
        spec.root_perm = Permutation::from_one_line(one_line);
      } else {
        fail(path + ".perm", "expected a one-line list or a cycle string");
      }
    } catch (const PermutationError& e) {
      fail(path + ".perm", e.what());
    }
    if (spec.root_perm.size() != degree)
      fail(path + ".perm", "shape mismatch: permutation on " + std::to_string(spec.root_perm.size()) +
                               " points, degree at level offset " + std::to_string(spec.offset) + " is " +
                               std::to_string(degree));
    const auto& tr = field(st, path, "transitions");
    if (!tr.is_array()) fail(path + ".transitions", "expected an array of words");
    if (tr.size() != degree)
      fail(path + ".transitions", "shape mismatch: " + std::to_string(tr.size()) + " transitions, degree " +
                                      std::to_string(degree));
    for (std::size_t x = 0; x < tr.size(); ++x)
      spec.transitions.push_back(get_string(tr[x], path + ".transitions[" + std::to_string(x) + "]"));
    file.states.push_back(std::move(spec));
  }

  if (doc.contains("generators")) {
    const auto& gens = doc["generators"];
    if (!gens.is_array()) fail("generators", "expected an array of words");
    for (std::size_t i = 0; i < gens.size(); ++i)
      file.generators.push_back(get_string(gens[i], "generators[" + std::to_string(i) + "]"));
  } else {
    for (const auto& s : file.states)
      if (s.offset == 0) file.generators.push_back(s.name);
  }
  if (doc.contains("relations")) {
    const auto& rels = doc["relations"];
    if (!rels.is_array()) fail("relations", "expected an array of words");
    for (std::size_t i = 0; i < rels.size(); ++i)
      file.relations.push_back(get_string(rels[i], "relations[" + std::to_string(i) + "]"));
  }
  return file;
}

ActionSpec to_action(const MachineFile& file) {
  std::vector<std::string> names;
  for (const auto& s : file.states) names.push_back(s.name);
  for (std::size_t i = 0; i < file.states.size(); ++i)
    for (std::size_t x = 0; x < file.states[i].transitions.size(); ++x) {
      const auto path = "states[" + std::to_string(i) + "].transitions[" + std::to_string(x) + "]";
      try {
        parse_word(names, file.states[i].transitions[x]);
      } catch (const MachineError& e) {
        fail(path, std::string("unknown state in '") + file.states[i].transitions[x] + "': " + e.what());
      }
    }
  MachinePtr machine;
  try {
    machine = build_machine(file.shape, file.states);
  } catch (const std::exception& e) {
    fail("states", e.what());
  }
  for (std::size_t i = 0; i < file.generators.size(); ++i) {
    try {
      parse_word(names, file.generators[i]);
    } catch (const MachineError& e) {
      fail("generators[" + std::to_string(i) + "]", std::string("unknown state: ") + e.what());
    }
  }
  ActionSpec action;
  try {
    action = make_action(file.name, machine, file.generators);
  } catch (const std::exception& e) {
    fail("generators", e.what());
  }
  for (std::size_t i = 0; i < file.relations.size(); ++i) {
    const auto path = "relations[" + std::to_string(i) + "]";
    Element e = Element::identity(machine);
    try {
      e = Element::parse(machine, file.relations[i]);
    } catch (const MachineError& err) {
      fail(path, std::string("unknown state: ") + err.what());
    }
    const auto v = is_identity(e);
    if (v == Verdict::kFalse) fail(path, "'" + file.relations[i] + "' does not act trivially");
    if (v == Verdict::kInconclusive) fail(path, "'" + file.relations[i] + "' undecided within the node budget");
  }
  return action;
}

ActionSpec parse_machine(std::string_view text) { return to_action(parse_machine_file(text)); }

std::string serialize(const MachineFile& file) {
  nlohmann::ordered_json doc;
  doc["name"] = file.name;
  doc["source"] = file.source;
  doc["shape"] = {{"prefix", file.shape.prefix()}, {"tail", file.shape.tail()}};
  doc["states"] = nlohmann::ordered_json::array();
  for (const auto& s : file.states)
    doc["states"].push_back(nlohmann::ordered_json{{"name", s.name},
                                                   {"offset", s.offset},
                                                   {"perm", s.root_perm.one_line()},
                                                   {"transitions", s.transitions}});
  doc["generators"] = file.generators;
  if (!file.relations.empty()) doc["relations"] = file.relations;
  return doc.dump(2) + "\n";
}

MachineFile machine_file_of(const ActionSpec& action, std::string source) {
  MachineFile file{action.name, std::move(source), action.shape(), {}, {}, {}};
  const auto& m = *action.machine;
  for (const auto& st : m.states()) {
    StateSpec spec{st.name, st.offset, st.root_perm, {}};
    for (const auto& w : st.transitions) spec.transitions.push_back(w.empty() ? "" : m.format_word(w));
    file.states.push_back(std::move(spec));
  }
  for (const auto& g : action.generators) file.generators.push_back(g.to_string());
  return file;
}

}  // namespace arbor
