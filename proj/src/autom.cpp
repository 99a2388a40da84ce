#include "arbor/autom.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace arbor {

namespace {

void push_reduced(Word& out, Letter l) {
  if (!out.empty() && out.back() == l.inverted())
    out.pop_back();
  else
    out.push_back(l);
}

bool valid_name_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
}

struct Step {
  std::uint32_t image;
  Word section;
};

// Image of the top letter x (0-based) and the section at x, for a word at
// the given machine.
Step step(const Machine& m, const Word& w, std::uint32_t x) {
  std::vector<const Word*> parts;
  parts.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const auto& st = m.state(it->state);
    if (!it->inverse) {
      parts.push_back(&st.transitions[x]);
      x = st.root_perm(x);
    } else {
      x = m.inverse_perm(it->state)(x);
      parts.push_back(&m.inverse_transition(it->state, x));
    }
  }
  Word section;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it)
    for (const auto& l : **it) push_reduced(section, l);
  return {x, std::move(section)};
}

std::uint32_t root_image(const Machine& m, const Word& w, std::uint32_t x) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    x = it->inverse ? m.inverse_perm(it->state)(x) : m.state(it->state).root_perm(x);
  return x;
}

bool root_trivial(const Machine& m, const Word& w, std::size_t offset) {
  const auto d = m.shape().degree(offset);
  for (std::uint32_t x = 0; x < d; ++x)
    if (root_image(m, w, x) != x) return false;
  return true;
}

using LevelMemo = std::vector<std::unordered_map<Word, std::vector<std::uint32_t>, WordHash>>;

std::vector<std::uint32_t> level_images(const Machine& m, const Word& w, std::size_t offset,
                                        std::size_t n, LevelMemo& memo) {
  const auto& shape = m.shape();
  if (w.empty() || n == 0) {
    std::uint64_t size = 1;
    for (std::size_t j = 0; j < n; ++j) size *= shape.degree(offset + j);
    std::vector<std::uint32_t> id(size);
    for (std::uint64_t i = 0; i < size; ++i) id[i] = static_cast<std::uint32_t>(i);
    return id;
  }
  if (auto it = memo[n].find(w); it != memo[n].end()) return it->second;
  const auto d = shape.degree(offset);
  std::uint64_t sub_size = 1;
  for (std::size_t j = 1; j < n; ++j) sub_size *= shape.degree(offset + j);
  std::vector<std::uint32_t> images(d * sub_size);
  const auto next = shape.canonical_offset(offset + 1);
  for (std::uint32_t x = 0; x < d; ++x) {
    auto [y, sec] = step(m, w, x);
    const auto sub = level_images(m, sec, next, n - 1, memo);
    for (std::uint64_t u = 0; u < sub_size; ++u)
      images[x * sub_size + u] = static_cast<std::uint32_t>(y * sub_size + sub[u]);
  }
  memo[n].emplace(w, images);
  return images;
}

void require_same(const Element& g, const Element& h, const char* what) {
  if (g.machine() != h.machine()) throw MachineError(std::string(what) + ": elements of different machines");
  if (g.offset() != h.offset()) throw MachineError(std::string(what) + ": level-offset mismatch");
}

}  // namespace

Word reduce(Word word) {
  Word out;
  out.reserve(word.size());
  for (const auto& l : word) push_reduced(out, l);
  return out;
}

Word invert(const Word& word) {
  Word out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverted());
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& l : w) {
    h ^= l.code();
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Machine::Machine(TreeShape shape, std::vector<StateDef> states)
    : shape_(std::move(shape)), states_(std::move(states)) {
  if (states_.empty()) throw MachineError("machine has no states");
  const auto period = shape_.prefix().size() + shape_.tail().size();
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const auto& st = states_[i];
    const std::string where = "state '" + st.name + "'";
    if (st.name.empty() || !std::all_of(st.name.begin(), st.name.end(), valid_name_char))
      throw MachineError("invalid state name '" + st.name + "'");
    if (st.name == "1") throw MachineError("state name '1' is reserved for the identity");
    if (st.name.size() > 1 || std::isdigit(static_cast<unsigned char>(st.name[0])))
      compact_names_ = false;
    for (std::size_t j = 0; j < i; ++j)
      if (states_[j].name == st.name) throw MachineError("duplicate state name '" + st.name + "'");
    if (st.offset >= period)
      throw MachineError(where + ": level-offset " + std::to_string(st.offset) +
                         " is not canonical for shape " + shape_.to_string());
  }
  for (const auto& st : states_) {
    const std::string where = "state '" + st.name + "'";
    const auto d = shape_.degree(st.offset);
    if (st.root_perm.size() != d)
      throw MachineError(where + ": permutation acts on " + std::to_string(st.root_perm.size()) +
                         " points but degree at offset " + std::to_string(st.offset) + " is " +
                         std::to_string(d) + " (shape mismatch)");
    if (st.transitions.size() != d)
      throw MachineError(where + ": expected " + std::to_string(d) + " transitions, got " +
                         std::to_string(st.transitions.size()));
    const auto child_offset = shape_.canonical_offset(st.offset + 1);
    for (std::size_t x = 0; x < d; ++x)
      for (const auto& l : st.transitions[x]) {
        if (l.state >= states_.size())
          throw MachineError(where + ": transition " + std::to_string(x + 1) + " names unknown state");
        if (states_[l.state].offset != child_offset)
          throw MachineError(where + ": transition " + std::to_string(x + 1) + " uses state '" +
                             states_[l.state].name + "' at offset " +
                             std::to_string(states_[l.state].offset) + ", expected offset " +
                             std::to_string(child_offset));
      }
  }
  inverse_perms_.reserve(states_.size());
  inverse_transitions_.reserve(states_.size());
  for (auto& st : states_) {
    for (auto& t : st.transitions) t = reduce(std::move(t));
    inverse_perms_.push_back(st.root_perm.inverse());
    std::vector<Word> inv;
    for (const auto& t : st.transitions) inv.push_back(invert(t));
    inverse_transitions_.push_back(std::move(inv));
  }
}

std::optional<std::uint32_t> Machine::find(std::string_view name) const {
  for (std::uint32_t i = 0; i < states_.size(); ++i)
    if (states_[i].name == name) return i;
  return std::nullopt;
}

Word parse_word(const std::vector<std::string>& names, std::string_view text) {
  Word out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw MachineError("word '" + std::string(text) + "': " + why + " at position " + std::to_string(i));
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    if (static_cast<unsigned char>(ch) == 0xC2 && i + 1 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0xB7) {  // middle dot
      i += 2;
      continue;
    }
    std::optional<std::uint32_t> match;
    std::size_t match_len = 0;
    for (std::uint32_t s = 0; s < names.size(); ++s) {
      const auto& name = names[s];
      if (name.size() > match_len && text.substr(i, name.size()) == name) {
        match = s;
        match_len = name.size();
      }
    }
    std::int64_t exponent = 1;
    Word token;
    if (!match) {
      if (ch != '1') fail("unknown state");
      ++i;
    } else {
      token.push_back(Letter{*match, false});
      i += match_len;
    }
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool negative = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("bad exponent");
      std::int64_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        value = value * 10 + (text[i++] - '0');
      exponent = negative ? -value : value;
    }
    if (token.empty()) continue;
    const Letter l = exponent < 0 ? token[0].inverted() : token[0];
    for (std::int64_t k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) push_reduced(out, l);
  }
  return out;
}

Word Machine::parse_word(std::string_view text) const {
  std::vector<std::string> names;
  names.reserve(states_.size());
  for (const auto& st : states_) names.push_back(st.name);
  return arbor::parse_word(names, text);
}

MachinePtr build_machine(TreeShape shape, const std::vector<StateSpec>& specs) {
  std::vector<std::string> names;
  for (const auto& sp : specs) names.push_back(sp.name);
  std::vector<StateDef> states;
  for (const auto& sp : specs) {
    StateDef st{sp.name, sp.offset, sp.root_perm, {}};
    for (const auto& t : sp.transitions) st.transitions.push_back(parse_word(names, t));
    states.push_back(std::move(st));
  }
  return Machine::make(std::move(shape), std::move(states));
}

std::string Machine::format_word(const Word& word) const {
  if (word.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i && !compact_names_) out += '*';
    out += states_[word[i].state].name;
    if (word[i].inverse) out += "^-1";
  }
  return out;
}

Element::Element(MachinePtr machine, Word word, std::size_t offset)
    : machine_(std::move(machine)), word_(reduce(std::move(word))) {
  if (!machine_) throw MachineError("element without machine");
  offset_ = machine_->shape().canonical_offset(offset);
  for (const auto& l : word_) {
    if (l.state >= machine_->state_count()) throw MachineError("element names unknown state");
    if (machine_->state(l.state).offset != offset_)
      throw MachineError("element letter '" + machine_->state(l.state).name + "' lives at offset " +
                         std::to_string(machine_->state(l.state).offset) + ", element offset is " +
                         std::to_string(offset_));
  }
}

Element Element::identity(MachinePtr machine, std::size_t offset) {
  return Element(std::move(machine), {}, offset);
}

Element Element::parse(MachinePtr machine, std::string_view text, std::size_t offset) {
  auto word = machine->parse_word(text);
  if (!word.empty()) offset = machine->state(word[0].state).offset;
  return Element(std::move(machine), std::move(word), offset);
}

Element Element::state(MachinePtr machine, std::string_view name) {
  const auto s = machine->find(name);
  if (!s) throw MachineError("unknown state '" + std::string(name) + "'");
  const auto offset = machine->state(*s).offset;
  return Element(std::move(machine), {Letter{*s, false}}, offset);
}

Permutation root_permutation(const Element& e) {
  const auto& m = *e.machine();
  const auto d = m.shape().degree(e.offset());
  std::vector<std::uint32_t> images(d);
  for (std::uint32_t x = 0; x < d; ++x) images[x] = root_image(m, e.word(), x);
  return Permutation(std::move(images));
}

Element section(const Element& e, const Vertex& v) {
  const auto& m = *e.machine();
  validate_vertex(m.shape(), v, e.offset());
  Word w = e.word();
  std::size_t offset = e.offset();
  for (std::size_t j = 0; j < v.depth(); ++j) {
    w = step(m, w, v[j] - 1).section;
    offset = m.shape().canonical_offset(offset + 1);
  }
  return Element(e.machine(), std::move(w), offset);
}

Vertex apply(const Element& e, const Vertex& v) {
  const auto& m = *e.machine();
  validate_vertex(m.shape(), v, e.offset());
  std::vector<std::uint32_t> out(v.depth());
  Word w = e.word();
  for (std::size_t j = 0; j < v.depth(); ++j) {
    if (w.empty()) {
      out[j] = v[j];
      continue;
    }
    auto [y, sec] = step(m, w, v[j] - 1);
    out[j] = y + 1;
    w = std::move(sec);
  }
  return Vertex(std::move(out));
}

Permutation level_permutation(const Element& e, std::size_t level) {
  const auto& m = *e.machine();
  if (level > m.shape().max_depth())
    throw TreeError("level " + std::to_string(level) + " exceeds MAX_DEPTH");
  if (m.shape().shifted(e.offset()).level_size(level) > 0xFFFFFFFFull)
    throw TreeError("level_permutation: level too large to tabulate");
  LevelMemo memo(level + 1);
  return Permutation(level_images(m, e.word(), e.offset(), level, memo));
}

Element compose(const Element& g, const Element& h) {
  require_same(g, h, "compose");
  Word w = g.word();
  w.insert(w.end(), h.word().begin(), h.word().end());
  return Element(g.machine(), std::move(w), g.offset());
}

Element inverse(const Element& g) { return Element(g.machine(), invert(g.word()), g.offset()); }

Element power(const Element& g, std::int64_t k) {
  const Word base = k < 0 ? invert(g.word()) : g.word();
  Word w;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) w.insert(w.end(), base.begin(), base.end());
  return Element(g.machine(), std::move(w), g.offset());
}

Verdict is_identity(const Element& e, std::size_t node_budget) {
  if (e.word().empty()) return Verdict::kTrue;
  const auto& m = *e.machine();
  const auto& shape = m.shape();
  // Every word in the queue carries the level offset of its first letter.
  std::unordered_set<Word, WordHash> visited;
  std::deque<Word> queue;
  visited.insert(e.word());
  queue.push_back(e.word());
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    const auto offset = m.state(w[0].state).offset;
    if (!root_trivial(m, w, offset)) return Verdict::kFalse;
    const auto d = shape.degree(offset);
    for (std::uint32_t x = 0; x < d; ++x) {
      auto sec = step(m, w, x).section;
      if (sec.empty() || visited.contains(sec)) continue;
      if (visited.size() >= node_budget) return Verdict::kInconclusive;
      visited.insert(sec);
      queue.push_back(std::move(sec));
    }
  }
  return Verdict::kTrue;
}

Verdict equals(const Element& g, const Element& h, std::size_t node_budget) {
  return is_identity(compose(g, inverse(h)), node_budget);
}

Verdict commutes(const Element& g, const Element& h, std::size_t node_budget) {
  return equals(compose(g, h), compose(h, g), node_budget);
}

bool is_identity_strict(const Element& e, std::size_t node_budget) {
  const auto v = is_identity(e, node_budget);
  if (v == Verdict::kInconclusive)
    throw InconclusiveError("is_identity(" + e.to_string() + "): node budget exhausted");
  return v == Verdict::kTrue;
}

bool equals_strict(const Element& g, const Element& h, std::size_t node_budget) {
  return is_identity_strict(compose(g, inverse(h)), node_budget);
}

SearchOutcome<std::size_t> bounded_order(const Element& e, std::size_t bound,
                                         std::size_t node_budget) {
  if (bound < 1) throw std::invalid_argument("bounded_order: bound must be at least 1");
  Element p = e;
  for (std::size_t k = 1; k <= bound; ++k) {
    const auto v = is_identity(p, node_budget);
    if (v == Verdict::kTrue) return SearchOutcome<std::size_t>::certified(k);
    if (v == Verdict::kInconclusive)
      return SearchOutcome<std::size_t>::inconclusive("identity test of power " + std::to_string(k) +
                                                      " exceeded node budget");
    p = compose(p, e);
  }
  return SearchOutcome<std::size_t>::inconclusive("no power up to " + std::to_string(bound) +
                                                  " is trivial");
}

Portrait portrait(const Element& e, std::size_t depth) {
  const auto& m = *e.machine();
  Portrait out;
  std::vector<std::pair<Vertex, Word>> frontier{{Vertex{}, e.word()}};
  std::size_t offset = e.offset();
  for (std::size_t level = 0; level < depth; ++level) {
    const auto d = m.shape().degree(offset);
    std::vector<std::pair<Vertex, Word>> next;
    for (auto& [v, w] : frontier) {
      std::vector<std::uint32_t> images(d);
      for (std::uint32_t x = 0; x < d; ++x) {
        auto [y, sec] = step(m, w, x);
        images[x] = y;
        next.emplace_back(v.child(x + 1), std::move(sec));
      }
      out.emplace(v, Permutation(std::move(images)));
    }
    frontier = std::move(next);
    offset = m.shape().canonical_offset(offset + 1);
  }
  return out;
}

}  // namespace arbor
