#include "arbor/tree.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace arbor {

TreeShape::TreeShape(std::vector<std::uint32_t> prefix, std::vector<std::uint32_t> tail,
                     std::size_t max_depth)
    : prefix_(std::move(prefix)), tail_(std::move(tail)), max_depth_(max_depth) {
  if (tail_.empty()) throw TreeError("tree shape: tail must be nonempty");
  auto bad = [](std::uint32_t d) { return d < 2; };
  if (std::any_of(prefix_.begin(), prefix_.end(), bad) ||
      std::any_of(tail_.begin(), tail_.end(), bad))
    throw TreeError("tree shape: every degree must be at least 2");
}

TreeShape TreeShape::regular(std::uint32_t degree) { return TreeShape({}, {degree}); }

std::uint32_t TreeShape::degree(std::size_t level) const {
  if (level < prefix_.size()) return prefix_[level];
  return tail_[(level - prefix_.size()) % tail_.size()];
}

std::uint64_t TreeShape::level_size(std::size_t level) const {
  std::uint64_t size = 1;
  for (std::size_t k = 0; k < level; ++k) {
    const std::uint64_t d = degree(k);
    if (size > std::numeric_limits<std::uint64_t>::max() / d)
      throw TreeError("level_size: |L_" + std::to_string(level) + "| overflows 64 bits");
    size *= d;
  }
  return size;
}

std::size_t TreeShape::canonical_offset(std::size_t offset) const {
  if (offset < prefix_.size()) return offset;
  return prefix_.size() + (offset - prefix_.size()) % tail_.size();
}

TreeShape TreeShape::shifted(std::size_t by) const {
  std::vector<std::uint32_t> prefix;
  std::vector<std::uint32_t> tail;
  if (by < prefix_.size()) {
    prefix.assign(prefix_.begin() + static_cast<std::ptrdiff_t>(by), prefix_.end());
    tail = tail_;
  } else {
    const std::size_t rot = (by - prefix_.size()) % tail_.size();
    tail.assign(tail_.begin() + static_cast<std::ptrdiff_t>(rot), tail_.end());
    tail.insert(tail.end(), tail_.begin(), tail_.begin() + static_cast<std::ptrdiff_t>(rot));
  }
  return TreeShape(std::move(prefix), std::move(tail), max_depth_);
}

std::string TreeShape::to_string() const {
  std::ostringstream out;
  out << "T(";
  for (auto d : prefix_) out << d << ",";
  out << "[";
  for (std::size_t i = 0; i < tail_.size(); ++i) out << (i ? "," : "") << tail_[i];
  out << "]...)";
  return out.str();
}

Vertex Vertex::parse(std::string_view text) {
  if (text.empty() || text == "e" || text == "\xE2\x88\x85") return Vertex{};
  std::vector<std::uint32_t> letters;
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = std::min(text.find('.', start), text.size());
      const auto token = text.substr(start, end - start);
      if (token.empty()) throw TreeError("vertex: empty letter in '" + std::string(text) + "'");
      std::uint32_t value = 0;
      for (char ch : token) {
        if (ch < '0' || ch > '9') throw TreeError("vertex: bad letter in '" + std::string(text) + "'");
        value = value * 10 + static_cast<std::uint32_t>(ch - '0');
      }
      letters.push_back(value);
      start = end + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < '1' || ch > '9') throw TreeError("vertex: bad letter in '" + std::string(text) + "'");
      letters.push_back(static_cast<std::uint32_t>(ch - '0'));
    }
  }
  for (auto l : letters)
    if (l == 0) throw TreeError("vertex: letters are 1-based");
  return Vertex(std::move(letters));
}

Vertex Vertex::child(std::uint32_t letter) const {
  auto letters = letters_;
  letters.push_back(letter);
  return Vertex(std::move(letters));
}

Vertex Vertex::parent() const {
  if (letters_.empty()) throw TreeError("vertex: the root has no parent");
  return prefix(letters_.size() - 1);
}

Vertex Vertex::prefix(std::size_t length) const {
  return Vertex({letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(length)});
}

Vertex Vertex::concat(const Vertex& tail) const {
  auto letters = letters_;
  letters.insert(letters.end(), tail.letters_.begin(), tail.letters_.end());
  return Vertex(std::move(letters));
}

std::string Vertex::to_string() const {
  if (letters_.empty()) return "\xE2\x88\x85";
  const bool wide = std::any_of(letters_.begin(), letters_.end(), [](auto l) { return l > 9; });
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (wide && i) out += '.';
    out += std::to_string(letters_[i]);
  }
  return out;
}

void validate_vertex(const TreeShape& shape, const Vertex& v, std::size_t offset) {
  if (v.depth() > shape.max_depth())
    throw TreeError("vertex " + v.to_string() + " is deeper than MAX_DEPTH=" +
                    std::to_string(shape.max_depth()));
  for (std::size_t j = 0; j < v.depth(); ++j) {
    const auto d = shape.degree(offset + j);
    if (v[j] < 1 || v[j] > d)
      throw TreeError("vertex " + v.to_string() + ": letter " + std::to_string(v[j]) +
                      " at depth " + std::to_string(j + 1) + " outside 1.." + std::to_string(d));
  }
}

std::uint32_t degree(const TreeShape& shape, std::size_t level) { return shape.degree(level); }

std::uint64_t level_size(const TreeShape& shape, std::size_t level) {
  return shape.level_size(level);
}

std::vector<Vertex> level_vertices(const TreeShape& shape, std::size_t level) {
  if (level > shape.max_depth())
    throw TreeError("level " + std::to_string(level) + " exceeds MAX_DEPTH");
  const auto count = shape.level_size(level);
  std::vector<Vertex> out;
  out.reserve(count);
  std::vector<std::uint32_t> word(level, 1);
  for (std::uint64_t r = 0; r < count; ++r) {
    out.emplace_back(word);
    // mixed-radix increment, last letter fastest
    for (std::size_t j = level; j-- > 0;) {
      if (word[j] < shape.degree(j)) {
        ++word[j];
        break;
      }
      word[j] = 1;
    }
  }
  return out;
}

bool is_descendant(const Vertex& v, const Vertex& w) {
  if (v.depth() > w.depth()) return false;
  return std::equal(v.letters().begin(), v.letters().end(), w.letters().begin());
}

std::vector<Vertex> children(const TreeShape& shape, const Vertex& v, std::size_t offset) {
  std::vector<Vertex> out;
  const auto d = shape.degree(offset + v.depth());
  for (std::uint32_t x = 1; x <= d; ++x) out.push_back(v.child(x));
  return out;
}

std::uint64_t vertex_rank(const TreeShape& shape, const Vertex& v, std::size_t offset) {
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < v.depth(); ++j) rank = rank * shape.degree(offset + j) + (v[j] - 1);
  return rank;
}

Vertex vertex_at(const TreeShape& shape, std::size_t level, std::uint64_t rank,
                 std::size_t offset) {
  std::vector<std::uint32_t> letters(level);
  for (std::size_t j = level; j-- > 0;) {
    const auto d = shape.degree(offset + j);
    letters[j] = static_cast<std::uint32_t>(rank % d) + 1;
    rank /= d;
  }
  return Vertex(std::move(letters));
}

}  // namespace arbor
