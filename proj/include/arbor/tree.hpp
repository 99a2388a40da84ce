#pragma once

// Spherically homogeneous rooted trees with eventually periodic degree
// sequences, and 1-based vertex addressing.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

inline constexpr std::size_t kDefaultMaxDepth = 64;

/// Raised for malformed shapes, out-of-range letters and level overflow.
class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degree sequence d_0, d_1, ... given as a finite prefix followed by a
/// nonempty tail repeated forever.
class TreeShape {
 public:
  TreeShape(std::vector<std::uint32_t> prefix, std::vector<std::uint32_t> tail,
            std::size_t max_depth = kDefaultMaxDepth);

  /// Constant-degree tree T_{d,d,...}.
  static TreeShape regular(std::uint32_t degree);

  const std::vector<std::uint32_t>& prefix() const { return prefix_; }
  const std::vector<std::uint32_t>& tail() const { return tail_; }
  std::size_t max_depth() const { return max_depth_; }

  std::uint32_t degree(std::size_t level) const;

  /// |L_n|; throws TreeError when the product does not fit in 64 bits.
  std::uint64_t level_size(std::size_t level) const;

  /// Canonical representative of a level offset: offsets past the prefix
  /// are reduced modulo the tail period, so two offsets with the same
  /// canonical value root isomorphic subtrees.
  std::size_t canonical_offset(std::size_t offset) const;

  /// Shape of the subtree rooted at a vertex of the given depth.
  TreeShape shifted(std::size_t by) const;

  bool operator==(const TreeShape& other) const {
    return prefix_ == other.prefix_ && tail_ == other.tail_;
  }

  std::string to_string() const;

 private:
  std::vector<std::uint32_t> prefix_;
  std::vector<std::uint32_t> tail_;
  std::size_t max_depth_;
};

/// A vertex, written as its word of 1-based letters read from the root.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::vector<std::uint32_t> letters) : letters_(std::move(letters)) {}

  static Vertex root() { return Vertex{}; }

  /// Parses "", "∅" or "e" as the root, and either a plain digit string
  /// ("212") or a dot-separated list ("1.12.3") for degrees above 9.
  static Vertex parse(std::string_view text);

  std::size_t depth() const { return letters_.size(); }
  bool is_root() const { return letters_.empty(); }
  const std::vector<std::uint32_t>& letters() const { return letters_; }
  std::uint32_t operator[](std::size_t i) const { return letters_[i]; }

  Vertex child(std::uint32_t letter) const;
  /// Parent of a non-root vertex; throws TreeError at the root.
  Vertex parent() const;
  Vertex prefix(std::size_t length) const;
  Vertex concat(const Vertex& tail) const;

  std::string to_string() const;

  auto operator<=>(const Vertex&) const = default;

 private:
  std::vector<std::uint32_t> letters_;
};

/// Throws TreeError unless every letter of `v` is in range for `shape`
/// (measured from the given level offset).
void validate_vertex(const TreeShape& shape, const Vertex& v, std::size_t offset = 0);

std::uint32_t degree(const TreeShape& shape, std::size_t level);
std::uint64_t level_size(const TreeShape& shape, std::size_t level);

/// All words of length n in lexicographic order.
std::vector<Vertex> level_vertices(const TreeShape& shape, std::size_t level);

/// True iff v is a prefix of w.
bool is_descendant(const Vertex& v, const Vertex& w);

std::vector<Vertex> children(const TreeShape& shape, const Vertex& v, std::size_t offset = 0);

/// Position of v in the lexicographic enumeration of its level.
std::uint64_t vertex_rank(const TreeShape& shape, const Vertex& v, std::size_t offset = 0);

/// Inverse of vertex_rank.
Vertex vertex_at(const TreeShape& shape, std::size_t level, std::uint64_t rank,
                 std::size_t offset = 0);

}  // namespace arbor
