#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

class PermutationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Permutation of {0,...,n-1} stored as an image table. Text forms are
/// 1-based: one-line "[2,1,3]" and cycle "(1,3,5)(2,4,6)".
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t n);
  /// Builds from 1-based cycles, e.g. {{1,3,5},{2,4,6}}.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles);
  /// Parses "(1,3,5)(2,4,6)" or "()" on n points.
  static Permutation parse_cycles(std::size_t n, std::string_view text);
  /// 1-based one-line notation; throws "not a permutation" on repeats.
  static Permutation from_one_line(const std::vector<std::uint32_t>& one_based);

  std::size_t size() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  std::size_t fixed_points() const;

  std::vector<std::uint32_t> one_line() const;  // 1-based
  std::string to_string() const;               // cycle notation, "()" for identity

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

/// (p∘q)(x) = p(q(x)).
Permutation compose(const Permutation& p, const Permutation& q);

}  // namespace arbor
