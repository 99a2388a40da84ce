#include "arbor/perm.hpp"

#include <cctype>
#include <sstream>

namespace arbor {

namespace {

void check_bijective(const std::vector<std::uint32_t>& images) {
  std::vector<bool> hit(images.size(), false);
  for (auto y : images) {
    if (y >= images.size() || hit[y]) throw PermutationError("not a permutation");
    hit[y] = true;
  }
}

}  // namespace

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  check_bijective(images_);
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(i);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(std::size_t n,
                                     const std::vector<std::vector<std::uint32_t>>& cycles) {
  auto p = identity(n);
  std::vector<bool> used(n, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const auto x = cycle[i];
      if (x < 1 || x > n) throw PermutationError("cycle point " + std::to_string(x) + " out of range");
      if (used[x - 1]) throw PermutationError("not a permutation: point " + std::to_string(x) + " repeated");
      used[x - 1] = true;
      p.images_[x - 1] = cycle[(i + 1) % cycle.size()] - 1;
    }
  }
  return p;
}

Permutation Permutation::parse_cycles(std::size_t n, std::string_view text) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw PermutationError("bad cycle notation: '" + std::string(text) + "'");
    ++i;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw PermutationError("bad cycle notation: '" + std::string(text) + "'");
      std::uint32_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        value = value * 10 + static_cast<std::uint32_t>(text[i++] - '0');
      cycle.push_back(value);
      skip();
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip();
  }
  return from_cycles(n, cycles);
}

Permutation Permutation::from_one_line(const std::vector<std::uint32_t>& one_based) {
  std::vector<std::uint32_t> images;
  images.reserve(one_based.size());
  for (auto y : one_based) {
    if (y < 1 || y > one_based.size()) throw PermutationError("not a permutation");
    images.push_back(y - 1);
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

std::size_t Permutation::fixed_points() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) count += images_[i] == i;
  return count;
}

std::vector<std::uint32_t> Permutation::one_line() const {
  std::vector<std::uint32_t> out;
  out.reserve(images_.size());
  for (auto y : images_) out.push_back(y + 1);
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    any = true;
    out << '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      out << (first ? "" : ",") << x + 1;
      first = false;
      x = images_[x];
    }
    out << ')';
  }
  if (!any) out << "()";
  return out.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw PermutationError("compose: size mismatch");
  std::vector<std::uint32_t> images(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) images[x] = p(q(static_cast<std::uint32_t>(x)));
  return Permutation(std::move(images));
}

}  // namespace arbor
