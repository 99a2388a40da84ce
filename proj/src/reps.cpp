#include "arbor/reps.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace arbor {

namespace {

// Image of vertex index j (depth ≤ depth, levels concatenated) under each term.
struct ImageTable {
  std::vector<Vertex> vertices;
  std::vector<std::vector<std::uint32_t>> image;  // [term][vertex]
};

ImageTable image_table(const AlgebraElement& a, std::size_t depth) {
  ImageTable t;
  t.image.resize(a.terms().size());
  const auto& shape = a.machine()->shape();
  std::uint32_t base = 0;
  for (std::size_t k = 0; k <= depth; ++k) {
    const auto level = level_vertices(shape, k);
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
      const auto p = level_permutation(a.terms()[i].element, k);
      for (std::uint32_t x = 0; x < level.size(); ++x) t.image[i].push_back(base + p(x));
    }
    base += static_cast<std::uint32_t>(level.size());
    t.vertices.insert(t.vertices.end(), level.begin(), level.end());
  }
  return t;
}

void require_offset_zero(const AlgebraElement& a) {
  for (const auto& t : a.terms())
    if (t.element.offset() != 0) throw RepsError("representation of an element at nonzero level offset");
}

}  // namespace

void FormalVector::add(const Tuple& t, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(t, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) coeffs_.erase(it);
}

Rational FormalVector::at(const Tuple& t) const {
  const auto it = coeffs_.find(t);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::string FormalVector::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [tuple, c] : coeffs_) {
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const Rational m = abs(c);
    if (m != 1) out << m.get_str() << "*";
    for (std::size_t i = 0; i < tuple.size(); ++i) out << (i ? "⊗" : "") << "δ_" << tuple[i].to_string();
  }
  return out.str();
}

FormalVector rho_apply(const AlgebraElement& a, const Vertex& v) { return rho_apply(a, std::vector<Vertex>{v}); }

FormalVector rho_apply(const AlgebraElement& a, const std::vector<Vertex>& tuple) {
  require_offset_zero(a);
  for (const auto& z : tuple) validate_vertex(a.machine()->shape(), z);
  FormalVector out;
  for (const auto& t : a.terms()) {
    FormalVector::Tuple image;
    for (const auto& z : tuple) image.push_back(apply(t.element, z));
    out.add(image, t.coeff);
  }
  return out;
}

bool vanishes_to_depth(const AlgebraElement& a, std::size_t depth) {
  return tensor_vanishes_to_depth(a, 1, depth, std::numeric_limits<std::size_t>::max()) == Verdict::kTrue;
}

Verdict tensor_vanishes_to_depth(const AlgebraElement& a, std::size_t p, std::size_t depth, std::size_t budget) {
  if (p == 0) throw RepsError("tensor power must be at least 1");
  require_offset_zero(a);
  if (a.terms().empty()) return Verdict::kTrue;

  std::uint64_t n = 0;
  for (std::size_t k = 0; k <= depth; ++k) n += level_size(a.machine()->shape(), k);
  const std::size_t terms = a.terms().size();
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (tuples > budget / n) return Verdict::kInconclusive;
    tuples *= n;
  }
  if (tuples > budget / terms) return Verdict::kInconclusive;

  const auto table = image_table(a, depth);
  std::vector<std::uint32_t> z(p, 0);
  std::vector<std::pair<std::uint64_t, std::size_t>> images(terms);
  for (std::uint64_t count = 0; count < tuples; ++count) {
    for (std::size_t i = 0; i < terms; ++i) {
      std::uint64_t code = 0;
      for (std::size_t k = 0; k < p; ++k) code = code * n + table.image[i][z[k]];
      images[i] = {code, i};
    }
    std::sort(images.begin(), images.end());
    for (std::size_t i = 0; i < terms;) {
      Rational sum = 0;
      std::size_t j = i;
      for (; j < terms && images[j].first == images[i].first; ++j) sum += a.terms()[images[j].second].coeff;
      if (sum != 0) return Verdict::kFalse;
      i = j;
    }
    for (std::size_t k = p; k-- > 0;) {
      if (++z[k] < n) break;
      z[k] = 0;
    }
  }
  return Verdict::kTrue;
}

std::string KernelReport::to_text() const {
  std::ostringstream out;
  out << "action: " << action << "\n"
      << "level: " << level << "\n"
      << "radius: " << radius << "\n"
      << "witnesses:\n";
  for (const auto& [v, g] : witnesses) out << "  g_" << v.to_string() << " = " << g.to_string() << "\n";
  out << "kernel: " << arbor::to_string(kernel) << "\n"
      << "terms: " << kernel.terms().size() << " (raw " << raw_terms << ")\n"
      << "augmentation: " << augmentation.get_str() << "\n"
      << "nonzero: " << arbor::to_string(nonzero) << "\n";
  for (const auto& line : nonzero_transcript) out << "  " << line << "\n";
  out << "tensor power: " << power << "\n"
      << "vanishing to depth " << depth << ": " << arbor::to_string(vanishing) << "\n";
  return out.str();
}

KernelReport weakly_branched_kernel(const ActionSpec& action, std::size_t level, std::size_t radius,
                                    std::size_t depth, std::size_t power) {
  const auto vertices = level_vertices(action.shape(), level);
  const auto ball = enumerate_ball(action, radius);
  KernelReport report{action.name, level, radius, depth, {}, AlgebraElement(action.machine), 0, {}, Verdict::kInconclusive, 0, Verdict::kInconclusive, 0};
  std::vector<Element> factors;
  for (const auto& v : vertices) {
    const auto found = rigid_stabilizer_search(ball, v);
    if (!found.is_certified())
      throw RepsError("no rigid stabilizer witness at vertex " + v.to_string() + " within radius " +
                      std::to_string(radius));
    report.witnesses.emplace_back(v, found.value());
    factors.push_back(found.value());
  }
  auto kp = kernel_product(factors);
  report.kernel = std::move(kp.value);
  report.raw_terms = kp.raw_terms;
  report.augmentation = augmentation(report.kernel);

  // The section of ∏ g_v at w is φ_w(g_w) since the other factors act
  // trivially below w.
  for (const auto& [v, g] : report.witnesses) {
    const auto s = section(g, v);
    const auto verdict = is_identity(s);
    std::string status = verdict == Verdict::kFalse ? "nontrivial" : verdict == Verdict::kTrue ? "trivial" : "undecided";
    report.nonzero_transcript.push_back("phi_" + v.to_string() + "(g_" + v.to_string() + ") = " + s.to_string() +
                                        ": " + status);
  }
  const auto zero = is_zero(report.kernel);
  report.nonzero = zero == Verdict::kFalse ? Verdict::kTrue : zero == Verdict::kTrue ? Verdict::kFalse : zero;
  report.power = power ? power : vertices.size() - 1;
  report.vanishing = tensor_vanishes_to_depth(report.kernel, report.power, depth);
  return report;
}

std::vector<std::vector<int>> level_matrix(const LevelTower& tower, std::size_t level, std::size_t index) {
  if (level > tower.top()) throw RepsError("level " + std::to_string(level) + " beyond tower top");
  const auto& lv = tower.level(level);
  if (index >= lv.generators.size()) throw RepsError("generator index out of range");
  std::vector<std::vector<int>> m(lv.size, std::vector<int>(lv.size, 0));
  for (std::uint32_t x = 0; x < lv.size; ++x) m[lv.generators[index](x)][x] = 1;
  return m;
}

}  // namespace arbor
