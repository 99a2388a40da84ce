#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace arbor {

/// Answer of a decision procedure that may run out of budget.
enum class Verdict { kTrue, kFalse, kInconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kTrue: return "true";
    case Verdict::kFalse: return "false";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

inline Verdict verdict_of(bool b) { return b ? Verdict::kTrue : Verdict::kFalse; }

/// Thrown when a boolean is required but the procedure was inconclusive.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of a bounded search: either a witness that can be re-checked, or
/// a record of the bounds that were exhausted. Never asserts nonexistence.
template <typename T>
class SearchOutcome {
 public:
  static SearchOutcome certified(T value) { return SearchOutcome(std::move(value), {}); }
  static SearchOutcome inconclusive(std::string bounds) {
    return SearchOutcome(std::nullopt, std::move(bounds));
  }

  bool is_certified() const { return value_.has_value(); }
  const T& value() const {
    if (!value_) throw InconclusiveError("search inconclusive: " + bounds_);
    return *value_;
  }
  /// Description of the exhausted bounds (empty when certified).
  const std::string& bounds() const { return bounds_; }

 private:
  SearchOutcome(std::optional<T> value, std::string bounds)
      : value_(std::move(value)), bounds_(std::move(bounds)) {}

  std::optional<T> value_;
  std::string bounds_;
};

}  // namespace arbor
