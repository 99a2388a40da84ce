#pragma once

// The acceptance criteria, runnable as a suite. Each criterion reports
// PASS, FAIL or INCONCLUSIVE together with a short detail line.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "arbor/actions.hpp"

namespace arbor::acceptance {

enum class Status { kPass, kFail, kInconclusive };
std::string to_string(Status s);

struct Result {
  int id = 0;
  std::string title;
  Status status = Status::kFail;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0 when the criterion has no runtime bound
};

/// Upper bound on the final coverage gap of the Aleshin experiment at top
/// level 12 (observed: 0.008991).
inline constexpr double kAleshinGapThreshold = 0.01;

struct WordSweep {
  std::uint64_t words = 0;         // nontrivial reduced words checked
  std::uint64_t deep_checks = 0;   // words acting trivially on the fingerprint level
  std::vector<std::string> identities;
  std::vector<std::string> undecided;
};

/// Every nontrivial freely reduced word of length ≤ max_length over the
/// generators and their inverses, tested for acting trivially. Words are
/// first separated by their permutation of a small level; the rest go
/// through the exact identity test.
WordSweep reduced_word_sweep(const ActionSpec& action, std::size_t max_length);

int criterion_count();
Result run_criterion(int id);
/// Runs the given criteria (all when empty), calling `report` after each.
std::vector<Result> run(const std::vector<int>& ids = {},
                        const std::function<void(const Result&)>& report = {});

std::string format_line(const Result& r);

}  // namespace arbor::acceptance
