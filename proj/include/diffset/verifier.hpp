#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "diffset/core.hpp"

namespace diffset {

inline constexpr int kExhaustiveCap = 20;
inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;
inline constexpr std::uint64_t kCheckpointStride = 1'000'000;

class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VerifyMode { exhaustive, branch_and_bound };

// Threshold k^{log2 3} in audit-friendly form.
struct BoundInfo {
  std::int64_t k = 0;
  bool exact = false;          // power-of-two branch, bound is exactly 3^s
  std::int64_t bound_min = 0;  // smallest integer m with m >= k^{log2 3}
  std::string lo_str;
  std::string hi_str;
};

BoundInfo make_bound_info(std::int64_t k);

struct LocalReport {
  std::int64_t k = 0;
  std::int64_t min_diff = 0;
  SubsetMask witness;
  BoundInfo bound;
  bool holds = false;
  std::uint64_t subsets_checked = 0;
  VerifyMode mode = VerifyMode::exhaustive;
  bool complete = true;  // false when branch-and-bound ran out of budget
};

// Minimum |Q-Q| over all k-subsets by colex mask enumeration.
// Requires |values| <= kExhaustiveCap; larger sets go through
// min_subset_bnb.
LocalReport verify_exhaustive(std::span<const std::int64_t> values, int k,
                              int threads = 1);
LocalReport verify_exhaustive(const PointSet& p, int k, int threads = 1);

// One report per k in [1, |values|].
std::vector<LocalReport> verify_all_k(std::span<const std::int64_t> values,
                                      int threads = 1);
std::vector<LocalReport> verify_all_k(const PointSet& p, int threads = 1);

using BnbCheckpoint = std::function<void(std::uint64_t nodes, std::int64_t best)>;

// Branch-and-bound minimum over k-subsets. Prunes on the prefix
// difference count, which is monotone under inclusion. Exact when the
// search completes within the node budget; otherwise the report is
// marked incomplete and min_diff is a best-found upper bound.
LocalReport min_subset_bnb(std::span<const std::int64_t> values, int k,
                           std::uint64_t node_budget = kDefaultNodeBudget,
                           const BnbCheckpoint& checkpoint = {});
LocalReport min_subset_bnb(const PointSet& p, int k,
                           std::uint64_t node_budget = kDefaultNodeBudget);

// One internal node of the recursive split of Lemma-style verification:
// Q1, Q2 live in translated copies of the level-l subcube and split
// into A,B / C,D on generator l.
struct DecompositionTrace {
  int level = 0;
  std::uint64_t t1 = 0;  // shared high bits (>= level) of Q1
  std::uint64_t t2 = 0;
  std::int64_t a = 0, b = 0, c = 0, d = 0;
  std::int64_t cross_count = 0;
  double eq3_lb = 0;  // lower bound of (ad)^p + (bc)^p + max(ac,bd)^p
  double eq2_lb = 0;  // lower bound of (|Q1||Q2|)^p
};

class TraceAssertionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recursively splits Q on the highest generator, checking at each node
// that the three difference classes are disjoint by trit value and that
// the exact cross count dominates the interval lower bounds. A violated
// assertion throws TraceAssertionError carrying the offending node.
std::vector<DecompositionTrace> trace_decomposition(const PointSet& p,
                                                    const SubsetMask& mask);

// Machine-readable rows: k,min_diff,bound_lo,bound_hi,holds,mode,subsets_checked
std::string report_rows_csv(std::span<const LocalReport> reports);
// Key-value text blocks, one per report.
std::string report_blocks(std::span<const LocalReport> reports);

}  // namespace diffset
