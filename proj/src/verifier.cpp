#include "diffset/verifier.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "diffset/engine.hpp"
#include "diffset/prover.hpp"

namespace diffset {

namespace {

// Distinct differences of the values selected by `mask`. Scratch-based:
// at most kExhaustiveCap^2 entries.
std::int64_t mask_diff_count(std::span<const std::int64_t> values, std::uint32_t mask) {
  std::array<std::int64_t, kExhaustiveCap> sel;
  int k = 0;
  for (std::uint32_t m = mask; m; m &= m - 1) {
    sel[k++] = values[std::countr_zero(m)];
  }
  std::array<std::int64_t, kExhaustiveCap * kExhaustiveCap> diffs;
  int cnt = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) diffs[cnt++] = sel[i] - sel[j];
  std::sort(diffs.begin(), diffs.begin() + cnt);
  return std::unique(diffs.begin(), diffs.begin() + cnt) - diffs.begin();
}

std::uint32_t gosper_next(std::uint32_t v) {
  std::uint32_t t = v | (v - 1);
  return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Mask of the rank-th k-subset of [0,n) in colex order.
std::uint32_t colex_unrank(std::uint64_t rank, int n, int k) {
  std::uint32_t mask = 0;
  for (int i = k; i >= 1; --i) {
    int c = n - 1;
    while (binomial(c, i) > rank) --c;
    mask |= std::uint32_t{1} << c;
    rank -= binomial(c, i);
    n = c;
  }
  return mask;
}

struct SweepResult {
  std::int64_t min_diff = std::numeric_limits<std::int64_t>::max();
  std::uint32_t witness = 0;
  std::uint64_t checked = 0;
};

SweepResult sweep_range(std::span<const std::int64_t> values, std::uint32_t start_mask,
                        std::uint64_t count) {
  SweepResult r;
  std::uint32_t mask = start_mask;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::int64_t d = mask_diff_count(values, mask);
    if (d < r.min_diff) {
      r.min_diff = d;
      r.witness = mask;
    }
    ++r.checked;
    mask = gosper_next(mask);
  }
  return r;
}

}  // namespace

BoundInfo make_bound_info(std::int64_t k) {
  BoundInfo b;
  b.k = k;
  b.exact = k > 0 && (k & (k - 1)) == 0;
  b.bound_min = local_bound_min(k);
  if (b.exact) {
    b.lo_str = b.hi_str = std::to_string(b.bound_min);
  } else {
    Interval enc = local_bound_interval(k);
    std::ostringstream lo, hi;
    lo.precision(21);
    hi.precision(21);
    lo << enc.lo();
    hi << enc.hi();
    b.lo_str = lo.str();
    b.hi_str = hi.str();
  }
  return b;
}

LocalReport verify_exhaustive(std::span<const std::int64_t> values, int k, int threads) {
  const int n = static_cast<int>(values.size());
  if (n > kExhaustiveCap) {
    throw CapExceededError("verify_exhaustive: |P| = " + std::to_string(n) +
                           " exceeds the exhaustive cap (" + std::to_string(kExhaustiveCap) +
                           "); use min_subset_bnb");
  }
  if (k < 1 || k > n) throw std::invalid_argument("verify_exhaustive: k out of range");

  const std::uint64_t total = binomial(n, k);
  std::vector<SweepResult> parts;
  if (threads <= 1 || total < 4096) {
    parts.push_back(sweep_range(values, (std::uint32_t{1} << k) - 1, total));
  } else {
    const int t = std::min<std::uint64_t>(threads, total);
    parts.resize(t);
    std::vector<std::thread> pool;
    for (int w = 0; w < t; ++w) {
      const std::uint64_t begin = total * w / t;
      const std::uint64_t end = total * (w + 1) / t;
      pool.emplace_back([&, w, begin, end] {
        parts[w] = sweep_range(values, colex_unrank(begin, n, k), end - begin);
      });
    }
    for (auto& th : pool) th.join();
  }

  SweepResult best;
  for (const auto& p : parts) {
    best.checked += p.checked;
    if (p.min_diff < best.min_diff ||
        (p.min_diff == best.min_diff && p.witness < best.witness)) {
      best.min_diff = p.min_diff;
      best.witness = p.witness;
    }
  }

  LocalReport rep;
  rep.k = k;
  rep.min_diff = best.min_diff;
  rep.witness = SubsetMask::from_word(best.witness, n);
  rep.bound = make_bound_info(k);
  rep.holds = best.min_diff >= rep.bound.bound_min;
  rep.subsets_checked = best.checked;
  rep.mode = VerifyMode::exhaustive;
  return rep;
}

LocalReport verify_exhaustive(const PointSet& p, int k, int threads) {
  auto v = p.values();
  return verify_exhaustive(v, k, threads);
}

std::vector<LocalReport> verify_all_k(std::span<const std::int64_t> values, int threads) {
  std::vector<LocalReport> reports;
  reports.reserve(values.size());
  for (int k = 1; k <= static_cast<int>(values.size()); ++k) {
    reports.push_back(verify_exhaustive(values, k, threads));
  }
  return reports;
}

std::vector<LocalReport> verify_all_k(const PointSet& p, int threads) {
  auto v = p.values();
  return verify_all_k(v, threads);
}

namespace {

class BnbSearch {
 public:
  BnbSearch(std::span<const std::int64_t> values, int k, std::uint64_t budget,
            const BnbCheckpoint& checkpoint)
      : values_(values), k_(k), budget_(budget), checkpoint_(checkpoint) {
    chosen_.reserve(k);
    added_.resize(k + 1);
  }

  LocalReport run() {
    diffs_.insert(0);
    dfs(0);
    LocalReport rep;
    rep.k = k_;
    rep.min_diff = best_count_;
    rep.witness = best_mask_;
    rep.bound = make_bound_info(k_);
    rep.subsets_checked = leaves_;
    rep.mode = VerifyMode::branch_and_bound;
    rep.complete = complete_;
    rep.holds = complete_ && best_count_ >= rep.bound.bound_min;
    return rep;
  }

 private:
  void dfs(std::size_t idx) {
    if (nodes_ >= budget_) {
      complete_ = false;
      return;
    }
    ++nodes_;
    if (checkpoint_ && nodes_ % kCheckpointStride == 0) checkpoint_(nodes_, best_count_);
    const int have = static_cast<int>(chosen_.size());
    if (have == k_) {
      auto count = static_cast<std::int64_t>(diffs_.size());
      ++leaves_;
      if (count < best_count_) {
        best_count_ = count;
        best_mask_ = SubsetMask(values_.size());
        for (std::size_t i : chosen_idx_) best_mask_.set(i);
      }
      return;
    }
    if (values_.size() - idx < static_cast<std::size_t>(k_ - have)) return;

    // include values_[idx] first (canonical tie-break)
    include(idx);
    // prefix count lower-bounds every completion; prune when it cannot
    // strictly improve on the incumbent
    if (static_cast<std::int64_t>(diffs_.size()) < best_count_) dfs(idx + 1);
    undo();
    if (!complete_) return;

    dfs(idx + 1);
  }

  void include(std::size_t idx) {
    std::int64_t x = values_[idx];
    auto& added = added_[chosen_.size()];
    added.clear();
    for (std::int64_t y : chosen_) {
      if (diffs_.insert(x - y).second) added.push_back(x - y);
      if (diffs_.insert(y - x).second) added.push_back(y - x);
    }
    chosen_.push_back(x);
    chosen_idx_.push_back(idx);
  }

  void undo() {
    chosen_.pop_back();
    chosen_idx_.pop_back();
    for (std::int64_t d : added_[chosen_.size()]) diffs_.erase(d);
  }

  std::span<const std::int64_t> values_;
  int k_;
  std::uint64_t budget_;
  BnbCheckpoint checkpoint_;
  std::uint64_t nodes_ = 0;
  std::uint64_t leaves_ = 0;
  bool complete_ = true;
  std::int64_t best_count_ = std::numeric_limits<std::int64_t>::max();
  SubsetMask best_mask_;
  std::unordered_set<std::int64_t> diffs_;
  std::vector<std::int64_t> chosen_;
  std::vector<std::size_t> chosen_idx_;
  std::vector<std::vector<std::int64_t>> added_;
};

}  // namespace

LocalReport min_subset_bnb(std::span<const std::int64_t> values, int k,
                           std::uint64_t node_budget, const BnbCheckpoint& checkpoint) {
  if (k < 1 || k > static_cast<int>(values.size())) {
    throw std::invalid_argument("min_subset_bnb: k out of range");
  }
  return BnbSearch(values, k, node_budget, checkpoint).run();
}

LocalReport min_subset_bnb(const PointSet& p, int k, std::uint64_t node_budget) {
  auto v = p.values();
  return min_subset_bnb(v, k, node_budget);
}

namespace {

double sum_lb(std::initializer_list<double> terms) {
  double s = 0;
  for (double t : terms) {
    s += t;
    // keep the running sum a true lower bound under round-to-nearest
    s = std::nextafter(s, -std::numeric_limits<double>::infinity());
  }
  return s;
}

struct TraceContext {
  const PointSet& p;
  PowPCache& powp;
  std::vector<DecompositionTrace>& out;
};

std::vector<std::int64_t> embed_all(const std::vector<std::uint64_t>& bits, int n) {
  std::vector<std::int64_t> v;
  v.reserve(bits.size());
  for (std::uint64_t b : bits) v.push_back(embed_base3(CoefficientVector{b, n}));
  return v;
}

void trace_node(TraceContext& ctx, int level, const std::vector<std::uint64_t>& q1,
                const std::vector<std::uint64_t>& q2) {
  if (q1.empty() || q2.empty()) return;
  const int n = ctx.p.n;
  auto v1 = embed_all(q1, n);
  auto v2 = embed_all(q2, n);
  const std::int64_t cross = cross_diff_count(v1, v2);

  if (level == 0) {
    if (q1.size() != 1 || q2.size() != 1 || cross != 1) {
      throw TraceAssertionError("trace: level-0 basis violated");
    }
    return;
  }

  const std::uint64_t high = ~((std::uint64_t{1} << level) - 1);
  const std::uint64_t split_bit = std::uint64_t{1} << (level - 1);
  std::vector<std::uint64_t> A, B, C, D;
  for (std::uint64_t q : q1) (q & split_bit ? B : A).push_back(q);
  for (std::uint64_t q : q2) (q & split_bit ? D : C).push_back(q);

  DecompositionTrace t;
  t.level = level;
  t.t1 = q1.front() & high;
  t.t2 = q2.front() & high;
  t.a = static_cast<std::int64_t>(A.size());
  t.b = static_cast<std::int64_t>(B.size());
  t.c = static_cast<std::int64_t>(C.size());
  t.d = static_cast<std::int64_t>(D.size());
  t.cross_count = cross;

  // Disjointness of the three difference classes by the trit on the
  // split generator: 0 for (A-C) u (B-D), -1 for A-D, +1 for B-C.
  auto check_class = [&](const std::vector<std::uint64_t>& xs,
                         const std::vector<std::uint64_t>& ys, int expected) {
    for (std::uint64_t x : xs) {
      for (std::uint64_t y : ys) {
        std::int64_t diff = embed_base3(CoefficientVector{x, n}) -
                            embed_base3(CoefficientVector{y, n});
        if (trit_at(diff, n, level - 1) != expected) {
          throw TraceAssertionError("trace: difference-class trit mismatch at level " +
                                    std::to_string(level));
        }
      }
    }
  };
  check_class(A, C, 0);
  check_class(B, D, 0);
  check_class(A, D, -1);
  check_class(B, C, 1);

  t.eq3_lb = sum_lb({ctx.powp.lb(t.a * t.d), ctx.powp.lb(t.b * t.c),
                     ctx.powp.lb(std::max(t.a * t.c, t.b * t.d))});
  t.eq2_lb = ctx.powp.lb(static_cast<std::int64_t>(q1.size() * q2.size()));
  if (static_cast<double>(cross) < t.eq3_lb) {
    throw TraceAssertionError("trace: three-term inequality violated at level " +
                              std::to_string(level));
  }
  if (static_cast<double>(cross) < t.eq2_lb) {
    throw TraceAssertionError("trace: main inequality violated at level " +
                              std::to_string(level));
  }
  ctx.out.push_back(t);

  trace_node(ctx, level - 1, A, C);
  trace_node(ctx, level - 1, A, D);
  trace_node(ctx, level - 1, B, C);
  trace_node(ctx, level - 1, B, D);
}

}  // namespace

std::vector<DecompositionTrace> trace_decomposition(const PointSet& p, const SubsetMask& mask) {
  if (mask.size() != p.size()) {
    throw std::invalid_argument("trace_decomposition: mask size mismatch");
  }
  std::vector<std::uint64_t> q;
  for (std::size_t i : mask.indices()) q.push_back(p.elements[i].bits);
  if (q.empty()) throw std::invalid_argument("trace_decomposition: empty subset");

  static thread_local PowPCache powp;
  std::vector<DecompositionTrace> out;
  TraceContext ctx{p, powp, out};
  trace_node(ctx, p.n, q, q);
  return out;
}

std::string report_rows_csv(std::span<const LocalReport> reports) {
  std::ostringstream out;
  out << "k,min_diff,bound_lo,bound_hi,holds,mode,subsets_checked\n";
  for (const auto& r : reports) {
    out << r.k << "," << r.min_diff << "," << r.bound.lo_str << "," << r.bound.hi_str << ","
        << (r.holds ? "true" : "false") << ","
        << (r.mode == VerifyMode::exhaustive ? "exhaustive" : "bnb") << ","
        << r.subsets_checked << "\n";
  }
  return out.str();
}

std::string report_blocks(std::span<const LocalReport> reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << "report\n"
        << "  k = " << r.k << "\n"
        << "  min_diff = " << r.min_diff << "\n"
        << "  witness = " << r.witness.to_string() << "\n"
        << "  bound = [" << r.bound.lo_str << "," << r.bound.hi_str << "]"
        << (r.bound.exact ? " (exact)" : "") << "\n"
        << "  holds = " << (r.holds ? "true" : "false") << "\n"
        << "  mode = " << (r.mode == VerifyMode::exhaustive ? "exhaustive" : "bnb") << "\n"
        << "  subsets_checked = " << r.subsets_checked << "\n"
        << "  complete = " << (r.complete ? "true" : "false") << "\n";
  }
  return out.str();
}

}  // namespace diffset
