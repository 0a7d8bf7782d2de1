// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "diffset/construction.hpp"
#include "diffset/core.hpp"
#include "diffset/engine.hpp"
#include "diffset/prover.hpp"
#include "diffset/verifier.hpp"

using namespace diffset;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void result(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. diff_count(P_j) = 3^j for j = 0..12; j=12 under 60 s.
void criterion1() {
  auto t0 = Clock::now();
  bool ok = true;
  for (int j = 0; j <= 12 && ok; ++j) {
    ok = diff_count(build_pn(j)) == pow3(j);
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 60.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "diff_count(P_j) = 3^j for j=0..12 (4096 points at j=12) in %.1f s", dt);
  result(1, ok, buf);
}

// 2. verify_exhaustive holds for every k on P_j, j <= 4; full P4 sweep < 120 s.
void criterion2() {
  auto t0 = Clock::now();
  bool ok = true;
  for (int j = 0; j <= 4 && ok; ++j) {
    for (const auto& rep : verify_all_k(build_pn(j))) {
      if (!rep.holds || !rep.complete) {
        ok = false;
        break;
      }
    }
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 120.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "every k-subset of P_j (j<=4) meets the bound, in %.1f s", dt);
  result(2, ok, buf);
}

// 3. zero-margin equalities: min_diff = 3 at k=2 and 9 at k=4 on P2, both hold.
void criterion3() {
  PointSet p2 = build_pn(2);
  LocalReport r2 = verify_exhaustive(p2, 2);
  LocalReport r4 = verify_exhaustive(p2, 4);
  bool ok = r2.min_diff == 3 && r2.holds && r2.bound.exact && r2.bound.bound_min == 3 &&
            r4.min_diff == 9 && r4.holds && r4.bound.exact && r4.bound.bound_min == 9;
  result(3, ok, "equality witnesses: min_diff exactly 3 (k=2) and 9 (k=4), both pass");
}

// 4. AP baseline n=16, k=4: min_diff 7 < 9, valid witness, CLI exit code 2.
void criterion4() {
  auto ap = build_baseline(BaselineKind::arithmetic_progression, 16);
  LocalReport r = verify_exhaustive(ap, 4);
  bool ok = r.min_diff == 7 && !r.holds && r.witness.popcount() == 4;
  if (ok) {
    // the witness must actually span exactly min_diff differences
    std::vector<std::int64_t> sub;
    for (auto i : r.witness.indices()) sub.push_back(ap[i]);
    ok = diff_count(sub) == r.min_diff;
  }
  int exit_code = -1;
  const char* bin = std::getenv("DIFFSET_BIN");
  if (ok && bin != nullptr) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "diffset_acceptance";
    fs::create_directories(dir);
    fs::path set = dir / "ap16.set";
    write_set_file(set.string(), SetFile{0, ap});
    std::string cmd = std::string(bin) + " verify " + set.string() +
                      " --k 4 --mode exhaustive > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    ok = exit_code == 2;
  } else if (bin == nullptr) {
    ok = false;
  }
  result(4, ok, "AP baseline n=16, k=4: min_diff 7 < 9, witness verified, CLI exit code 2");
}

// 5. branch-and-bound equals exhaustive on all (P4, k) and 50 random sets.
void criterion5() {
  bool ok = true;
  PointSet p4 = build_pn(4);
  for (int k = 1; k <= 16 && ok; ++k) {
    LocalReport bb = min_subset_bnb(p4, k);
    ok = bb.complete && bb.min_diff == verify_exhaustive(p4, k).min_diff;
  }
  std::mt19937_64 rng(20240817);
  for (int iter = 0; iter < 50 && ok; ++iter) {
    int n = 6 + static_cast<int>(rng() % 13);  // 6..18
    std::set<std::int64_t> vals;
    while (static_cast<int>(vals.size()) < n) {
      vals.insert(static_cast<std::int64_t>(rng() % 1000000));
    }
    std::vector<std::int64_t> v(vals.begin(), vals.end());
    int k = 2 + static_cast<int>(rng() % (n - 1));
    LocalReport bb = min_subset_bnb(v, k);
    ok = bb.complete && bb.min_diff == verify_exhaustive(v, k).min_diff;
  }
  result(5, ok, "branch-and-bound minimum equals exhaustive on all (P4,k) and 50 random sets");
}

// 6. 10^4 random decomposition traces across n <= 8, zero assertion failures.
void criterion6() {
  std::mt19937_64 rng(1009);
  std::uint64_t traces = 0;
  bool ok = true;
  try {
    while (traces < 10000) {
      int n = 1 + static_cast<int>(rng() % 8);
      PointSet p = build_pn(n);
      std::size_t size = 2 + rng() % (p.size() - 1);
      SubsetMask mask(p.size());
      while (mask.popcount() < size) mask.set(rng() % p.size());
      trace_decomposition(p, mask);
      ++traces;
    }
  } catch (const std::exception& e) {
    ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%llu/10000 decomposition traces pass disjointness and node inequalities",
                static_cast<unsigned long long>(traces));
  result(6, ok, buf);
}

// 7. analytic certificates: f1 cover (< 60 s), domain-reduction margin, grid at 30.
void criterion7() {
  auto t0 = Clock::now();
  Certificate f1 = certify_f1_nonneg();
  double f1_dt = seconds_since(t0);
  std::string why;
  bool f1_ok = f1.complete && f1.gaps.empty() && f1_dt < 60.0 &&
               validate_certificate(parse_certificate(serialize_certificate(f1)), &why);
  bool taylor_ok = false;
  for (const auto& b : f1.boxes) {
    if (b.method == BoxMethod::taylor_exclusion && b.lo <= 0.6 && b.hi >= 2.0) taylor_ok = true;
  }
  // f1''(1) enclosure must contain 2p^2 - 3p/2 (~ 0.067)
  Interval p = exponent_p();
  Interval expect = Interval::integer(2) * p * p -
                    Interval::point(1.5) * p;
  Interval f1pp = eval_f1_second(Interval::integer(1));
  bool second_ok = f1pp.lo() <= expect.hi() && f1pp.hi() >= expect.lo() && f1pp.is_positive();

  Certificate dom = certify_domain_reduction();
  bool dom_ok = dom.complete && !dom.boxes.empty() && dom.boxes.front().lb > 0 &&
                validate_certificate(dom);

  GridReport grid = check_tight_inequality_grid(30, 4);
  bool grid_ok = grid.violations == 0 && grid.unresolved == 0;

  bool ok = f1_ok && taylor_ok && second_ok && dom_ok && grid_ok;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "f1 certificate gap-free in %.1f s with Taylor zone; 1+10^p>12^p margin %.4f; "
                "grid max=30: %llu cells, 0 violations",
                f1_dt, dom.boxes.empty() ? 0.0 : dom.boxes.front().lb,
                static_cast<unsigned long long>(grid.cells_checked));
  result(7, ok, buf);
}

// 8. 50 non-power-of-two n <= 4096: diff_count(truncated) < 3 n^{log2 3}.
void criterion8() {
  std::mt19937_64 rng(4096);
  bool ok = true;
  int checked = 0;
  while (checked < 50 && ok) {
    std::int64_t n = 3 + static_cast<std::int64_t>(rng() % 4094);
    if ((n & (n - 1)) == 0) continue;
    std::int64_t dc = diff_count(build_truncated(n));
    Interval bound = Interval::integer(3) * local_bound_interval(n);
    ok = bound.cmp_lo(dc) > 0;  // strict: dc < lower endpoint of 3 n^{log2 3}
    ++checked;
  }
  result(8, ok, "50 truncated sets (n <= 4096, non-powers-of-two): |A-A| < 3 n^{log2 3}");
}

// 9. distance_count(P_j) = (3^j - 1)/2 for j <= 12.
void criterion9() {
  bool ok = true;
  for (int j = 0; j <= 12 && ok; ++j) {
    ok = distance_count(build_pn(j)) == (pow3(j) - 1) / 2;
  }
  result(9, ok, "distance_count(P_j) = (3^j - 1)/2 exactly for j = 0..12");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) {
    std::printf("all 9 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
