#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diffset/interval.hpp"

namespace diffset {

// Cached double enclosure endpoints of t^p (p = log_4 3) for integer t.
class PowPCache {
 public:
  explicit PowPCache(mpfr_prec_t prec = 96);
  double lb(std::int64_t t);
  double ub(std::int64_t t);

 private:
  void extend(std::int64_t t);
  mpfr_prec_t prec_;
  Interval p_;
  std::vector<std::pair<double, double>> table_;
};

// True iff interval arithmetic proves a^p + b^p > (a+b)^p, bisecting
// the inputs on inconclusive boxes. Requires a.lo > 0, b.lo > 0.
// Never asserts falsity: an unresolved box just returns false.
bool check_subadditivity(const Interval& a, const Interval& b, int max_depth = 24);

// f(x,gamma) = x^p + x^{2p} + gamma^p - (x+1)^p (x+gamma)^p
Interval eval_f(const Interval& x, const Interval& gamma);
// f0(x) = x^p + x^{2p} - (x^2+x)^p
Interval eval_f0(const Interval& x);
// f0'(x) = p x^{p-1} + 2p x^{2p-1} - p (2x+1) (x^2+x)^{p-1}
Interval eval_f0_prime(const Interval& x);
// f1(x) = x^p + x^{2p} + 1 - (x+1)^{2p}
Interval eval_f1(const Interval& x);
// f1''(x)
Interval eval_f1_second(const Interval& x);
// f1'''(x) = p(p-1)((p-2)x^{p-3} + 4(2p-1)x^{2p-3} - 4(2p-1)(x+1)^{2p-3})
Interval eval_f1_third(const Interval& x);

enum class BoxMethod { interval_positive, taylor_exclusion, analytic_reduction };

std::string box_method_name(BoxMethod m);
BoxMethod box_method_from_string(const std::string& s);

struct CertBox {
  double lo = 0;
  double hi = 0;
  BoxMethod method = BoxMethod::interval_positive;
  double lb = 0;  // verified lower bound of the box's positivity margin
};

struct Certificate {
  std::string claim_id;
  double domain_lo = 0;
  double domain_hi = 0;
  std::vector<CertBox> boxes;
  int max_depth = 0;
  bool complete = true;
  std::vector<std::pair<double, double>> gaps;  // inconclusive boxes
};

// Taylor exclusion zone for the f1 certificate. The lower endpoint is
// an exact double just below 0.6 so the zone covers [0.6, 2] with
// margin; the third-derivative bound still holds there.
inline constexpr double kTaylorZoneLo = 0.59375;
inline constexpr double kTaylorZoneHi = 2.0;
// Certified domain for f1 >= 0; covers the target interval [1/10, 10].
inline constexpr double kF1DomainLo = 0.09375;
inline constexpr double kF1DomainHi = 10.0;

// gamma-reduction support: r(x) = (1+x)^{p/(p-1)} lies in (0,1) on a
// cover of [kF1DomainLo, 10]; recorded as analytic_reduction.
Certificate certify_gamma_reduction();

// f0 >= 0 on [0,10]: f0' > 0 interval-verified on [1e-3, 10]; the
// stretch (0, 1e-3] rides on monotonicity from f0(0) = 0.
Certificate certify_f0_nonneg();

// f1 >= 0 on [kF1DomainLo, 10]: adaptive bisection outside the Taylor
// zone, third-derivative-bounded Taylor exclusion inside it.
Certificate certify_f1_nonneg();

// Endpoint arguments excluding zeros outside (1/10, 10):
// 1 + 10^p > 12^p and the symmetric case.
Certificate certify_domain_reduction();

struct GridReport {
  int max_val = 0;
  std::uint64_t cells_checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t unresolved = 0;
  std::vector<std::array<int, 4>> bad_cells;
};

// Verifies (ac)^p + (ad)^p + (bc)^p >= ((a+b)(c+d))^p over all integer
// cells 0 <= a,b,c,d <= max_val with ac >= bd and at most one of
// a,b,c,d zero. Exact-equality cells (a=b and c=d; b=d=0) are resolved
// by the identity 4^p = 3; the rest by interval arithmetic.
GridReport check_tight_inequality_grid(int max_val, int threads = 1);

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);
// Independently re-checks a parsed certificate: box coverage of the
// claimed domain plus re-verification of every box's method.
bool validate_certificate(const Certificate& cert, std::string* why = nullptr);

}  // namespace diffset
