#include "diffset/prover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace diffset {

PowPCache::PowPCache(mpfr_prec_t prec) : prec_(prec), p_(exponent_p(prec)) {
  table_.push_back({0.0, 0.0});  // 0^p = 0
  table_.push_back({1.0, 1.0});  // 1^p = 1
}

void PowPCache::extend(std::int64_t t) {
  while (static_cast<std::int64_t>(table_.size()) <= t) {
    auto v = static_cast<std::int64_t>(table_.size());
    Interval enc = Interval::pow(Interval::integer(v, prec_), p_);
    table_.push_back({enc.lo(), enc.hi()});
  }
}

double PowPCache::lb(std::int64_t t) {
  if (t < 0) throw std::invalid_argument("PowPCache: negative argument");
  extend(t);
  return table_[static_cast<std::size_t>(t)].first;
}

double PowPCache::ub(std::int64_t t) {
  if (t < 0) throw std::invalid_argument("PowPCache: negative argument");
  extend(t);
  return table_[static_cast<std::size_t>(t)].second;
}

namespace {

Interval pow_p(const Interval& x) {
  return Interval::pow(x, exponent_p(x.precision()));
}

Interval pow_expr(const Interval& x, double mul, double add) {
  // x^(mul*p + add)
  const mpfr_prec_t prec = x.precision();
  Interval e = exponent_p(prec) * Interval::point(mul, prec) + Interval::point(add, prec);
  return Interval::pow(x, e);
}

}  // namespace

bool check_subadditivity(const Interval& a, const Interval& b, int max_depth) {
  if (!a.is_positive() || !b.is_positive()) {
    throw std::domain_error("check_subadditivity: requires a.lo > 0 and b.lo > 0");
  }
  Interval lhs = pow_p(a) + pow_p(b);
  Interval rhs = pow_p(a + b);
  if (rhs.definitely_less(lhs)) return true;
  if (max_depth <= 0) return false;
  // Bisect the wider input and require the claim on both halves.
  const Interval& wide = a.width() >= b.width() ? a : b;
  if (wide.width() <= 0) return false;  // point inputs, genuinely inconclusive
  double mid = wide.midpoint();
  Interval left(wide.lo(), mid, wide.precision());
  Interval right(mid, wide.hi(), wide.precision());
  if (&wide == &a) {
    return check_subadditivity(left, b, max_depth - 1) &&
           check_subadditivity(right, b, max_depth - 1);
  }
  return check_subadditivity(a, left, max_depth - 1) &&
         check_subadditivity(a, right, max_depth - 1);
}

Interval eval_f(const Interval& x, const Interval& gamma) {
  Interval p = exponent_p(std::max(x.precision(), gamma.precision()));
  Interval two_p = p + p;
  return Interval::pow(x, p) + Interval::pow(x, two_p) + Interval::pow(gamma, p) -
         Interval::pow(x + Interval::integer(1, x.precision()), p) *
             Interval::pow(x + gamma, p);
}

Interval eval_f0(const Interval& x) {
  return pow_expr(x, 1, 0) + pow_expr(x, 2, 0) - pow_p(x * x + x);
}

Interval eval_f0_prime(const Interval& x) {
  Interval p = exponent_p(x.precision());
  Interval one = Interval::integer(1, x.precision());
  Interval two = Interval::integer(2, x.precision());
  return p * pow_expr(x, 1, -1) + two * p * pow_expr(x, 2, -1) -
         p * (two * x + one) * pow_expr(x * x + x, 1, -1);
}

Interval eval_f1(const Interval& x) {
  Interval one = Interval::integer(1, x.precision());
  return pow_expr(x, 1, 0) + pow_expr(x, 2, 0) + one - pow_expr(x + one, 2, 0);
}

Interval eval_f1_second(const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  Interval p = exponent_p(prec);
  Interval one = Interval::integer(1, prec);
  Interval two = Interval::integer(2, prec);
  Interval two_p = p + p;
  return p * (p - one) * pow_expr(x, 1, -2) +
         two_p * (two_p - one) * (pow_expr(x, 2, -2) - pow_expr(x + one, 2, -2));
}

Interval eval_f1_third(const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  Interval p = exponent_p(prec);
  Interval one = Interval::integer(1, prec);
  Interval two = Interval::integer(2, prec);
  Interval four = Interval::integer(4, prec);
  Interval two_p = p + p;
  return p * (p - one) *
         ((p - two) * pow_expr(x, 1, -3) +
          four * (two_p - one) * (pow_expr(x, 2, -3) - pow_expr(x + one, 2, -3)));
}

std::string box_method_name(BoxMethod m) {
  switch (m) {
    case BoxMethod::interval_positive: return "interval_positive";
    case BoxMethod::taylor_exclusion: return "taylor_exclusion";
    case BoxMethod::analytic_reduction: return "analytic_reduction";
  }
  return "?";
}

BoxMethod box_method_from_string(const std::string& s) {
  if (s == "interval_positive") return BoxMethod::interval_positive;
  if (s == "taylor_exclusion") return BoxMethod::taylor_exclusion;
  if (s == "analytic_reduction") return BoxMethod::analytic_reduction;
  throw std::invalid_argument("unknown box method: " + s);
}

namespace {

constexpr mpfr_prec_t kProverPrec = 96;
constexpr int kBisectDepthCap = 40;

// Adaptive bisection: cover [lo,hi] with boxes on which fn's enclosure
// is strictly positive. Unresolved boxes at the depth cap become gaps.
template <typename Fn>
void cover_positive(Fn&& fn, double lo, double hi, BoxMethod method, Certificate& cert) {
  struct Item {
    double lo, hi;
    int depth;
  };
  std::deque<Item> queue{{lo, hi, 0}};
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    Interval enc = fn(Interval(it.lo, it.hi, kProverPrec));
    if (enc.is_positive()) {
      cert.boxes.push_back({it.lo, it.hi, method, enc.lo()});
      cert.max_depth = std::max(cert.max_depth, it.depth);
      continue;
    }
    if (it.depth >= kBisectDepthCap) {
      cert.gaps.push_back({it.lo, it.hi});
      cert.complete = false;
      continue;
    }
    double mid = 0.5 * (it.lo + it.hi);
    queue.push_back({it.lo, mid, it.depth + 1});
    queue.push_back({mid, it.hi, it.depth + 1});
  }
  std::sort(cert.boxes.begin(), cert.boxes.end(),
            [](const CertBox& a, const CertBox& b) { return a.lo < b.lo; });
}

// |fn| < bound over an adaptive cover of [lo,hi].
template <typename Fn>
bool verify_abs_bound(Fn&& fn, double lo, double hi, double bound, int depth = 0) {
  Interval enc = fn(Interval(lo, hi, kProverPrec));
  if (enc.abs().hi() < bound) return true;
  if (depth >= kBisectDepthCap) return false;
  double mid = 0.5 * (lo + hi);
  return verify_abs_bound(fn, lo, mid, bound, depth + 1) &&
         verify_abs_bound(fn, mid, hi, bound, depth + 1);
}

}  // namespace

Certificate certify_gamma_reduction() {
  Certificate cert;
  cert.claim_id = "gamma_reduction";
  cert.domain_lo = kF1DomainLo;
  cert.domain_hi = 10.0;
  // r(x) = (1+x)^{p/(p-1)} must lie in (0,1); then f(x,.) increases
  // below gamma = x*r/(1-r) > 0 and decreases above, so gamma in {0,1}
  // suffices. The monotonicity calculus itself is recorded, not re-proved.
  Interval p = exponent_p(kProverPrec);
  Interval expo = p / (p - Interval::integer(1, kProverPrec));
  auto one_minus_r = [&](const Interval& x) {
    Interval r = Interval::pow(x + Interval::integer(1, kProverPrec), expo);
    if (!r.is_positive()) throw std::logic_error("gamma_reduction: r not positive");
    return Interval::integer(1, kProverPrec) - r;  // positive iff r < 1
  };
  cover_positive(one_minus_r, cert.domain_lo, cert.domain_hi,
                 BoxMethod::analytic_reduction, cert);
  return cert;
}

Certificate certify_f0_nonneg() {
  Certificate cert;
  cert.claim_id = "f0_nonneg";
  cert.domain_lo = 0.0;
  cert.domain_hi = 10.0;
  const double kPrefix = 0.0009765625;  // 2^-10
  // On (0, 2^-10]: f0 is increasing from f0(0) = 0. There
  // f0'/p >= x^{p-1}(1 - (2x+1)(1+x)^{p-1}) + 2x^{2p-1} and the first
  // term's deficit, at most (1+p)x^p, is beaten by 2x^{2p-1} whenever
  // x^{p-1} >= (1+p)/2, which holds for x <= 1. Recorded, with the
  // numeric premise f0 > 0 at the right endpoint interval-checked.
  Interval at_prefix = eval_f0(Interval::point(kPrefix, kProverPrec));
  cert.boxes.push_back({0.0, kPrefix, BoxMethod::analytic_reduction, at_prefix.lo()});
  if (!at_prefix.is_positive()) {
    cert.complete = false;
    cert.gaps.push_back({0.0, kPrefix});
  }
  cover_positive([](const Interval& x) { return eval_f0_prime(x); }, kPrefix, 10.0,
                 BoxMethod::interval_positive, cert);
  return cert;
}

Certificate certify_f1_nonneg() {
  Certificate cert;
  cert.claim_id = "f1_nonneg";
  cert.domain_lo = kF1DomainLo;
  cert.domain_hi = kF1DomainHi;

  // Strict positivity outside the Taylor zone.
  auto f1 = [](const Interval& x) { return eval_f1(x); };
  cover_positive(f1, cert.domain_lo, kTaylorZoneLo, BoxMethod::interval_positive, cert);
  cover_positive(f1, kTaylorZoneHi, cert.domain_hi, BoxMethod::interval_positive, cert);

  // Taylor exclusion on [kTaylorZoneLo, 2]: around the double root at
  // x = 1 (f1(1) = 0 and f1'(1) = 0 exactly, since 4^p = 3), the
  // second-order term c*(x-1)^2 with c = p^2 - 3p/4 dominates the
  // remainder |f1'''|/6 * |x-1|^3 whenever |x-1| < 6c/0.1, which covers
  // the whole zone.
  bool taylor_ok = true;
  Interval one = Interval::integer(1, kProverPrec);
  Interval f1_at_1 = eval_f1(one);
  Interval f1pp_at_1 = eval_f1_second(one);
  Interval p = exponent_p(kProverPrec);
  Interval coeff = p * p - Interval::point(0.75, kProverPrec) * p;  // f1''(1)/2
  taylor_ok &= f1_at_1.contains_zero() && f1_at_1.width() < 1e-20;
  taylor_ok &= f1pp_at_1.is_positive();
  taylor_ok &= coeff.is_positive();
  // remainder domination radius: 6*coeff/0.1 must exceed the zone radius 1
  Interval radius = Interval::integer(6, kProverPrec) * coeff /
                    Interval::point(0.1, kProverPrec);
  taylor_ok &= radius.cmp_lo(1) > 0;
  taylor_ok &= verify_abs_bound([](const Interval& x) { return eval_f1_third(x); },
                                kTaylorZoneLo, kTaylorZoneHi, 0.1);
  if (taylor_ok) {
    cert.boxes.push_back({kTaylorZoneLo, kTaylorZoneHi, BoxMethod::taylor_exclusion, 0.0});
  } else {
    cert.complete = false;
    cert.gaps.push_back({kTaylorZoneLo, kTaylorZoneHi});
  }
  std::sort(cert.boxes.begin(), cert.boxes.end(),
            [](const CertBox& a, const CertBox& b) { return a.lo < b.lo; });
  return cert;
}

Certificate certify_domain_reduction() {
  Certificate cert;
  cert.claim_id = "domain_reduction";
  cert.domain_lo = 0.0;
  cert.domain_hi = 0.0;  // endpoint arguments, no covered interval

  // x >= 10: (ac)^p + (ad)^p = (1+10^p) m^p > 12^p m^p = (ac+bd+ad)^p m^p-side.
  Interval ten_p = pow_p(Interval::integer(10, kProverPrec));
  Interval twelve_p = pow_p(Interval::integer(12, kProverPrec));
  Interval margin = Interval::integer(1, kProverPrec) + ten_p - twelve_p;
  bool endpoint_ok = margin.is_positive();
  cert.boxes.push_back({10.0, 10.0, BoxMethod::interval_positive, margin.lo()});
  // x <= 1/10: roles of (b,d) and (a,c) swap; same numeric inequality.
  cert.boxes.push_back({0.1, 0.1, BoxMethod::interval_positive, margin.lo()});
  // Monotone extension beyond the endpoint rides on subadditivity.
  bool sub_ok = check_subadditivity(Interval::point(1.0, kProverPrec),
                                    Interval::point(1.0, kProverPrec));
  cert.boxes.push_back({0.0, 0.0, BoxMethod::analytic_reduction, sub_ok ? 1.0 : -1.0});
  if (!endpoint_ok || !sub_ok) {
    cert.complete = false;
    cert.gaps.push_back({0.1, 10.0});
  }
  return cert;
}

namespace {

double sum3_lb(double a, double b, double c) {
  double s = a + b;
  s = std::nextafter(s, -std::numeric_limits<double>::infinity());
  s += c;
  return std::nextafter(s, -std::numeric_limits<double>::infinity());
}

// One grid cell of the tight inequality at escalating precision.
// Returns +1 verified, -1 refuted, 0 unresolved.
int check_cell_slow(long a, long b, long c, long d) {
  for (mpfr_prec_t prec = 256; prec <= 2048; prec *= 2) {
    Interval p = exponent_p(prec);
    auto ipow = [&](long v) { return Interval::pow(Interval::integer(v, prec), p); };
    Interval lhs = ipow(a * c) + ipow(a * d) + ipow(b * c);
    Interval rhs = ipow((a + b) * (c + d));
    if (rhs.definitely_less(lhs)) return 1;
    if (lhs.definitely_less(rhs)) return -1;
  }
  return 0;
}

}  // namespace

GridReport check_tight_inequality_grid(int max_val, int threads) {
  if (max_val < 1) throw std::invalid_argument("check_tight_inequality_grid: max_val >= 1");
  GridReport report;
  report.max_val = max_val;

  PowPCache cache(kProverPrec);
  cache.lb(static_cast<std::int64_t>(2) * max_val * 2 * max_val);  // prefill

  const int t = std::max(1, threads);
  std::vector<GridReport> parts(t);
  std::vector<std::thread> pool;
  auto worker = [&](int w) {
    GridReport& local = parts[w];
    for (long a = w; a <= max_val; a += t) {
      for (long b = 0; b <= max_val; ++b) {
        for (long c = 0; c <= max_val; ++c) {
          for (long d = 0; d <= max_val; ++d) {
            if (a * c < b * d) continue;
            int zeros = (a == 0) + (b == 0) + (c == 0) + (d == 0);
            if (zeros > 1) continue;
            ++local.cells_checked;
            if ((a == b && c == d) || (b == 0 && d == 0)) {
              // exact equality: 3 m^{2p} = (4 m^2)^p since 4^p = 3,
              // and (ac)^p >= (ac)^p
              continue;
            }
            double lhs = sum3_lb(cache.lb(a * c), cache.lb(a * d), cache.lb(b * c));
            double rhs = cache.ub((a + b) * (c + d));
            if (lhs >= rhs) continue;
            switch (check_cell_slow(a, b, c, d)) {
              case 1:
                break;
              case -1:
                ++local.violations;
                local.bad_cells.push_back({static_cast<int>(a), static_cast<int>(b),
                                           static_cast<int>(c), static_cast<int>(d)});
                break;
              default:
                ++local.unresolved;
                local.bad_cells.push_back({static_cast<int>(a), static_cast<int>(b),
                                           static_cast<int>(c), static_cast<int>(d)});
            }
          }
        }
      }
    }
  };
  if (t == 1) {
    worker(0);
  } else {
    for (int w = 0; w < t; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& part : parts) {
    report.cells_checked += part.cells_checked;
    report.violations += part.violations;
    report.unresolved += part.unresolved;
    report.bad_cells.insert(report.bad_cells.end(), part.bad_cells.begin(),
                            part.bad_cells.end());
  }
  return report;
}

std::string serialize_certificate(const Certificate& cert) {
  std::ostringstream out;
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "certificate claim=" << cert.claim_id << " domain=[" << fmt(cert.domain_lo) << ","
      << fmt(cert.domain_hi) << "] max_depth=" << cert.max_depth
      << " status=" << (cert.complete ? "complete" : "incomplete")
      << " boxes=" << cert.boxes.size() << "\n";
  for (const auto& b : cert.boxes) {
    out << "[" << fmt(b.lo) << "," << fmt(b.hi) << "] method=" << box_method_name(b.method)
        << " lb=" << fmt(b.lb) << "\n";
  }
  for (const auto& g : cert.gaps) {
    out << "gap [" << fmt(g.first) << "," << fmt(g.second) << "]\n";
  }
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("certificate: empty input");
  Certificate cert;
  char claim[128] = {0};
  char status[32] = {0};
  std::size_t nboxes = 0;
  if (std::sscanf(line.c_str(), "certificate claim=%127s domain=[%lf,%lf] max_depth=%d status=%31s boxes=%zu",
                  claim, &cert.domain_lo, &cert.domain_hi, &cert.max_depth, status,
                  &nboxes) != 6) {
    throw std::runtime_error("certificate: bad header: " + line);
  }
  cert.claim_id = claim;
  cert.complete = std::string(status) == "complete";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("gap ", 0) == 0) {
      double lo = 0, hi = 0;
      if (std::sscanf(line.c_str(), "gap [%lf,%lf]", &lo, &hi) != 2) {
        throw std::runtime_error("certificate: bad gap line: " + line);
      }
      cert.gaps.push_back({lo, hi});
      continue;
    }
    CertBox b;
    char method[32] = {0};
    if (std::sscanf(line.c_str(), "[%lf,%lf] method=%31s lb=%lf", &b.lo, &b.hi, method,
                    &b.lb) != 4) {
      throw std::runtime_error("certificate: bad box line: " + line);
    }
    b.method = box_method_from_string(method);
    cert.boxes.push_back(b);
  }
  if (cert.boxes.size() != nboxes) throw std::runtime_error("certificate: box count mismatch");
  return cert;
}

namespace {

bool recheck_box(const Certificate& cert, const CertBox& b, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  Interval box(b.lo, b.hi, kProverPrec);
  if (cert.claim_id == "f1_nonneg") {
    if (b.method == BoxMethod::interval_positive) {
      if (!eval_f1(box).is_positive()) return fail("f1 not provably positive on box");
      return true;
    }
    if (b.method == BoxMethod::taylor_exclusion) {
      Interval one = Interval::integer(1, kProverPrec);
      if (!eval_f1(one).contains_zero()) return fail("f1(1) enclosure misses 0");
      if (!eval_f1_second(one).is_positive()) return fail("f1''(1) not positive");
      Interval p = exponent_p(kProverPrec);
      Interval coeff = p * p - Interval::point(0.75, kProverPrec) * p;
      Interval radius = Interval::integer(6, kProverPrec) * coeff /
                        Interval::point(0.1, kProverPrec);
      double zone_radius = std::max(1.0 - b.lo, b.hi - 1.0);
      if (!(radius.lo() > zone_radius)) return fail("Taylor domination radius too small");
      if (!verify_abs_bound([](const Interval& x) { return eval_f1_third(x); }, b.lo, b.hi,
                            0.1)) {
        return fail("third-derivative bound fails on Taylor zone");
      }
      return true;
    }
    return fail("unexpected method for f1_nonneg");
  }
  if (cert.claim_id == "f0_nonneg") {
    if (b.method == BoxMethod::interval_positive) {
      if (!eval_f0_prime(box).is_positive()) return fail("f0' not provably positive on box");
      return true;
    }
    if (b.method == BoxMethod::analytic_reduction) {
      if (b.lo != 0.0) return fail("f0 analytic box must start at 0");
      if (!eval_f0(Interval::point(b.hi, kProverPrec)).is_positive()) {
        return fail("f0 not positive at analytic box endpoint");
      }
      return true;
    }
    return fail("unexpected method for f0_nonneg");
  }
  if (cert.claim_id == "gamma_reduction") {
    Interval p = exponent_p(kProverPrec);
    Interval expo = p / (p - Interval::integer(1, kProverPrec));
    Interval r = Interval::pow(box + Interval::integer(1, kProverPrec), expo);
    if (!r.is_positive()) return fail("r not positive on box");
    if (!(r.hi() < 1.0)) return fail("r not below 1 on box");
    return true;
  }
  if (cert.claim_id == "domain_reduction") {
    if (b.method == BoxMethod::interval_positive) {
      Interval margin = Interval::integer(1, kProverPrec) +
                        pow_p(Interval::integer(10, kProverPrec)) -
                        pow_p(Interval::integer(12, kProverPrec));
      if (!margin.is_positive()) return fail("1 + 10^p > 12^p fails");
      return true;
    }
    if (b.method == BoxMethod::analytic_reduction) {
      if (!check_subadditivity(Interval::point(1.0, kProverPrec),
                               Interval::point(1.0, kProverPrec))) {
        return fail("subadditivity instance fails");
      }
      return true;
    }
    return fail("unexpected method for domain_reduction");
  }
  return fail("unknown claim id: " + cert.claim_id);
}

}  // namespace

bool validate_certificate(const Certificate& cert, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!cert.complete) return fail("certificate marked incomplete");
  if (cert.domain_lo < cert.domain_hi) {
    // Coverage: sorted boxes, no gap between consecutive ones.
    std::vector<CertBox> boxes = cert.boxes;
    std::sort(boxes.begin(), boxes.end(),
              [](const CertBox& a, const CertBox& b) { return a.lo < b.lo; });
    if (boxes.empty()) return fail("no boxes");
    if (boxes.front().lo > cert.domain_lo) return fail("coverage gap at domain start");
    double reach = boxes.front().hi;
    for (std::size_t i = 1; i < boxes.size(); ++i) {
      if (boxes[i].lo > reach) return fail("coverage gap before box " + std::to_string(i));
      reach = std::max(reach, boxes[i].hi);
    }
    if (reach < cert.domain_hi) return fail("coverage gap at domain end");
  }
  for (std::size_t i = 0; i < cert.boxes.size(); ++i) {
    std::string inner;
    if (!recheck_box(cert, cert.boxes[i], &inner)) {
      return fail("box " + std::to_string(i) + ": " + inner);
    }
  }
  return true;
}

}  // namespace diffset
