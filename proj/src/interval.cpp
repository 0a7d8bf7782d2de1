#include "diffset/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace diffset {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(double lo, double hi, mpfr_prec_t prec) : prec_(prec) {
  if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_d(lo_, lo, MPFR_RNDD);
  mpfr_set_d(hi_, hi, MPFR_RNDU);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    if (prec_ != other.prec_) {
      mpfr_set_prec(lo_, other.prec_);
      mpfr_set_prec(hi_, other.prec_);
      prec_ = other.prec_;
    }
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  std::swap(prec_, other.prec_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point(double v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::integer(long long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, static_cast<long>(v), MPFR_RNDD);
  mpfr_set_si(r.hi_, static_cast<long>(v), MPFR_RNDU);
  return r;
}

double Interval::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

double Interval::midpoint() const { return 0.5 * (lo() + hi()); }

bool Interval::contains(double v) const {
  return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::encloses(const Interval& other) const {
  return mpfr_cmp(lo_, other.lo_) <= 0 && mpfr_cmp(hi_, other.hi_) >= 0;
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::definitely_less(const Interval& other) const {
  return mpfr_cmp(hi_, other.lo_) < 0;
}

int Interval::cmp_lo(long long v) const {
  int c = mpfr_cmp_si(lo_, static_cast<long>(v));
  return (c > 0) - (c < 0);
}

int Interval::cmp_hi(long long v) const {
  int c = mpfr_cmp_si(hi_, static_cast<long>(v));
  return (c > 0) - (c < 0);
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  Interval r(prec_);
  if (mpfr_sgn(lo_) >= 0) {
    r = *this;
  } else if (mpfr_sgn(hi_) <= 0) {
    r = -*this;
  } else {
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(r.hi_, hi_) < 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
  }
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  // lo = min over the four products rounded down
  mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
  if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
  if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
  if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
  // hi = max over the four products rounded up
  mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
  mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
  if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
  if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("Interval: division by interval containing 0");
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
  if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
  mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
  if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
  mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
  if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
  mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
  mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
  if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
  if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Interval Interval::exp(const Interval& x) {
  Interval r(x.prec_);
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("Interval: log requires lo > 0");
  Interval r(x.prec_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(const Interval& base, const Interval& e) {
  if (mpfr_sgn(base.lo_) > 0) {
    return exp(e * log(base));
  }
  if (mpfr_sgn(base.lo_) == 0 && mpfr_sgn(e.lo_) > 0) {
    if (mpfr_sgn(base.hi_) == 0) {
      // 0^e with e > 0
      return Interval(0.0, 0.0, std::max(base.prec_, e.prec_));
    }
    Interval upper(base.prec_);
    mpfr_set(upper.lo_, base.hi_, MPFR_RNDD);
    mpfr_set(upper.hi_, base.hi_, MPFR_RNDU);
    Interval r = exp(e * log(upper));
    mpfr_set_zero(r.lo_, 1);
    return r;
  }
  throw std::domain_error("Interval: pow requires base.lo > 0 (or 0 with e > 0)");
}

std::string Interval::str(int digits) const {
  char* ls = nullptr;
  char* hs = nullptr;
  // mpfr_asprintf with RNDD/RNDU keeps the printed endpoints outward.
  mpfr_asprintf(&ls, "%.*RDg", digits, lo_);
  mpfr_asprintf(&hs, "%.*RUg", digits, hi_);
  std::string out = "[" + std::string(ls) + "," + std::string(hs) + "]";
  mpfr_free_str(ls);
  mpfr_free_str(hs);
  return out;
}

Interval exponent_p(mpfr_prec_t prec) {
  // p = ln 3 / ln 4
  Interval ln3(prec), ln4(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set_ui(t, 3, MPFR_RNDN);
  mpfr_log(ln3.lo_raw(), t, MPFR_RNDD);
  mpfr_log(ln3.hi_raw(), t, MPFR_RNDU);
  mpfr_set_ui(t, 4, MPFR_RNDN);
  mpfr_log(ln4.lo_raw(), t, MPFR_RNDD);
  mpfr_log(ln4.hi_raw(), t, MPFR_RNDU);
  mpfr_clear(t);
  return ln3 / ln4;
}

Interval exponent_log2_3(mpfr_prec_t prec) {
  Interval ln3(prec), ln2(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set_ui(t, 3, MPFR_RNDN);
  mpfr_log(ln3.lo_raw(), t, MPFR_RNDD);
  mpfr_log(ln3.hi_raw(), t, MPFR_RNDU);
  mpfr_set_ui(t, 2, MPFR_RNDN);
  mpfr_log(ln2.lo_raw(), t, MPFR_RNDD);
  mpfr_log(ln2.hi_raw(), t, MPFR_RNDU);
  mpfr_clear(t);
  return ln3 / ln2;
}

mpfr_prec_t precision_cap_bits() {
  long digits = 512;
  if (const char* env = std::getenv("DIFFSET_PRECISION_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 16) digits = v;
  }
  // bits per decimal digit = log2(10) ~ 3.33
  return static_cast<mpfr_prec_t>(digits * 10 / 3 + 8);
}

}  // namespace diffset
