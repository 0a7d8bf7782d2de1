#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mpfr.h>

#include <random>

#include "diffset/interval.hpp"

using diffset::Interval;

namespace {

constexpr mpfr_prec_t kOraclePrec = 340;  // > 100 decimal digits

// Evaluates one binary op at oracle precision (round-to-nearest) and
// checks the interval result contains it.
struct Oracle {
  mpfr_t x, y, z;
  Oracle() {
    mpfr_init2(x, kOraclePrec);
    mpfr_init2(y, kOraclePrec);
    mpfr_init2(z, kOraclePrec);
  }
  ~Oracle() {
    mpfr_clear(x);
    mpfr_clear(y);
    mpfr_clear(z);
  }
  bool contained(const Interval& r) const {
    return mpfr_cmp(r.lo_raw(), z) <= 0 && mpfr_cmp(r.hi_raw(), z) >= 0;
  }
};

double rand_in(std::mt19937_64& rng, double lo, double hi) {
  double v = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1p-53);
  return std::min(std::max(v, lo), hi);
}

}  // namespace

TEST_CASE("arithmetic enclosures contain oracle values on random points") {
  std::mt19937_64 rng(12345);
  Oracle o;
  int checks = 0;
  for (int iter = 0; iter < 20000; ++iter) {
    double a_lo = rand_in(rng, -10, 10);
    double a_hi = a_lo + rand_in(rng, 0, 2);
    double b_lo = rand_in(rng, -10, 10);
    double b_hi = b_lo + rand_in(rng, 0, 2);
    Interval a(a_lo, a_hi), b(b_lo, b_hi);
    double pa = rand_in(rng, a_lo, a_hi);
    double pb = rand_in(rng, b_lo, b_hi);
    mpfr_set_d(o.x, pa, MPFR_RNDN);
    mpfr_set_d(o.y, pb, MPFR_RNDN);

    mpfr_add(o.z, o.x, o.y, MPFR_RNDN);
    if (!o.contained(a + b)) FAIL("add not contained");
    mpfr_sub(o.z, o.x, o.y, MPFR_RNDN);
    if (!o.contained(a - b)) FAIL("sub not contained");
    mpfr_mul(o.z, o.x, o.y, MPFR_RNDN);
    if (!o.contained(a * b)) FAIL("mul not contained");
    checks += 3;
    if (b_lo > 0.01 || b_hi < -0.01) {
      mpfr_div(o.z, o.x, o.y, MPFR_RNDN);
      if (!o.contained(a / b)) FAIL("div not contained");
      ++checks;
    }
    mpfr_exp(o.z, o.x, MPFR_RNDN);
    if (a_hi < 20 && !o.contained(Interval::exp(a))) FAIL("exp not contained");
    ++checks;
    if (a_lo > 0.001) {
      mpfr_log(o.z, o.x, MPFR_RNDN);
      if (!o.contained(Interval::log(a))) FAIL("log not contained");
      ++checks;
    }
  }
  CHECK(checks >= 100000);
}

TEST_CASE("pow enclosures contain oracle values") {
  std::mt19937_64 rng(777);
  Oracle o;
  for (int iter = 0; iter < 20000; ++iter) {
    double b_lo = rand_in(rng, 0.01, 20);
    double b_hi = b_lo + rand_in(rng, 0, 1);
    double e_lo = rand_in(rng, -3, 3);
    double e_hi = e_lo + rand_in(rng, 0, 0.5);
    Interval base(b_lo, b_hi), e(e_lo, e_hi);
    double pb = rand_in(rng, b_lo, b_hi);
    double pe = rand_in(rng, e_lo, e_hi);
    mpfr_set_d(o.x, pb, MPFR_RNDN);
    mpfr_set_d(o.y, pe, MPFR_RNDN);
    mpfr_pow(o.z, o.x, o.y, MPFR_RNDN);
    if (!o.contained(Interval::pow(base, e))) FAIL("pow not contained");
  }
}

TEST_CASE("exponent enclosures are tight and consistent") {
  Interval p = diffset::exponent_p();
  CHECK(p.width() <= 1e-30);
  // independently computed value of ln3/ln4
  mpfr_t truth;
  mpfr_init2(truth, kOraclePrec);
  mpfr_set_str(truth, "0.792481250360578090726869471973908254379907203846240530227876",
               10, MPFR_RNDN);
  CHECK(mpfr_cmp(p.lo_raw(), truth) <= 0);
  CHECK(mpfr_cmp(p.hi_raw(), truth) >= 0);
  mpfr_clear(truth);

  Interval two_p = p + p;
  Interval l23 = diffset::exponent_log2_3();
  CHECK(l23.width() <= 1e-30);
  // the enclosures agree: each is inside a slightly widened copy of the other
  Interval eps(-1e-28, 1e-28);
  CHECK((l23 + eps).encloses(two_p));
  CHECK((two_p + eps).encloses(l23));
}

TEST_CASE("interval basics") {
  Interval a(1.0, 2.0);
  CHECK(a.contains(1.5));
  CHECK(!a.contains(2.5));
  CHECK(a.is_positive());
  CHECK((-a).is_negative());
  CHECK(Interval(-1.0, 1.0).contains_zero());
  CHECK(Interval(-3.0, -1.0).abs().contains(2.0));
  CHECK(Interval(1.0, 2.0).definitely_less(Interval(3.0, 4.0)));
  CHECK(!Interval(1.0, 3.5).definitely_less(Interval(3.0, 4.0)));
  CHECK_THROWS_AS(Interval(-1.0, 1.0) / Interval(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Interval::log(Interval(-1.0, 1.0)), std::domain_error);
  CHECK(Interval::integer(4).cmp_lo(4) == 0);
  CHECK(Interval::integer(4).cmp_hi(3) > 0);
  // 0^e with positive exponent
  Interval z = Interval::pow(Interval(0.0, 2.0), Interval(0.5, 0.6));
  CHECK(z.lo() == 0.0);
  CHECK(z.hi() > 1.0);
}

TEST_CASE("precision cap honors environment override") {
  CHECK(diffset::precision_cap_bits() >= 512 * 10 / 3);
}
