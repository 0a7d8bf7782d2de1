#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mpfr.h>

#include <random>
#include <unordered_set>

#include "diffset/construction.hpp"
#include "diffset/core.hpp"

using namespace diffset;

TEST_CASE("embed_base3 examples") {
  CHECK(embed_base3(CoefficientVector{0b000, 3}) == 0);
  CHECK(embed_base3(CoefficientVector{0b001, 3}) == 1);   // bits (1,0,0)
  CHECK(embed_base3(CoefficientVector{0b011, 3}) == 4);   // 3^0 + 3^1
  CHECK(embed_base3(CoefficientVector{0, 0}) == 0);
  CHECK_THROWS_AS(embed_base3(CoefficientVector{0, 40}), PolicyOverflowError);
}

TEST_CASE("embed_base3 injective over the full hypercube") {
  for (int n : {4, 8, 12}) {
    std::unordered_set<std::int64_t> seen;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      CHECK(seen.insert(embed_base3(CoefficientVector{m, n})).second);
    }
    CHECK(seen.size() == (std::size_t{1} << n));
  }
}

TEST_CASE("unembed_base3 inverts embed_base3") {
  for (std::uint64_t m = 0; m < 64; ++m) {
    CoefficientVector v{m, 6};
    CHECK(unembed_base3(embed_base3(v), 6) == v);
  }
  CHECK_THROWS(unembed_base3(2, 3));  // digit 2 is not a 0/1 vector
}

TEST_CASE("difference examples") {
  CoefficientVector u{0b01, 2}, v{0b10, 2};
  DifferenceVector d = difference(u, v);
  CHECK(d.trits[0] == 1);
  CHECK(d.trits[1] == -1);

  DifferenceVector zero = difference(u, u);
  CHECK(zero.canonical_code == code_offset(2));
  for (auto t : zero.trits) CHECK(t == 0);

  CHECK_THROWS_AS(difference(u, CoefficientVector{0, 3}), DimensionError);

  // all pairs of P2 give exactly 9 = 3^2 distinct codes
  PointSet p2 = build_pn(2);
  std::unordered_set<std::int64_t> codes;
  for (const auto& a : p2.elements)
    for (const auto& b : p2.elements) codes.insert(difference(a, b).canonical_code);
  CHECK(codes.size() == 9);
}

TEST_CASE("all trit vectors have distinct canonical codes") {
  const int n = 7;
  std::unordered_set<std::int64_t> codes;
  // enumerate all 3^7 trit vectors via pairs is wasteful; codes are
  // exactly the integers [0, 3^n), so check the pair-generated ones
  // stay injective and in range
  PointSet p = build_pn(n);
  for (const auto& a : p.elements) {
    for (const auto& b : p.elements) {
      auto code = difference(a, b).canonical_code;
      CHECK(code >= 0);
      CHECK(code < pow3(n));
      codes.insert(code);
    }
  }
  CHECK(codes.size() == static_cast<std::size_t>(pow3(n)));
}

TEST_CASE("antisymmetry: difference(u,v) = negate(difference(v,u))") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 2000; ++iter) {
    int n = 1 + static_cast<int>(rng() % 16);
    CoefficientVector u{rng() & ((std::uint64_t{1} << n) - 1), n};
    CoefficientVector v{rng() & ((std::uint64_t{1} << n) - 1), n};
    DifferenceVector duv = difference(u, v);
    DifferenceVector dvu = difference(v, u).negated();
    CHECK(duv.trits == dvu.trits);
    CHECK(duv.canonical_code == dvu.canonical_code);
  }
}

TEST_CASE("threshold_holds power-of-two branch is exact") {
  CHECK(threshold_holds(3, 2));
  CHECK_FALSE(threshold_holds(2, 2));
  CHECK(threshold_holds(9, 4));
  CHECK_FALSE(threshold_holds(8, 4));
  CHECK(threshold_holds(1, 1));
  CHECK(threshold_holds(27, 8));
  CHECK_FALSE(threshold_holds(26, 8));
}

TEST_CASE("threshold_holds interval branch") {
  // 3^{log2 3} ~ 5.7045
  CHECK(threshold_holds(6, 3));
  CHECK_FALSE(threshold_holds(5, 3));
  CHECK(threshold_holds(13, 5));
  CHECK_FALSE(threshold_holds(12, 5));
}

TEST_CASE("threshold_holds agrees with a 200-digit oracle") {
  mpfr_t kf, bound, l3, l2;
  const mpfr_prec_t prec = 680;  // ~200 digits
  mpfr_init2(kf, prec);
  mpfr_init2(bound, prec);
  mpfr_init2(l3, prec);
  mpfr_init2(l2, prec);
  mpfr_set_ui(l3, 3, MPFR_RNDN);
  mpfr_log(l3, l3, MPFR_RNDN);
  mpfr_set_ui(l2, 2, MPFR_RNDN);
  mpfr_log(l2, l2, MPFR_RNDN);
  mpfr_div(l3, l3, l2, MPFR_RNDN);  // log2 3

  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 500; ++iter) {
    std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 64);
    std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 100000);
    mpfr_set_si(kf, k, MPFR_RNDN);
    mpfr_log(bound, kf, MPFR_RNDN);
    mpfr_mul(bound, bound, l3, MPFR_RNDN);
    mpfr_exp(bound, bound, MPFR_RNDN);
    bool oracle = mpfr_cmp_si(bound, m) <= 0;
    CHECK(threshold_holds(m, k) == oracle);
  }
  mpfr_clear(kf);
  mpfr_clear(bound);
  mpfr_clear(l3);
  mpfr_clear(l2);
}

TEST_CASE("local_bound_min known values") {
  CHECK(local_bound_min(1) == 1);
  CHECK(local_bound_min(2) == 3);
  CHECK(local_bound_min(3) == 6);
  CHECK(local_bound_min(4) == 9);
  CHECK(local_bound_min(5) == 13);
  CHECK(local_bound_min(16) == 81);
}

TEST_CASE("subset mask") {
  SubsetMask m = SubsetMask::from_word(0b10110, 5);
  CHECK(m.popcount() == 3);
  CHECK(m.test(1));
  CHECK(!m.test(0));
  CHECK(m.indices() == std::vector<std::size_t>{1, 2, 4});
  CHECK(m.to_string() == "{1,2,4}");
  SubsetMask big(100);
  big.set(99);
  big.set(3);
  CHECK(big.popcount() == 2);
  CHECK(big.test(99));
}

TEST_CASE("trit_at reads base-3 digits of raw differences") {
  PointSet p = build_pn(3);
  for (const auto& a : p.elements) {
    for (const auto& b : p.elements) {
      std::int64_t raw = embed_base3(a) - embed_base3(b);
      DifferenceVector d = difference(a, b);
      for (int j = 0; j < 3; ++j) CHECK(trit_at(raw, 3, j) == d.trits[j]);
    }
  }
}
