#include "diffset/core.hpp"

#include <bit>

namespace diffset {

std::int64_t pow3(int e) {
  if (e < 0 || e > kMaxNativeLevels) {
    throw PolicyOverflowError("pow3: exponent " + std::to_string(e) +
                              " outside native range [0," + std::to_string(kMaxNativeLevels) + "]");
  }
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

DifferenceVector DifferenceVector::negated() const {
  DifferenceVector r;
  r.trits.reserve(trits.size());
  for (std::int8_t t : trits) r.trits.push_back(static_cast<std::int8_t>(-t));
  r.canonical_code = 2 * code_offset(n()) - canonical_code;
  return r;
}

std::vector<std::int64_t> PointSet::values() const {
  std::vector<std::int64_t> v;
  v.reserve(elements.size());
  for (const auto& e : elements) v.push_back(embed_base3(e));
  return v;
}

SubsetMask::SubsetMask(std::size_t nbits)
    : words_((nbits + 63) / 64, 0), nbits_(nbits) {}

SubsetMask SubsetMask::from_word(std::uint64_t word, std::size_t nbits) {
  SubsetMask m(nbits);
  if (nbits < 64 && (word >> nbits) != 0) {
    throw std::invalid_argument("SubsetMask: word has bits beyond nbits");
  }
  if (!m.words_.empty()) m.words_[0] = word;
  m.popcount_ = std::popcount(word);
  return m;
}

bool SubsetMask::test(std::size_t i) const {
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void SubsetMask::set(std::size_t i) {
  std::uint64_t& w = words_[i / 64];
  std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (!(w & bit)) {
    w |= bit;
    ++popcount_;
  }
}

std::vector<std::size_t> SubsetMask::indices() const {
  std::vector<std::size_t> idx;
  idx.reserve(popcount_);
  for (std::size_t i = 0; i < nbits_; ++i)
    if (test(i)) idx.push_back(i);
  return idx;
}

std::string SubsetMask::to_string() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t i : indices()) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

std::int64_t embed_base3(const CoefficientVector& v) {
  if (v.n < 0 || v.n > kMaxNativeLevels) {
    throw PolicyOverflowError("embed_base3: n = " + std::to_string(v.n) +
                              " exceeds native policy (" + std::to_string(kMaxNativeLevels) + ")");
  }
  std::int64_t r = 0;
  std::int64_t p = 1;
  for (int j = 0; j < v.n; ++j) {
    if (v.bit(j)) r += p;
    p *= 3;
  }
  return r;
}

CoefficientVector unembed_base3(std::int64_t value, int n) {
  if (n < 0 || n > kMaxNativeLevels) {
    throw PolicyOverflowError("unembed_base3: n outside native policy");
  }
  CoefficientVector v{0, n};
  for (int j = 0; j < n; ++j) {
    int digit = static_cast<int>(value % 3);
    if (digit == 2) throw std::invalid_argument("unembed_base3: digit 2 is not a coefficient vector");
    if (digit == 1) v.bits |= std::uint64_t{1} << j;
    value /= 3;
  }
  if (value != 0) throw std::invalid_argument("unembed_base3: value too large for n");
  return v;
}

std::int64_t code_offset(int n) { return (pow3(n) - 1) / 2; }

DifferenceVector difference(const CoefficientVector& u, const CoefficientVector& v) {
  if (u.n != v.n) throw DimensionError("difference: mismatched generator counts");
  DifferenceVector d;
  d.trits.resize(u.n);
  std::int64_t code = 0;
  std::int64_t p = 1;
  for (int j = 0; j < u.n; ++j) {
    int t = static_cast<int>(u.bit(j)) - static_cast<int>(v.bit(j));
    d.trits[j] = static_cast<std::int8_t>(t);
    code += (t + 1) * p;
    p *= 3;
  }
  d.canonical_code = code;
  return d;
}

int trit_at(std::int64_t raw_diff, int n, int j) {
  std::int64_t code = raw_diff + code_offset(n);
  return static_cast<int>((code / pow3(j)) % 3) - 1;
}

namespace {

bool is_power_of_two(std::int64_t k) { return k > 0 && (k & (k - 1)) == 0; }

}  // namespace

bool threshold_holds(std::int64_t m, std::int64_t k) {
  if (m < 1 || k < 1) throw std::invalid_argument("threshold_holds: m,k must be >= 1");
  if (is_power_of_two(k)) {
    int s = std::bit_width(static_cast<std::uint64_t>(k)) - 1;
    // m < 2^62 < 3^40, so k^{log2 3} = 3^s exceeds any m once s > 39.
    if (s > kMaxNativeLevels) return false;
    return m >= pow3(s);
  }
  const mpfr_prec_t cap = precision_cap_bits();
  for (mpfr_prec_t prec = 64; prec <= cap; prec *= 2) {
    Interval bound = local_bound_interval(k, prec);
    if (bound.cmp_hi(m) <= 0) return true;   // m >= hi >= k^{log2 3}
    if (bound.cmp_lo(m) > 0) return false;   // m < lo <= k^{log2 3}
  }
  throw UndecidableError("threshold_holds: enclosure of k^{log2 3} cannot separate m=" +
                         std::to_string(m) + ", k=" + std::to_string(k) +
                         " within the precision cap");
}

std::int64_t local_bound_min(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("local_bound_min: k must be >= 1");
  if (is_power_of_two(k)) {
    int s = std::bit_width(static_cast<std::uint64_t>(k)) - 1;
    return pow3(s);  // throws PolicyOverflowError past the native range
  }
  const mpfr_prec_t cap = precision_cap_bits();
  for (mpfr_prec_t prec = 64; prec <= cap; prec *= 2) {
    Interval bound = local_bound_interval(k, prec);
    mpfr_t c;
    mpfr_init2(c, prec);
    mpfr_ceil(c, bound.lo_raw());
    long clo = mpfr_get_si(c, MPFR_RNDN);
    mpfr_ceil(c, bound.hi_raw());
    long chi = mpfr_get_si(c, MPFR_RNDN);
    mpfr_clear(c);
    // k^{log2 3} is irrational for k not a power of two, so the two
    // ceilings agree once the enclosure is narrow enough.
    if (clo == chi) return clo;
  }
  throw UndecidableError("local_bound_min: cannot resolve ceiling for k=" + std::to_string(k));
}

Interval local_bound_interval(std::int64_t k, mpfr_prec_t prec) {
  return Interval::pow(Interval::integer(k, prec), exponent_log2_3(prec));
}

}  // namespace diffset
