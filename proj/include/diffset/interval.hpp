#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

namespace diffset {

// Closed interval [lo, hi] with outward-rounded MPFR endpoints.
// Every operation returns an enclosure of the exact image: lower
// endpoints are rounded toward -inf, upper endpoints toward +inf.
class Interval {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 128;

  explicit Interval(mpfr_prec_t prec = kDefaultPrec);
  Interval(double lo, double hi, mpfr_prec_t prec = kDefaultPrec);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  // Exact point intervals (doubles and machine integers are exact).
  static Interval point(double v, mpfr_prec_t prec = kDefaultPrec);
  static Interval integer(long long v, mpfr_prec_t prec = kDefaultPrec);

  mpfr_prec_t precision() const { return prec_; }
  double lo() const;  // rounded down
  double hi() const;  // rounded up
  double width() const;
  double midpoint() const;

  bool contains(double v) const;
  bool contains_zero() const;
  bool encloses(const Interval& other) const;  // other subseteq this
  bool is_positive() const;                    // lo > 0
  bool is_negative() const;                    // hi < 0
  bool definitely_less(const Interval& other) const;  // hi < other.lo

  // Integer comparisons against the whole interval.
  int cmp_lo(long long v) const;  // sign of (lo - v)
  int cmp_hi(long long v) const;  // sign of (hi - v)

  Interval operator-() const;
  Interval abs() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  static Interval exp(const Interval& x);
  static Interval log(const Interval& x);  // requires x.lo > 0
  // base^e computed as exp(e*log(base)); requires base.lo > 0, or
  // base.lo == 0 with e.lo > 0 (then the lower endpoint is 0).
  static Interval pow(const Interval& base, const Interval& e);

  std::string str(int digits = 21) const;  // "[lo,hi]"

  const mpfr_t& lo_raw() const { return lo_; }
  const mpfr_t& hi_raw() const { return hi_; }
  mpfr_t& lo_raw() { return lo_; }
  mpfr_t& hi_raw() { return hi_; }

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

// Enclosure of p = log_4(3), width well below 1e-30 at default precision.
Interval exponent_p(mpfr_prec_t prec = Interval::kDefaultPrec);
// Enclosure of log_2(3) = 2p.
Interval exponent_log2_3(mpfr_prec_t prec = Interval::kDefaultPrec);

// Precision-escalation cap in bits. Defaults to 512 decimal digits;
// the DIFFSET_PRECISION_CAP environment variable (in digits) overrides.
mpfr_prec_t precision_cap_bits();

}  // namespace diffset
