#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffset/interval.hpp"

namespace diffset {

// 3^39 is the largest power of three below 2^62; embeddings and
// canonical codes stay in int64_t up to this many generators.
inline constexpr int kMaxNativeLevels = 39;

class PolicyOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an interval comparison cannot be separated within the
// precision-escalation cap.
class UndecidableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 3^e for 0 <= e <= 39.
std::int64_t pow3(int e);

// A vertex of the hypercube {0,1}^n: bit j is the coefficient of
// generator r_{j+1}. Distinct vectors represent distinct reals.
struct CoefficientVector {
  std::uint64_t bits = 0;
  int n = 0;

  bool bit(int j) const { return (bits >> j) & 1u; }
  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

// An element of P_n - P_n as a trit vector over {-1,0,+1}, plus its
// injective base-3 offset encoding sum((trit_j + 1) * 3^j).
struct DifferenceVector {
  std::vector<std::int8_t> trits;
  std::int64_t canonical_code = 0;

  int n() const { return static_cast<int>(trits.size()); }
  DifferenceVector negated() const;
};

// Ordered, duplicate-free ground set sharing one generator count.
struct PointSet {
  int n = 0;
  std::vector<CoefficientVector> elements;

  std::size_t size() const { return elements.size(); }
  // Embedded integer values, in element order.
  std::vector<std::int64_t> values() const;
};

// Bit sequence indexing into a PointSet's elements.
class SubsetMask {
 public:
  SubsetMask() = default;
  SubsetMask(std::size_t nbits);
  static SubsetMask from_word(std::uint64_t word, std::size_t nbits);

  std::size_t size() const { return nbits_; }
  int popcount() const { return popcount_; }
  bool test(std::size_t i) const;
  void set(std::size_t i);
  std::vector<std::size_t> indices() const;
  std::string to_string() const;  // e.g. "{0,2,5}"

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t nbits_ = 0;
  int popcount_ = 0;
};

// sum bits_j * 3^j; injective over all vectors of a given n.
std::int64_t embed_base3(const CoefficientVector& v);

// Inverse of embed_base3 over valid images (all base-3 digits 0/1).
CoefficientVector unembed_base3(std::int64_t value, int n);

// Offset added to a raw embedded difference to form the canonical code:
// (3^n - 1) / 2 = sum 3^j.
std::int64_t code_offset(int n);

DifferenceVector difference(const CoefficientVector& u, const CoefficientVector& v);

// Trit at position j of a raw embedded difference (u - v values).
int trit_at(std::int64_t raw_diff, int n, int j);

// Decides m >= k^{log_2 3} rigorously. Exact when k is a power of two;
// otherwise resolved by interval enclosures with escalating precision.
bool threshold_holds(std::int64_t m, std::int64_t k);

// Smallest integer m with m >= k^{log_2 3} (the local bound for size k).
std::int64_t local_bound_min(std::int64_t k);

// Enclosure of k^{log_2 3} at the given precision.
Interval local_bound_interval(std::int64_t k, mpfr_prec_t prec = Interval::kDefaultPrec);

}  // namespace diffset
