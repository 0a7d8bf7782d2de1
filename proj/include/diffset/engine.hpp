#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "diffset/core.hpp"

namespace diffset {

// |A - A| over embedded/raw integer values, exact. Always odd.
std::int64_t diff_count(std::span<const std::int64_t> values);
std::int64_t diff_count(const PointSet& a);

// |{a - b : a in A, b in B}|; 0 iff either side is empty.
std::int64_t cross_diff_count(std::span<const std::int64_t> a,
                              std::span<const std::int64_t> b);
std::int64_t cross_diff_count(const PointSet& a, const PointSet& b);

// Number of distinct positive differences: (|A-A| - 1) / 2.
std::int64_t distance_count(std::span<const std::int64_t> values);
std::int64_t distance_count(const PointSet& a);

// Multiplicity histogram keyed by raw difference value; sum = |A|^2.
std::map<std::int64_t, std::int64_t> diff_profile(std::span<const std::int64_t> values);
// Histogram keyed by canonical code for hypercube point sets.
std::map<std::int64_t, std::int64_t> diff_profile_codes(const PointSet& a);

// CSV export: "code,count" rows sorted by code.
std::string profile_csv(const std::map<std::int64_t, std::int64_t>& profile);

}  // namespace diffset
