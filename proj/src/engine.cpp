#include "diffset/engine.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace diffset {

namespace {

// Dense bitmap dedup when the difference span is modest, otherwise
// sort-based dedup. Both paths are exact integer arithmetic.
constexpr std::int64_t kDenseSpanLimit = 1 << 27;  // ~134M flags

std::int64_t count_distinct_diffs(std::span<const std::int64_t> a,
                                  std::span<const std::int64_t> b) {
  if (a.empty() || b.empty()) return 0;
  auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  const std::int64_t lo = *amin - *bmax;
  const std::int64_t hi = *amax - *bmin;
  const std::int64_t span = hi - lo + 1;
  if (span <= kDenseSpanLimit) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(span), 0);
    std::int64_t count = 0;
    for (std::int64_t x : a) {
      for (std::int64_t y : b) {
        std::uint8_t& flag = seen[static_cast<std::size_t>(x - y - lo)];
        count += 1 - flag;
        flag = 1;
      }
    }
    return count;
  }
  std::vector<std::int64_t> diffs;
  diffs.reserve(a.size() * b.size());
  for (std::int64_t x : a)
    for (std::int64_t y : b) diffs.push_back(x - y);
  std::sort(diffs.begin(), diffs.end());
  return static_cast<std::int64_t>(std::unique(diffs.begin(), diffs.end()) - diffs.begin());
}

}  // namespace

std::int64_t diff_count(std::span<const std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("diff_count: empty set");
  return count_distinct_diffs(values, values);
}

std::int64_t diff_count(const PointSet& a) {
  auto v = a.values();
  return diff_count(v);
}

std::int64_t cross_diff_count(std::span<const std::int64_t> a,
                              std::span<const std::int64_t> b) {
  return count_distinct_diffs(a, b);
}

std::int64_t cross_diff_count(const PointSet& a, const PointSet& b) {
  if (!a.elements.empty() && !b.elements.empty() && a.n != b.n) {
    throw DimensionError("cross_diff_count: mismatched generator counts");
  }
  auto va = a.values();
  auto vb = b.values();
  return cross_diff_count(va, vb);
}

std::int64_t distance_count(std::span<const std::int64_t> values) {
  return (diff_count(values) - 1) / 2;
}

std::int64_t distance_count(const PointSet& a) {
  auto v = a.values();
  return distance_count(v);
}

std::map<std::int64_t, std::int64_t> diff_profile(std::span<const std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("diff_profile: empty set");
  std::map<std::int64_t, std::int64_t> profile;
  for (std::int64_t x : values)
    for (std::int64_t y : values) ++profile[x - y];
  return profile;
}

std::map<std::int64_t, std::int64_t> diff_profile_codes(const PointSet& a) {
  auto v = a.values();
  const std::int64_t offset = code_offset(a.n);
  std::map<std::int64_t, std::int64_t> profile;
  for (std::int64_t x : v)
    for (std::int64_t y : v) ++profile[x - y + offset];
  return profile;
}

std::string profile_csv(const std::map<std::int64_t, std::int64_t>& profile) {
  std::ostringstream out;
  out << "code,count\n";
  for (const auto& [code, count] : profile) out << code << "," << count << "\n";
  return out.str();
}

}  // namespace diffset
