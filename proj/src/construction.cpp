#include "diffset/construction.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace diffset {

PointSet build_pn(int levels) {
  if (levels < 0) throw std::invalid_argument("build_pn: levels must be >= 0");
  if (levels > kMaxNativeLevels) {
    throw PolicyOverflowError("build_pn: levels exceed native policy");
  }
  PointSet p;
  p.n = levels;
  p.elements.reserve(std::size_t{1} << levels);
  // Ascending mask order coincides with ascending embed_base3 order:
  // the highest differing bit dominates both the binary and the base-3 sum.
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << levels); ++m) {
    p.elements.push_back(CoefficientVector{m, levels});
  }
  return p;
}

PointSet build_truncated(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("build_truncated: n must be >= 1");
  int levels = 0;
  while ((std::int64_t{1} << levels) < n) ++levels;
  PointSet full = build_pn(levels);
  full.elements.resize(static_cast<std::size_t>(n));
  return full;
}

BaselineKind baseline_kind_from_string(const std::string& s) {
  if (s == "arithmetic_progression" || s == "ap") return BaselineKind::arithmetic_progression;
  if (s == "sidon") return BaselineKind::sidon;
  if (s == "random_integers" || s == "random") return BaselineKind::random_integers;
  throw std::invalid_argument("unknown baseline kind: " + s);
}

namespace {

std::vector<std::int64_t> sidon_mian_chowla(std::int64_t n) {
  // Greedy: repeatedly take the smallest integer preserving distinct
  // positive pairwise differences.
  std::vector<std::int64_t> set;
  std::unordered_set<std::int64_t> diffs;  // positive differences used
  std::int64_t candidate = 1;
  while (static_cast<std::int64_t>(set.size()) < n) {
    bool ok = true;
    for (std::int64_t a : set) {
      if (diffs.count(candidate - a)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (std::int64_t a : set) diffs.insert(candidate - a);
      set.push_back(candidate);
    }
    ++candidate;
  }
  return set;
}

}  // namespace

std::vector<std::int64_t> build_baseline(BaselineKind kind, std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("build_baseline: n must be >= 1");
  std::vector<std::int64_t> out;
  switch (kind) {
    case BaselineKind::arithmetic_progression:
      out.reserve(n);
      for (std::int64_t i = 0; i < n; ++i) out.push_back(i);
      break;
    case BaselineKind::sidon:
      out = sidon_mian_chowla(n);
      break;
    case BaselineKind::random_integers: {
      // Plain modulo draw from mt19937_64 so runs are reproducible
      // across platforms (uniform_int_distribution is not portable).
      std::mt19937_64 rng(seed);
      const std::uint64_t range = static_cast<std::uint64_t>(n) * n * n + 1;
      std::unordered_set<std::int64_t> seen;
      while (static_cast<std::int64_t>(out.size()) < n) {
        auto v = static_cast<std::int64_t>(rng() % range);
        if (seen.insert(v).second) out.push_back(v);
      }
      std::sort(out.begin(), out.end());
      break;
    }
  }
  return out;
}

void write_set(std::ostream& out, const SetFile& f) {
  out << "n=" << f.levels << " count=" << f.values.size() << "\n";
  for (std::int64_t v : f.values) out << v << "\n";
}

SetFile read_set(std::istream& in) {
  SetFile f;
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("set file: missing header");
  std::size_t count = 0;
  if (std::sscanf(header.c_str(), "n=%d count=%zu", &f.levels, &count) != 2) {
    throw std::runtime_error("set file: bad header: " + header);
  }
  f.values.reserve(count);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    f.values.push_back(std::stoll(line));
  }
  if (f.values.size() != count) {
    throw std::runtime_error("set file: element count mismatch");
  }
  return f;
}

void write_set_file(const std::string& path, const SetFile& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_set(out, f);
}

SetFile read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_set(in);
}

PointSet to_point_set(const SetFile& f) {
  PointSet p;
  p.n = f.levels;
  p.elements.reserve(f.values.size());
  for (std::int64_t v : f.values) p.elements.push_back(unembed_base3(v, f.levels));
  return p;
}

SetFile to_set_file(const PointSet& p) {
  SetFile f;
  f.levels = p.n;
  f.values = p.values();
  return f;
}

}  // namespace diffset
