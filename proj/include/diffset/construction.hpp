#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "diffset/core.hpp"

namespace diffset {

// The full hypercube {0,1}^levels, ordered by embed_base3 ascending.
// P_0 = { all-zero vector }; P_j doubles P_{j-1} by the new generator.
PointSet build_pn(int levels);

// First n elements (canonical order) of build_pn(ceil(log2 n)).
PointSet build_truncated(std::int64_t n);

enum class BaselineKind { arithmetic_progression, sidon, random_integers };

BaselineKind baseline_kind_from_string(const std::string& s);

// Integer comparison sets: AP {0..n-1}, Mian-Chowla greedy Sidon set,
// or n distinct pseudorandom draws from [0, n^3] (deterministic per seed).
std::vector<std::int64_t> build_baseline(BaselineKind kind, std::int64_t n,
                                         std::uint64_t seed = 0);

// Line-oriented set file: header "n=<levels> count=<size>", then one
// element per line as its embedded integer in decimal. Baselines use
// levels = 0 and raw integer values.
struct SetFile {
  int levels = 0;
  std::vector<std::int64_t> values;
};

void write_set(std::ostream& out, const SetFile& f);
SetFile read_set(std::istream& in);
void write_set_file(const std::string& path, const SetFile& f);
SetFile read_set_file(const std::string& path);

// Decode a set file with levels > 0 back into a PointSet.
PointSet to_point_set(const SetFile& f);
SetFile to_set_file(const PointSet& p);

}  // namespace diffset
