#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tautrig/event.hpp"

namespace tautrig {

/// Seeds selected from an event: best first, descending by pt (16 of them
/// in the reference configuration). Ties everywhere in this project break
/// by earlier stream position, so architecture outputs are comparable to
/// the oracle's ordering as plain sequences.
using RankedSeeds = std::vector<Track>;

inline bool ranked_descending(std::span<const Track> seeds) {
  for (std::size_t i = 0; i + 1 < seeds.size(); ++i)
    if (seeds[i].pt < seeds[i + 1].pt) return false;
  return true;
}

namespace oracle {

/// Brute-force stable top-k: full stable sort, take the prefix. Ground
/// truth for every sorter architecture; allowed to be slow.
inline std::vector<Track> top_k(std::span<const Track> candidates, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > candidates.size())
    throw std::invalid_argument("top_k: k exceeds candidate count");
  std::vector<Track> sorted(candidates.begin(), candidates.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Track& a, const Track& b) { return a.pt > b.pt; });
  sorted.resize(static_cast<std::size_t>(k));
  return sorted;
}

inline bool sorted_desc(std::span<const Track> xs) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (xs[i].pt < xs[i + 1].pt) return false;
  return true;
}

/// Stable merge of two descending sequences; ties take from `a` first.
inline std::vector<Track> merge_desc(std::span<const Track> a,
                                     std::span<const Track> b) {
  assert(sorted_desc(a) && "merge_desc: first input not descending");
  assert(sorted_desc(b) && "merge_desc: second input not descending");
  std::vector<Track> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size())
    out.push_back(b[j].pt > a[i].pt ? b[j++] : a[i++]);
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return out;
}

/// Reference for the single-stage 6-sorter: merging a sorted register pair
/// with a sorted 4-block is just a stable 2+4 merge.
inline std::array<Track, 6> sort6_oracle(const std::array<Track, 2>& reg,
                                         const std::array<Track, 4>& inp) {
  if (reg[0].pt < reg[1].pt)
    throw std::invalid_argument("sort6_oracle: register pair not descending");
  if (!sorted_desc(inp))
    throw std::invalid_argument("sort6_oracle: input block not descending");
  const std::vector<Track> merged = merge_desc(reg, inp);
  std::array<Track, 6> out{};
  std::copy(merged.begin(), merged.end(), out.begin());
  return out;
}

}  // namespace oracle

/// The acceptance-level equality between two seed sequences: identical pt
/// sequences, and within every run of equal pt the same multiset of
/// origins (the order inside a tie run is not contractual).
inline bool seeds_match_stable(std::span<const Track> got,
                               std::span<const Track> want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i].pt != want[i].pt) return false;
  std::size_t i = 0;
  while (i < got.size()) {
    std::size_t j = i + 1;
    while (j < got.size() && got[j].pt == got[i].pt) ++j;
    std::vector<TrackOrigin> a, b;
    for (std::size_t k = i; k < j; ++k) {
      a.push_back(got[k].origin);
      b.push_back(want[k].origin);
    }
    auto key = [](const TrackOrigin& o) { return (o.region << 8) | o.slot; };
    auto lt = [&](const TrackOrigin& x, const TrackOrigin& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    if (!std::equal(a.begin(), a.end(), b.begin(),
                    [](const TrackOrigin& x, const TrackOrigin& y) { return x == y; }))
      return false;
    i = j;
  }
  return true;
}

}  // namespace tautrig
