#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tautrig/event.hpp"
#include "tautrig/instrument.hpp"
#include "tautrig/latency.hpp"
#include "tautrig/spatial_sorter.hpp"  // beats(), SeqTrack

namespace tautrig {

/*
 * Streaming merge sorter: 16 insertion-filled arrays of 9 elements feed a
 * pairwise merge tree (16 -> 8 -> 4 -> 2 -> 1) that keeps only the best
 * 16 elements at every level. Discarded elements are still read from the
 * stream — a node owns its input FIFOs to exhaustion.
 *
 * Cycle model: the fill arrays populate during the 36-cycle ingest (one
 * region per cycle, its four candidates round-robined over the arrays, so
 * each array takes one element every 4th cycle); merging starts only
 * after buffering completes. Each node consumes one input element per
 * cycle, an element produced in cycle c is consumable from c+1, and a
 * node stalls when a head it needs has not arrived. The sorting latency S
 * is the cycle in which the root emits its 16th (final) seed.
 */

inline constexpr int kFillArrays = 16;
inline constexpr int kFillArraySlots = 9;
inline constexpr int kMergeCap = kNumSeeds;

/// Level-1 array: sorted at all times, capacity 9.
template <class E>
struct BasicFillArray {
  std::vector<E> slots;
};
using FillArray = BasicFillArray<Track>;

inline constexpr std::array<const char*, 8> kSiteFillScan = {
    "fill_scan0", "fill_scan1", "fill_scan2", "fill_scan3",
    "fill_scan4", "fill_scan5", "fill_scan6", "fill_scan7"};
inline constexpr const char* kSiteMergeHead = "merge_head";

/// Which level-1 array receives candidate `slot` of region `region_index`:
/// round-robin over the 16 arrays so one region never writes an array twice
/// and a full event fills every array to exactly 9.
inline int fill_array_for(int region_index, int slot) {
  return (kSeedsPerRegion * region_index + slot) % kFillArrays;
}

inline std::array<std::pair<int, Track>, kSeedsPerRegion> distribute(
    int region_index, const std::array<Track, kSeedsPerRegion>& candidates) {
  if (region_index < 0 || region_index >= kNumRegions)
    throw std::out_of_range("region index out of range");
  std::array<std::pair<int, Track>, kSeedsPerRegion> out;
  for (int c = 0; c < kSeedsPerRegion; ++c)
    out[static_cast<std::size_t>(c)] = {fill_array_for(region_index, c),
                                        candidates[static_cast<std::size_t>(c)]};
  return out;
}

/// Shift-style sorted insert; new element lands after any equals already
/// in place.
template <class E>
void insert_sorted(BasicFillArray<E>& a, const E& x,
                   CompareCounter* probe = nullptr) {
  if (a.slots.size() >= kFillArraySlots)
    throw std::length_error("fill array already holds 9 elements");
  std::size_t pos = 0;
  while (pos < a.slots.size()) {
    if (probe) probe->record(kSiteFillScan[pos]);
    if (beats(x, a.slots[pos])) break;
    ++pos;
  }
  a.slots.insert(a.slots.begin() + static_cast<std::ptrdiff_t>(pos), x);
}

template <class E>
struct MergeOutcome {
  std::vector<E> kept;
  int read = 0;
  int discarded = 0;
};

/// Stable merge of two descending sequences keeping at most `cap`
/// elements; everything is read regardless (discards are counted).
template <class E>
MergeOutcome<E> merge_keep_top(std::span<const E> a, std::span<const E> b,
                               int cap, CompareCounter* probe = nullptr) {
#ifndef NDEBUG
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    if (beats(a[i + 1], a[i])) throw std::invalid_argument("merge input a unsorted");
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (beats(b[i + 1], b[i])) throw std::invalid_argument("merge input b unsorted");
#endif
  MergeOutcome<E> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    bool from_a;
    if (i == a.size()) from_a = false;
    else if (j == b.size()) from_a = true;
    else {
      if (probe) probe->record(kSiteMergeHead);
      from_a = !beats(b[j], a[i]);  // ties take from a
    }
    const E& x = from_a ? a[i++] : b[j++];
    ++out.read;
    if (static_cast<int>(out.kept.size()) < cap) out.kept.push_back(x);
    else ++out.discarded;
  }
  return out;
}

/// One node of the tree, steppable a cycle at a time against its two
/// input FIFOs. `expected_*` is how many elements each input stream will
/// carry in total; reads continue past the emission cap.
template <class E>
struct BasicMergeNode {
  int expected_a = 0;
  int expected_b = 0;
  int cap = kMergeCap;
  int taken_a = 0;
  int taken_b = 0;
  int reads = 0;
  int emitted = 0;
  int discarded = 0;

  bool done() const { return taken_a == expected_a && taken_b == expected_b; }

  struct Consumed {
    E elem;
    bool kept;
  };

  /// One merge cycle. Returns the element consumed (kept == whether it was
  /// emitted downstream), or nothing on a stall (a needed head is not
  /// there yet).
  std::optional<Consumed> step(std::deque<E>& qa, std::deque<E>& qb,
                               CompareCounter* probe = nullptr) {
    const bool need_a = taken_a < expected_a;
    const bool need_b = taken_b < expected_b;
    if (!need_a && !need_b) return std::nullopt;
    bool from_a;
    if (need_a && need_b) {
      if (qa.empty() || qb.empty()) return std::nullopt;
      if (probe) probe->record(kSiteMergeHead);
      from_a = !beats(qb.front(), qa.front());
    } else if (need_a) {
      if (qa.empty()) return std::nullopt;
      from_a = true;
    } else {
      if (qb.empty()) return std::nullopt;
      from_a = false;
    }
    E x = from_a ? qa.front() : qb.front();
    (from_a ? qa : qb).pop_front();
    ++(from_a ? taken_a : taken_b);
    ++reads;
    const bool keep = emitted < cap;
    if (keep) ++emitted;
    else ++discarded;
    return Consumed{std::move(x), keep};
  }
};
using MergeNode = BasicMergeNode<Track>;

struct TreeStats {
  std::array<int, kFillArrays> fill_counts{};
  int fill_interval_cycles = 0;  // observed per-array ingest spacing
  std::uint64_t level2_reads = 0;
  int seeds_ready_cycle = 0;  // == S
  int drain_cycle = 0;        // all discard reads finished
  struct NodeStats {
    int level;
    int index;
    int reads;
    int emitted;
    int discarded;
  };
  std::vector<NodeStats> nodes;
};

struct TreeResult {
  RankedSeeds seeds;
  LatencyReport latency;
  TreeStats stats;
};

inline TreeResult run_tree(const Event& e,
                           int buffering_cycles = kDefaultBufferingCycles,
                           CompareCounter* probe = nullptr) {
  TreeResult result;
  TreeStats& stats = result.stats;

  // Ingest: region t arrives in cycle t+1 and its candidates are inserted
  // in that cycle. Track per-array spacing for the stats record.
  std::array<BasicFillArray<SeqTrack>, kFillArrays> arrays;
  std::array<int, kFillArrays> last_insert_cycle{};
  stats.fill_interval_cycles = 0;
  const std::vector<Track> cand = seed_candidates(e);
  for (int t = 0; t < kNumRegions; ++t) {
    const int cycle = t + 1;
    for (int c = 0; c < kSeedsPerRegion; ++c) {
      const int idx = kSeedsPerRegion * t + c;
      const int a = fill_array_for(t, c);
      insert_sorted(arrays[static_cast<std::size_t>(a)],
                    SeqTrack{cand[static_cast<std::size_t>(idx)],
                             static_cast<std::uint32_t>(idx)},
                    probe);
      ++stats.fill_counts[static_cast<std::size_t>(a)];
      if (last_insert_cycle[static_cast<std::size_t>(a)] != 0)
        stats.fill_interval_cycles =
            cycle - last_insert_cycle[static_cast<std::size_t>(a)];
      last_insert_cycle[static_cast<std::size_t>(a)] = cycle;
    }
  }

  // The tree: levels of nodes over FIFOs. fifo[l][k] feeds level l+2's
  // node k/2; level-1 FIFOs are the completed fill arrays, available in
  // full once buffering is over.
  constexpr std::array<int, 4> kNodesPerLevel = {8, 4, 2, 1};
  std::array<std::vector<std::deque<SeqTrack>>, 5> fifos;
  fifos[0].resize(kFillArrays);
  for (int a = 0; a < kFillArrays; ++a)
    for (const SeqTrack& x : arrays[static_cast<std::size_t>(a)].slots)
      fifos[0][static_cast<std::size_t>(a)].push_back(x);
  std::array<std::vector<BasicMergeNode<SeqTrack>>, 4> levels;
  for (int l = 0; l < 4; ++l) {
    levels[static_cast<std::size_t>(l)].resize(
        static_cast<std::size_t>(kNodesPerLevel[static_cast<std::size_t>(l)]));
    fifos[static_cast<std::size_t>(l) + 1].resize(
        static_cast<std::size_t>(kNodesPerLevel[static_cast<std::size_t>(l)]));
    for (auto& n : levels[static_cast<std::size_t>(l)]) {
      const int feed = l == 0 ? kFillArraySlots : kMergeCap;
      n.expected_a = feed;
      n.expected_b = feed;
      n.cap = kMergeCap;
    }
  }

  // Merging begins once buffering completes (and never before the last
  // region has arrived, if B is configured below the ingest length).
  const int merge_start = std::max(buffering_cycles, kNumRegions) + 1;
  int cycle = merge_start - 1;
  std::vector<SeqTrack> root_kept;
  while (true) {
    bool all_done = true;
    for (const auto& lv : levels)
      for (const auto& n : lv)
        if (!n.done()) all_done = false;
    if (all_done) break;
    ++cycle;
    // Two-phase: every node reads this cycle's FIFO state; emissions become
    // visible to consumers next cycle.
    struct Emission {
      std::size_t fifo_level;
      std::size_t fifo_index;
      SeqTrack elem;
    };
    std::vector<Emission> staged;
    for (std::size_t l = 0; l < 4; ++l) {
      for (std::size_t k = 0; k < levels[l].size(); ++k) {
        auto& node = levels[l][k];
        auto got = node.step(fifos[l][2 * k], fifos[l][2 * k + 1], probe);
        if (!got || !got->kept) continue;
        if (l + 1 < 4) {
          staged.push_back(Emission{l + 1, k, std::move(got->elem)});
        } else {
          root_kept.push_back(got->elem);
          if (static_cast<int>(root_kept.size()) == kMergeCap)
            stats.seeds_ready_cycle = cycle;
        }
      }
    }
    for (Emission& em : staged)
      fifos[em.fifo_level][em.fifo_index].push_back(std::move(em.elem));
  }
  stats.drain_cycle = cycle;

  for (int l = 0; l < 4; ++l)
    for (std::size_t k = 0; k < levels[static_cast<std::size_t>(l)].size(); ++k) {
      const auto& n = levels[static_cast<std::size_t>(l)][k];
      stats.nodes.push_back(TreeStats::NodeStats{l + 2, static_cast<int>(k),
                                                 n.reads, n.emitted, n.discarded});
      if (l == 0) stats.level2_reads += static_cast<std::uint64_t>(n.reads);
    }

  result.seeds.reserve(root_kept.size());
  for (const SeqTrack& x : root_kept) result.seeds.push_back(x.track);
  result.latency = make_latency(Architecture::mergetree, buffering_cycles,
                                stats.seeds_ready_cycle);
  return result;
}

}  // namespace tautrig
