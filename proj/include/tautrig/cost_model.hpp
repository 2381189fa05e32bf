#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tautrig/candidate_select.hpp"
#include "tautrig/instrument.hpp"
#include "tautrig/latency.hpp"
#include "tautrig/merge_tree.hpp"
#include "tautrig/spatial_sorter.hpp"

namespace tautrig {

/*
 * Hardware-proxy accounting. Comparator counts are measured, not quoted:
 * each comparison in the sorter networks goes through a labelled site,
 * and the static figures below come from driving one cell of each kind
 * over an exhaustive small domain and counting the distinct sites that
 * fire. Flip-flop/LUT style area numbers are out of scope by design.
 */

struct CompareStats {
  Architecture architecture = Architecture::spatial;
  struct Row {
    std::string cell_kind;
    int cells = 0;
    int comparators_per_cell = 0;
    int total = 0;
  };
  std::vector<Row> rows;
  // Optional dynamic measurement (total comparisons over measured events).
  std::uint64_t dynamic_compares = 0;
  std::uint64_t dynamic_events = 0;
};

namespace detail {

inline Track bare_track(int pt) {
  Track t;
  t.pt = static_cast<std::uint16_t>(pt);
  return t;
}

/// Distinct comparator sites of one single-register cell, measured over
/// every (curr, sorted 4-block) pattern with values in {0..4}, plus the
/// empty-register cases.
inline int measure_insertion_cell_sites() {
  CompareCounter probe;
  for (int curr = -1; curr < 5; ++curr) {  // -1: empty register
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b <= a; ++b)
        for (int c = 0; c <= b; ++c)
          for (int d = 0; d <= c; ++d) {
            BasicInsertionCell<Track> cell;
            if (curr >= 0) cell.curr = bare_track(curr);
            Block4 in;
            in.slots = {bare_track(a), bare_track(b), bare_track(c),
                        bare_track(d)};
            cell_step(cell, in, &probe);
          }
  }
  return static_cast<int>(probe.distinct_sites());
}

/// Distinct comparator sites of one pair cell (the 6-sorter), same domain.
inline int measure_pair_cell_sites() {
  CompareCounter probe;
  for (int r0 = 0; r0 < 5; ++r0)
    for (int r1 = 0; r1 <= r0; ++r1)
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b <= a; ++b)
          for (int c = 0; c <= b; ++c)
            for (int d = 0; d <= c; ++d) {
              BasicPairCell<Track> cell;
              cell.reg0 = bare_track(r0);
              cell.reg1 = bare_track(r1);
              Block4 in;
              in.slots = {bare_track(a), bare_track(b), bare_track(c),
                          bare_track(d)};
              pair_cell_step(cell, in, &probe);
            }
  return static_cast<int>(probe.distinct_sites());
}

/// Distinct scan sites of one fill array driven to capacity with inputs
/// that force full traversal.
inline int measure_fill_array_sites() {
  CompareCounter probe;
  BasicFillArray<Track> a;
  for (int i = 0; i < kFillArraySlots; ++i)
    insert_sorted(a, bare_track(100 - i), &probe);
  return static_cast<int>(probe.distinct_sites());
}

inline int measure_merge_node_sites() {
  CompareCounter probe;
  std::vector<Track> a, b;
  for (int i = 0; i < kFillArraySlots; ++i) {
    a.push_back(bare_track(90 - i));
    b.push_back(bare_track(91 - i));
  }
  merge_keep_top<Track>(a, b, kMergeCap, &probe);
  return static_cast<int>(probe.distinct_sites());
}

}  // namespace detail

inline CompareStats static_costs(Architecture arch) {
  CompareStats s;
  s.architecture = arch;
  switch (arch) {
    case Architecture::spatial: {
      const int per = detail::measure_insertion_cell_sites();
      s.rows.push_back({"insertion_cell", kNumSeeds, per, kNumSeeds * per});
      return s;
    }
    case Architecture::modified: {
      const int per = detail::measure_pair_cell_sites();
      s.rows.push_back({"pair_cell", kNumSeeds / 2, per, kNumSeeds / 2 * per});
      return s;
    }
    case Architecture::mergetree: {
      const int fill = detail::measure_fill_array_sites();
      const int node = detail::measure_merge_node_sites();
      constexpr int kNodes = 8 + 4 + 2 + 1;
      s.rows.push_back({"fill_array", kFillArrays, fill, kFillArrays * fill});
      s.rows.push_back({"merge_node", kNodes, node, kNodes * node});
      return s;
    }
  }
  throw std::invalid_argument("unknown architecture tag");
}

/// Comma-separated cost table: static comparator rows, any dynamic
/// measurements, selector fan-in rows per addressing mode, then the
/// qualitative claims the measurements support. Pure function of its
/// inputs; empty inputs give an empty report.
inline std::string cost_report(
    const std::vector<CompareStats>& compare_stats,
    const std::vector<std::pair<std::string, SelectorStats>>& selector_stats) {
  std::ostringstream os;
  if (!compare_stats.empty()) {
    os << "arch,cell_kind,cells,comparators_per_cell,total\n";
    for (const CompareStats& cs : compare_stats)
      for (const CompareStats::Row& r : cs.rows)
        os << to_string(cs.architecture) << ',' << r.cell_kind << ',' << r.cells
           << ',' << r.comparators_per_cell << ',' << r.total << '\n';
    bool any_dynamic = false;
    for (const CompareStats& cs : compare_stats)
      if (cs.dynamic_events > 0) any_dynamic = true;
    if (any_dynamic) {
      os << "arch,dynamic_compares,events\n";
      for (const CompareStats& cs : compare_stats)
        if (cs.dynamic_events > 0)
          os << to_string(cs.architecture) << ',' << cs.dynamic_compares << ','
             << cs.dynamic_events << '\n';
    }
  }
  if (!selector_stats.empty()) {
    os << "mode,site,fan_in,count\n";
    for (const auto& [mode, stats] : selector_stats)
      for (const auto& [site, s] : stats.sites)
        os << mode << ',' << site << ',' << s.fan_in << ',' << s.count << '\n';
  }
  // Claims the inputs can support.
  std::ostringstream claims;
  {
    int spatial_cells = 0, modified_cells = 0;
    for (const CompareStats& cs : compare_stats)
      for (const CompareStats::Row& r : cs.rows) {
        if (cs.architecture == Architecture::spatial) spatial_cells += r.cells;
        if (cs.architecture == Architecture::modified) modified_cells += r.cells;
      }
    if (spatial_cells > 0 && modified_cells > 0)
      claims << "modified_cells_lt_spatial," << modified_cells << ','
             << spatial_cells << ','
             << (modified_cells < spatial_cells ? "PASS" : "FAIL") << '\n';
    const SelectorStats* parity = nullptr;
    const SelectorStats* naive = nullptr;
    for (const auto& [mode, stats] : selector_stats) {
      if (mode == "parity") parity = &stats;
      if (mode == "naive") naive = &stats;
    }
    if (parity && naive)
      claims << "parity_max_fanin_lt_naive," << parity->max_fan_in() << ','
             << naive->max_fan_in() << ','
             << (parity->max_fan_in() < naive->max_fan_in() ? "PASS" : "FAIL")
             << '\n';
  }
  if (!claims.str().empty()) os << "claim,lhs,rhs,verdict\n" << claims.str();
  return os.str();
}

}  // namespace tautrig
