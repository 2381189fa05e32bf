#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tautrig/event.hpp"
#include "tautrig/grid.hpp"
#include "tautrig/oracle.hpp"

namespace tautrig {

/*
 * Candidate-region addressing. A seed's 2x2 neighborhood always pairs one
 * even-indexed row with one odd-indexed row and one even column with one
 * odd column — except that the torus seam makes rows {8,0} a pair of two
 * even indices, so row 8 is stored separately and substituted into either
 * role. Regions are therefore buffered as:
 *
 *   paired[p][j] : grid row 2p at columns j=0..3 (even rows, left half)
 *                  grid row 2p+1 at columns j=4..7 (odd rows, right half)
 *   last_row[c]  : grid row 8
 *
 * which turns neighborhood addressing into two 4-way row selections, one
 * 2-way last-row substitution and two 2-way column selections, instead of
 * four arbitrary 36-way lookups. Every data-dependent selection records
 * its fan-in into SelectorStats; the naive path records 36 per fetch.
 */

/// Fan-in bookkeeping per named selection site.
struct SelectorStats {
  struct Site {
    int fan_in = 0;
    std::uint64_t count = 0;
  };
  std::map<std::string, Site, std::less<>> sites;

  void record(std::string_view site, int fan_in) {
    auto it = sites.find(site);
    if (it == sites.end()) {
      sites.emplace(std::string(site), Site{fan_in, 1});
      return;
    }
    if (it->second.fan_in != fan_in)
      throw std::logic_error("selection site re-recorded with different width");
    ++it->second.count;
  }

  int max_fan_in() const {
    int m = 0;
    for (const auto& [name, s] : sites) m = std::max(m, s.fan_in);
    return m;
  }

  /// Exact-total merge; lets workers keep private stats and combine.
  void merge(const SelectorStats& other) {
    for (const auto& [name, s] : other.sites) {
      auto it = sites.find(name);
      if (it == sites.end()) sites.emplace(name, s);
      else {
        if (it->second.fan_in != s.fan_in)
          throw std::logic_error("selection site merged with different width");
        it->second.count += s.count;
      }
    }
  }
};

inline constexpr const char* kSiteRowEven = "row_even";
inline constexpr const char* kSiteRowOdd = "row_odd";
inline constexpr const char* kSiteLastRow = "last_row";
inline constexpr const char* kSiteColEven = "col_even";
inline constexpr const char* kSiteColOdd = "col_odd";
inline constexpr const char* kSiteNaiveFetch = "region_fetch";

enum class RowRole : std::uint8_t { even, odd };

/// Parity-encoded address of a 2x2 neighborhood: an even-row index, an
/// odd-row index, last-row substitution flags, and per-parity column
/// indices. Decodes to exactly 4 distinct regions.
struct RegionSelector {
  int even_row_sel = 0;              // among grid rows 0,2,4,6
  int odd_row_sel = 0;               // among grid rows 1,3,5,7
  bool use_last_row = false;         // substitute row 8 ...
  RowRole last_row_role = RowRole::odd;  // ... into this role
  int even_col_sel = 0;              // among columns 0,2
  int odd_col_sel = 0;               // among columns 1,3
  bool operator==(const RegionSelector&) const = default;
};

/// Buffered event, grid-shaped (see file comment).
struct TrackGrid {
  std::array<std::array<Region, 8>, 4> paired{};
  std::array<Region, kGridCols> last_row{};
};

/// The four selected region blocks, [0]=even column, [1]=odd column per
/// row role.
struct Block2x2 {
  std::array<Region, 2> row_even{};
  std::array<Region, 2> row_odd{};
  bool operator==(const Block2x2&) const = default;
};

inline TrackGrid build_grid(const Event& e) {
  TrackGrid g;
  for (const Region& r : e.regions) {
    const GridCoord c = coord_of(r.index);
    if (c.row == kGridRows - 1)
      g.last_row[static_cast<std::size_t>(c.col)] = r;
    else
      g.paired[static_cast<std::size_t>(c.row / 2)]
              [static_cast<std::size_t>((c.row % 2) * kGridCols + c.col)] = r;
  }
  return g;
}

namespace detail {

/// Split a neighborhood's two rows into the even/odd roles. Row 8 takes
/// whichever role its partner leaves free.
inline std::pair<int, int> row_roles(int row_a, int row_b) {
  const int lo = std::min(row_a, row_b), hi = std::max(row_a, row_b);
  if (hi == kGridRows - 1) {
    if (lo == 0) return {lo, hi};              // {0,8}: 8 plays odd
    if (lo == kGridRows - 2) return {hi, lo};  // {7,8}: 8 plays even
    throw std::invalid_argument("rows are not adjacent on the torus");
  }
  if (hi - lo != 1) throw std::invalid_argument("rows are not adjacent");
  return lo % 2 == 0 ? std::pair{lo, hi} : std::pair{hi, lo};
}

}  // namespace detail

inline std::array<int, 4> decode(const RegionSelector& s) {
  const int even_row = s.use_last_row && s.last_row_role == RowRole::even
                           ? kGridRows - 1
                           : 2 * s.even_row_sel;
  const int odd_row = s.use_last_row && s.last_row_role == RowRole::odd
                          ? kGridRows - 1
                          : 2 * s.odd_row_sel + 1;
  const int even_col = 2 * s.even_col_sel;
  const int odd_col = 2 * s.odd_col_sel + 1;
  std::array<int, 4> out{
      index_of({even_row, even_col}), index_of({even_row, odd_col}),
      index_of({odd_row, even_col}), index_of({odd_row, odd_col})};
  std::sort(out.begin(), out.end());
  return out;
}

/// Encode a 2x2 neighborhood (as produced by neighborhood()) into its
/// parity address. Unused selector fields are canonically zeroed so the
/// encoding is unique. Rejects region sets that are not a 2x2 block of
/// adjacent rows (torus-wrapped) and adjacent columns.
inline RegionSelector selector_from_neighborhood(const std::array<int, 4>& regions) {
  std::array<GridCoord, 4> cs;
  for (int i = 0; i < 4; ++i) cs[static_cast<std::size_t>(i)] = coord_of(regions[static_cast<std::size_t>(i)]);
  std::array<int, 2> rows{cs[0].row, -1};
  std::array<int, 2> cols{cs[0].col, -1};
  for (const GridCoord& c : cs) {
    if (c.row != rows[0]) {
      if (rows[1] != -1 && rows[1] != c.row)
        throw std::invalid_argument("neighborhood spans more than two rows");
      rows[1] = c.row;
    }
    if (c.col != cols[0]) {
      if (cols[1] != -1 && cols[1] != c.col)
        throw std::invalid_argument("neighborhood spans more than two columns");
      cols[1] = c.col;
    }
  }
  if (rows[1] == -1 || cols[1] == -1)
    throw std::invalid_argument("neighborhood does not span a 2x2 block");
  if (std::abs(cols[0] - cols[1]) != 1)
    throw std::invalid_argument("columns are not adjacent");
  // All four row x col combinations must be present.
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const int want = index_of({rows[static_cast<std::size_t>(r)],
                                 cols[static_cast<std::size_t>(c)]});
      if (std::find(regions.begin(), regions.end(), want) == regions.end())
        throw std::invalid_argument("region set is not a full 2x2 block");
    }

  const auto [even_row, odd_row] = detail::row_roles(rows[0], rows[1]);
  RegionSelector s;
  s.use_last_row = even_row == kGridRows - 1 || odd_row == kGridRows - 1;
  if (s.use_last_row)
    s.last_row_role = even_row == kGridRows - 1 ? RowRole::even : RowRole::odd;
  s.even_row_sel = even_row == kGridRows - 1 ? 0 : even_row / 2;
  s.odd_row_sel = odd_row == kGridRows - 1 ? 0 : (odd_row - 1) / 2;
  const int even_col = cols[0] % 2 == 0 ? cols[0] : cols[1];
  const int odd_col = cols[0] % 2 == 0 ? cols[1] : cols[0];
  s.even_col_sel = even_col / 2;
  s.odd_col_sel = (odd_col - 1) / 2;
  return s;
}

/// Hardware-shaped fetch: 4-way row selections per half, 2-way last-row
/// substitution, then 2-way column selections out of the 2x2 staging
/// copies. Records fan-ins {4,4,2,2,2} per call.
inline Block2x2 select_parity(const TrackGrid& g, const RegionSelector& s,
                              SelectorStats& stats) {
  // Row stage.
  stats.record(kSiteRowEven, 4);
  const auto& even_half = g.paired[static_cast<std::size_t>(s.even_row_sel)];
  stats.record(kSiteRowOdd, 4);
  const auto& odd_half = g.paired[static_cast<std::size_t>(s.odd_row_sel)];
  std::array<Region, kGridCols> row_even{even_half[0], even_half[1],
                                         even_half[2], even_half[3]};
  std::array<Region, kGridCols> row_odd{odd_half[4], odd_half[5], odd_half[6],
                                        odd_half[7]};
  // Last-row substitution (the mux exists whether or not it is taken).
  stats.record(kSiteLastRow, 2);
  if (s.use_last_row)
    (s.last_row_role == RowRole::even ? row_even : row_odd) = g.last_row;
  // Staging copies: even columns land in column 0, odd in column 1.
  std::array<std::array<Region, 2>, 2> t_row_even{
      {{row_even[0], row_even[1]}, {row_even[2], row_even[3]}}};
  std::array<std::array<Region, 2>, 2> t_row_odd{
      {{row_odd[0], row_odd[1]}, {row_odd[2], row_odd[3]}}};
  // Column stage: one control per parity, applied to both staging copies.
  stats.record(kSiteColEven, 2);
  stats.record(kSiteColOdd, 2);
  Block2x2 out;
  out.row_even = {t_row_even[static_cast<std::size_t>(s.even_col_sel)][0],
                  t_row_even[static_cast<std::size_t>(s.odd_col_sel)][1]};
  out.row_odd = {t_row_odd[static_cast<std::size_t>(s.even_col_sel)][0],
                 t_row_odd[static_cast<std::size_t>(s.odd_col_sel)][1]};
  return out;
}

/// Baseline: fetch the four regions through arbitrary 36-way indexing,
/// then arrange them into the same role layout as the parity path.
inline Block2x2 select_naive(const Event& buffer, const std::array<int, 4>& regions,
                             SelectorStats& stats) {
  std::array<int, 2> rows{coord_of(regions[0]).row, -1};
  for (int r : regions) {
    const int row = coord_of(r).row;
    if (row != rows[0]) rows[1] = row;
  }
  if (rows[1] == -1)
    throw std::invalid_argument("regions do not span two rows");
  const auto [even_row, odd_row] = detail::row_roles(rows[0], rows[1]);
  Block2x2 out;
  for (int r : regions) {
    stats.record(kSiteNaiveFetch, kNumRegions);
    const Region& reg = buffer.regions[static_cast<std::size_t>(r)];
    const GridCoord c = coord_of(r);
    auto& row = c.row == even_row ? out.row_even : out.row_odd;
    row[static_cast<std::size_t>(c.col % 2)] = reg;
  }
  return out;
}

/// All tracks of the four regions in (region, slot) stream order, minus
/// the seed itself, best-pt first (stable), truncated at `cap`.
inline std::vector<Track> gather_candidates(const Block2x2& b, const Track& seed,
                                            int cap = kCandidateCap) {
  std::array<const Region*, 4> regs{&b.row_even[0], &b.row_even[1],
                                    &b.row_odd[0], &b.row_odd[1]};
  std::sort(regs.begin(), regs.end(),
            [](const Region* a, const Region* b) { return a->index < b->index; });
  std::vector<Track> all;
  all.reserve(4 * kTracksPerRegion);
  for (const Region* r : regs)
    for (int s = 0; s < kTracksPerRegion; ++s) {
      const Track& t = r->track_at(s);
      if (t.origin == seed.origin) continue;
      all.push_back(t);
    }
  std::vector<Track> best = oracle::top_k(all, std::min<int>(cap, static_cast<int>(all.size())));
  return best;
}

enum class Addressing { naive, parity };

inline const char* to_string(Addressing a) {
  return a == Addressing::naive ? "naive" : "parity";
}

inline Addressing addressing_from(const std::string& s) {
  if (s == "naive") return Addressing::naive;
  if (s == "parity") return Addressing::parity;
  throw std::invalid_argument("unknown addressing mode: " + s);
}

struct Step2Result {
  std::vector<std::vector<Track>> candidates;  // one list per seed
  SelectorStats stats;
};

/// Step 2 for a whole event: per seed, derive the quadrant from the
/// seed's sub-position, address its 2x2 neighborhood in the configured
/// mode, and gather the capped candidate list.
inline Step2Result run_step2(const Event& e, std::span<const Track> seeds,
                             Addressing mode) {
  Step2Result out;
  const TrackGrid grid = mode == Addressing::parity ? build_grid(e) : TrackGrid{};
  for (const Track& seed : seeds) {
    const auto hood = neighborhood(seed.origin.region, quadrant_of(seed));
    Block2x2 block;
    if (mode == Addressing::parity) {
      const RegionSelector sel = selector_from_neighborhood(hood);
      block = select_parity(grid, sel, out.stats);
    } else {
      block = select_naive(e, hood, out.stats);
    }
    out.candidates.push_back(gather_candidates(block, seed));
  }
  return out;
}

}  // namespace tautrig
