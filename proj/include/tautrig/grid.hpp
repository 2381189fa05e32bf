#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>

#include "tautrig/event.hpp"

namespace tautrig {

inline GridCoord coord_of(int region_index) {
  if (region_index < 0 || region_index >= kNumRegions)
    throw std::out_of_range("region index out of range");
  return GridCoord{region_index / kGridCols, region_index % kGridCols};
}

inline int index_of(const GridCoord& c) {
  if (c.row < 0 || c.row >= kGridRows || c.col < 0 || c.col >= kGridCols)
    throw std::out_of_range("grid coordinate out of range");
  return kGridCols * c.row + c.col;
}

inline Quadrant quadrant_of(const Track& seed) {
  return Quadrant{seed.sub_row == HalfDir::higher ? +1 : -1,
                  seed.sub_col == HalfDir::higher ? +1 : -1};
}

/// The 2x2 region neighborhood of a seed: its own region plus the adjacent
/// row and column picked by the quadrant. Rows wrap (the grid is an
/// unfolded torus, first and last rows touch); columns reflect at the
/// edges so the neighbor column is always a distinct adjacent one.
/// Returned indices are sorted ascending; always 4 distinct regions.
inline std::array<int, 4> neighborhood(int region_index, const Quadrant& q) {
  if ((q.row_dir != -1 && q.row_dir != 1) || (q.col_dir != -1 && q.col_dir != 1))
    throw std::invalid_argument("quadrant directions must be -1 or +1");
  const GridCoord c = coord_of(region_index);
  const int other_row = (c.row + q.row_dir + kGridRows) % kGridRows;
  int other_col = c.col + q.col_dir;
  if (other_col < 0) other_col = 1;
  if (other_col >= kGridCols) other_col = kGridCols - 2;
  std::array<int, 4> out{
      index_of({c.row, c.col}), index_of({c.row, other_col}),
      index_of({other_row, c.col}), index_of({other_row, other_col})};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tautrig
