#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tautrig {

// Detector layout: 36 regions streamed one per cycle, arranged as a 9x4
// grid (rows wrap, columns do not). Every region carries fixed blocks of
// 22 charged, 13 photon and 10 neutral tracks; the first 4 charged tracks
// of each region are the seed candidates (36 x 4 = 144).
inline constexpr int kGridRows = 9;
inline constexpr int kGridCols = 4;
inline constexpr int kNumRegions = kGridRows * kGridCols;
inline constexpr int kChargedPerRegion = 22;
inline constexpr int kPhotonPerRegion = 13;
inline constexpr int kNeutralPerRegion = 10;
inline constexpr int kTracksPerRegion =
    kChargedPerRegion + kPhotonPerRegion + kNeutralPerRegion;
inline constexpr int kSeedsPerRegion = 4;
inline constexpr int kSeedCandidates = kNumRegions * kSeedsPerRegion;
inline constexpr int kNumSeeds = 16;
inline constexpr int kCandidateCap = 30;
inline constexpr int kDefaultBufferingCycles = 56;

enum class TrackKind : std::uint8_t { charged = 0, photon = 1, neutral = 2 };

/// Which half of its region a track points into, per axis.
enum class HalfDir : std::uint8_t { lower = 0, higher = 1 };

/// (region, slot) provenance of a track. `slot` indexes the region's full
/// 45-track layout (charged 0-21, photon 22-34, neutral 35-44), so an
/// origin is unique within an event.
struct TrackOrigin {
  std::uint8_t region = 0;
  std::uint8_t slot = 0;
  bool operator==(const TrackOrigin&) const = default;
};

/// One particle measurement. Whole records flow through the sorters, not
/// just keys; `pt` is the 16-bit sort key, everything else is payload.
struct Track {
  std::uint16_t pt = 0;
  HalfDir sub_row = HalfDir::lower;
  HalfDir sub_col = HalfDir::lower;
  TrackKind kind = TrackKind::charged;
  std::uint8_t quality = 0;
  TrackOrigin origin;
  bool operator==(const Track&) const = default;
};

struct Region {
  std::uint8_t index = 0;
  std::array<Track, kChargedPerRegion> charged{};
  std::array<Track, kPhotonPerRegion> photon{};
  std::array<Track, kNeutralPerRegion> neutral{};
  bool operator==(const Region&) const = default;

  /// Region-wide slot access (0-44 across the three blocks).
  const Track& track_at(int slot) const {
    if (slot < 0 || slot >= kTracksPerRegion)
      throw std::out_of_range("track slot out of range");
    if (slot < kChargedPerRegion) return charged[static_cast<std::size_t>(slot)];
    slot -= kChargedPerRegion;
    if (slot < kPhotonPerRegion) return photon[static_cast<std::size_t>(slot)];
    return neutral[static_cast<std::size_t>(slot - kPhotonPerRegion)];
  }
};

struct Event {
  std::uint64_t id = 0;
  std::array<Region, kNumRegions> regions{};
  bool operator==(const Event&) const = default;
};

/// Row/column of a region on the 9x4 grid; index = 4*row + col.
struct GridCoord {
  int row = 0;
  int col = 0;
  bool operator==(const GridCoord&) const = default;
};

/// A seed's sub-position within its region: which adjacent row/column
/// joins its neighborhood.
struct Quadrant {
  int row_dir = -1;  // -1 or +1
  int col_dir = -1;
  bool operator==(const Quadrant&) const = default;
};

/// First 4 charged tracks of every region, in stream order (144 tracks).
/// Each consecutive 4-block is sorted descending by pt.
inline std::vector<Track> seed_candidates(const Event& e) {
  std::vector<Track> out;
  out.reserve(kSeedCandidates);
  for (const Region& r : e.regions)
    for (int c = 0; c < kSeedsPerRegion; ++c)
      out.push_back(r.charged[static_cast<std::size_t>(c)]);
  return out;
}

/// Checks the structural invariants a well-formed event must satisfy:
/// regions in stream order and each charged[0..3] prefix sorted.
inline void validate_event(const Event& e) {
  for (int i = 0; i < kNumRegions; ++i) {
    const Region& r = e.regions[static_cast<std::size_t>(i)];
    if (r.index != i) throw std::invalid_argument("region index out of stream order");
    for (int c = 0; c + 1 < kSeedsPerRegion; ++c)
      if (r.charged[static_cast<std::size_t>(c)].pt <
          r.charged[static_cast<std::size_t>(c + 1)].pt)
        throw std::invalid_argument("seed-candidate prefix not sorted");
  }
}

}  // namespace tautrig
