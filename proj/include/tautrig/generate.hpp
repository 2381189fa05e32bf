#pragma once

#include <algorithm>
#include <cstdint>

#include "tautrig/event.hpp"

namespace tautrig {

/// splitmix64: tiny, portable, deterministic across platforms. Event
/// generation must be bit-reproducible for a given (seed, id), so the
/// draws never go through implementation-defined stdlib distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint16_t next16() { return static_cast<std::uint16_t>(next() & 0xFFFF); }
  std::uint8_t next8() { return static_cast<std::uint8_t>(next() & 0xFF); }
  bool next_bit() { return (next() & 1) != 0; }

  /// Uniform value in [0, bound), bound > 0. Rejection-free modulo is fine
  /// here: bias at 64-bit state over small bounds is far below anything a
  /// test could observe, and reproducibility is what matters.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

namespace detail {
inline void draw_track(SplitMix64& rng, Track& t, TrackKind kind) {
  t.pt = rng.next16();
  t.sub_row = rng.next_bit() ? HalfDir::higher : HalfDir::lower;
  t.sub_col = rng.next_bit() ? HalfDir::higher : HalfDir::lower;
  t.kind = kind;
  t.quality = rng.next8();
}
}  // namespace detail

/// Deterministic synthetic event: pt uniform over the full 16-bit range
/// (maximizes tie and ordering coverage; physics realism is a non-goal).
/// charged[0..3] is re-sorted descending after the draw, then origins are
/// assigned by final position so they always match structural layout.
inline Event generate_event(std::uint64_t rng_seed, std::uint64_t event_id) {
  SplitMix64 rng(rng_seed ^ (event_id * 0xA24BAED4963EE407ULL + 1));
  Event e;
  e.id = event_id;
  for (int ri = 0; ri < kNumRegions; ++ri) {
    Region& r = e.regions[static_cast<std::size_t>(ri)];
    r.index = static_cast<std::uint8_t>(ri);
    for (Track& t : r.charged) detail::draw_track(rng, t, TrackKind::charged);
    for (Track& t : r.photon) detail::draw_track(rng, t, TrackKind::photon);
    for (Track& t : r.neutral) detail::draw_track(rng, t, TrackKind::neutral);
    std::stable_sort(r.charged.begin(), r.charged.begin() + kSeedsPerRegion,
                     [](const Track& a, const Track& b) { return a.pt > b.pt; });
    int slot = 0;
    auto stamp = [&](Track& t) {
      t.origin = TrackOrigin{static_cast<std::uint8_t>(ri),
                             static_cast<std::uint8_t>(slot++)};
    };
    for (Track& t : r.charged) stamp(t);
    for (Track& t : r.photon) stamp(t);
    for (Track& t : r.neutral) stamp(t);
  }
  return e;
}

}  // namespace tautrig
