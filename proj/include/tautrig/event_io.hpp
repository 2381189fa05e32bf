#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tautrig/event.hpp"

namespace tautrig {

/// Parse failure with the 1-based line it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Event file format (UTF-8 text, one record per line):
//   event <id>
//   region <idx> <45 tuples pt:sub_row:sub_col:kind:quality>   x36
//   <blank line>
// Tuples are ordered 22 charged, 13 photon, 10 neutral; kind is c/p/n.
// Origins are positional and therefore not serialized.

inline void write_events(std::ostream& os, const std::vector<Event>& events) {
  for (const Event& e : events) {
    os << "event " << e.id << '\n';
    for (const Region& r : e.regions) {
      os << "region " << static_cast<int>(r.index);
      for (int s = 0; s < kTracksPerRegion; ++s) {
        const Track& t = r.track_at(s);
        os << ' ' << t.pt << ':' << static_cast<int>(t.sub_row) << ':'
           << static_cast<int>(t.sub_col) << ':'
           << "cpn"[static_cast<int>(t.kind)] << ':'
           << static_cast<int>(t.quality);
      }
      os << '\n';
    }
    os << '\n';
  }
}

inline void write_events(const std::string& path, const std::vector<Event>& events) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_events(os, events);
  if (!os) throw std::runtime_error("write failed: " + path);
}

namespace detail {

inline std::uint64_t parse_uint(std::string_view tok, std::uint64_t max,
                                int line, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range || (ec == std::errc() && v > max))
    throw ParseError(line, std::string(what) + " out of range: " + std::string(tok));
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("malformed ") + what + ": " + std::string(tok));
  return v;
}

inline Track parse_track(std::string_view tok, int region, int slot, int line) {
  std::array<std::string_view, 5> f;
  std::size_t start = 0;
  for (int i = 0; i < 5; ++i) {
    const std::size_t colon = tok.find(':', start);
    const bool last = i == 4;
    if (last != (colon == std::string_view::npos))
      throw ParseError(line, "malformed track tuple: " + std::string(tok));
    f[static_cast<std::size_t>(i)] =
        tok.substr(start, last ? std::string_view::npos : colon - start);
    start = colon + 1;
  }
  Track t;
  t.pt = static_cast<std::uint16_t>(parse_uint(f[0], 0xFFFF, line, "pt"));
  t.sub_row = parse_uint(f[1], 1, line, "sub_row") ? HalfDir::higher : HalfDir::lower;
  t.sub_col = parse_uint(f[2], 1, line, "sub_col") ? HalfDir::higher : HalfDir::lower;
  const TrackKind expected = slot < kChargedPerRegion ? TrackKind::charged
                             : slot < kChargedPerRegion + kPhotonPerRegion
                                 ? TrackKind::photon
                                 : TrackKind::neutral;
  if (f[3].size() != 1 || f[3][0] != "cpn"[static_cast<int>(expected)])
    throw ParseError(line, "track kind does not match block position: " +
                               std::string(tok));
  t.kind = expected;
  t.quality = static_cast<std::uint8_t>(parse_uint(f[4], 0xFF, line, "quality"));
  t.origin = TrackOrigin{static_cast<std::uint8_t>(region),
                         static_cast<std::uint8_t>(slot)};
  return t;
}

}  // namespace detail

inline std::vector<Event> read_events(std::istream& is) {
  std::vector<Event> events;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;  // stray blank between events
    std::istringstream hdr(line);
    std::string word, tok;
    hdr >> word >> tok;
    if (word != "event")
      throw ParseError(lineno, "expected event header, got: " + line);
    Event e;
    e.id = detail::parse_uint(tok, ~0ULL, lineno, "event id");
    int regions_seen = 0;
    while (true) {
      if (!std::getline(is, line)) line.clear();  // EOF closes the event
      ++lineno;
      if (line.empty()) break;
      if (regions_seen >= kNumRegions)
        throw ParseError(lineno, "event " + std::to_string(e.id) +
                                     ": more than 36 region lines");
      std::istringstream ls(line);
      ls >> word >> tok;
      if (word != "region")
        throw ParseError(lineno, "expected region line, got: " + line);
      const int idx = static_cast<int>(
          detail::parse_uint(tok, kNumRegions - 1, lineno, "region index"));
      if (idx != regions_seen)
        throw ParseError(lineno, "event " + std::to_string(e.id) +
                                     ": region " + std::to_string(idx) +
                                     " out of stream order");
      Region& r = e.regions[static_cast<std::size_t>(idx)];
      r.index = static_cast<std::uint8_t>(idx);
      int slot = 0;
      while (ls >> tok) {
        if (slot >= kTracksPerRegion)
          throw ParseError(lineno, "region has more than 45 track tuples");
        const Track t = detail::parse_track(tok, idx, slot, lineno);
        if (slot < kChargedPerRegion)
          r.charged[static_cast<std::size_t>(slot)] = t;
        else if (slot < kChargedPerRegion + kPhotonPerRegion)
          r.photon[static_cast<std::size_t>(slot - kChargedPerRegion)] = t;
        else
          r.neutral[static_cast<std::size_t>(slot - kChargedPerRegion -
                                             kPhotonPerRegion)] = t;
        ++slot;
      }
      if (slot != kTracksPerRegion)
        throw ParseError(lineno, "region has " + std::to_string(slot) +
                                     " track tuples, expected 45");
      ++regions_seen;
    }
    if (regions_seen != kNumRegions)
      throw ParseError(lineno, "event " + std::to_string(e.id) + " has " +
                                   std::to_string(regions_seen) +
                                   " regions, expected 36");
    for (int c = 0; c + 1 < kSeedsPerRegion; ++c)
      for (const Region& r : e.regions)
        if (r.charged[static_cast<std::size_t>(c)].pt <
            r.charged[static_cast<std::size_t>(c + 1)].pt)
          throw ParseError(lineno, "event " + std::to_string(e.id) +
                                       ": seed-candidate prefix not sorted in region " +
                                       std::to_string(r.index));
    events.push_back(std::move(e));
  }
  return events;
}

inline std::vector<Event> read_events(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_events(is);
}

}  // namespace tautrig
