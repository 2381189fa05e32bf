#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "tautrig/event.hpp"
#include "tautrig/event_io.hpp"
#include "tautrig/generate.hpp"
#include "tautrig/grid.hpp"

using namespace tautrig;

TEST_CASE("coord_of maps region indices row-major") {
  CHECK(coord_of(0) == GridCoord{0, 0});
  CHECK(coord_of(5) == GridCoord{1, 1});
  CHECK(coord_of(33) == GridCoord{8, 1});
  CHECK_THROWS_AS(coord_of(-1), std::out_of_range);
  CHECK_THROWS_AS(coord_of(36), std::out_of_range);
}

TEST_CASE("coord_of and index_of are inverse on 0..35") {
  for (int i = 0; i < kNumRegions; ++i) CHECK(index_of(coord_of(i)) == i);
}

TEST_CASE("neighborhood picks the quadrant's 2x2 block") {
  CHECK(neighborhood(5, Quadrant{+1, -1}) == std::array<int, 4>{4, 5, 8, 9});
  CHECK(neighborhood(0, Quadrant{-1, -1}) == std::array<int, 4>{0, 1, 32, 33});
}

TEST_CASE("a seed's sub-position picks its quadrant") {
  Track t;
  t.sub_row = HalfDir::lower;
  t.sub_col = HalfDir::higher;
  CHECK(quadrant_of(t) == Quadrant{-1, +1});
  t.sub_row = HalfDir::higher;
  t.sub_col = HalfDir::lower;
  CHECK(quadrant_of(t) == Quadrant{+1, -1});
}

TEST_CASE("region 0 has exactly the five adjacent regions 1,4,5,32,33") {
  std::set<int> adj;
  for (int rd : {-1, +1})
    for (int cd : {-1, +1})
      for (int r : neighborhood(0, Quadrant{rd, cd})) adj.insert(r);
  adj.erase(0);
  CHECK(adj == std::set<int>{1, 4, 5, 32, 33});
}

TEST_CASE("every neighborhood has 4 distinct regions including the seed's") {
  for (int r = 0; r < kNumRegions; ++r)
    for (int rd : {-1, +1})
      for (int cd : {-1, +1}) {
        const auto n = neighborhood(r, Quadrant{rd, cd});
        std::set<int> s(n.begin(), n.end());
        CHECK(s.size() == 4);
        CHECK(s.count(r) == 1);
      }
}

TEST_CASE("rows 0 and 8 have a quadrant crossing the torus seam") {
  for (int r = 0; r < kNumRegions; ++r) {
    const int row = coord_of(r).row;
    if (row != 0 && row != kGridRows - 1) continue;
    bool crosses = false;
    for (int rd : {-1, +1})
      for (int cd : {-1, +1}) {
        bool has_first = false, has_last = false;
        for (int n : neighborhood(r, Quadrant{rd, cd})) {
          if (coord_of(n).row == 0) has_first = true;
          if (coord_of(n).row == kGridRows - 1) has_last = true;
        }
        if (has_first && has_last) crosses = true;
      }
    CHECK(crosses);
  }
}

TEST_CASE("seed_candidates concatenates the charged prefixes in stream order") {
  Event zero;
  for (int i = 0; i < kNumRegions; ++i)
    zero.regions[static_cast<std::size_t>(i)].index = static_cast<std::uint8_t>(i);
  const auto cands = seed_candidates(zero);
  REQUIRE(cands.size() == 144);
  for (const Track& t : cands) CHECK(t.pt == 0);

  const Event e = generate_event(42, 0);
  const auto c = seed_candidates(e);
  REQUIRE(c.size() == 144);
  for (int t = 0; t < kNumRegions; ++t)
    for (int s = 0; s < kSeedsPerRegion; ++s)
      CHECK(c[static_cast<std::size_t>(4 * t + s)] ==
            e.regions[static_cast<std::size_t>(t)].charged[static_cast<std::size_t>(s)]);
  for (int t = 0; t < kNumRegions; ++t)
    for (int s = 0; s + 1 < kSeedsPerRegion; ++s)
      CHECK(c[static_cast<std::size_t>(4 * t + s)].pt >=
            c[static_cast<std::size_t>(4 * t + s + 1)].pt);
}

TEST_CASE("generate_event is deterministic and seed-sensitive") {
  CHECK(generate_event(1, 0) == generate_event(1, 0));

  auto pts = [](const Event& e) {
    std::vector<std::uint16_t> v;
    for (const Region& r : e.regions)
      for (const Track& t : r.charged) v.push_back(t.pt);
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(pts(generate_event(1, 0)) != pts(generate_event(2, 0)));
  CHECK(pts(generate_event(1, 0)) != pts(generate_event(1, 1)));
}

TEST_CASE("generated events satisfy all region invariants") {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 999ULL}) {
    const Event e = generate_event(seed, seed);
    CHECK_NOTHROW(validate_event(e));
    for (int i = 0; i < kNumRegions; ++i) {
      const Region& r = e.regions[static_cast<std::size_t>(i)];
      CHECK(r.index == i);
      for (int s = 0; s < kTracksPerRegion; ++s) {
        CHECK(r.track_at(s).origin.region == i);
        CHECK(r.track_at(s).origin.slot == s);
      }
    }
  }
}

TEST_CASE("event file round-trips bit-exactly") {
  std::vector<Event> events;
  for (int i = 0; i < 10; ++i)
    events.push_back(generate_event(7, static_cast<std::uint64_t>(i)));
  std::ostringstream os;
  write_events(os, events);
  std::istringstream is(os.str());
  const auto back = read_events(is);
  REQUIRE(back.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i) CHECK(back[i] == events[i]);
}

TEST_CASE("truncated event is rejected naming the event") {
  std::vector<Event> events{generate_event(3, 12)};
  std::ostringstream os;
  write_events(os, events);
  // Drop the last region line (keep the trailing blank).
  std::string text = os.str();
  const auto last_region = text.rfind("region 35");
  text.erase(last_region, text.find('\n', last_region) - last_region + 1);
  std::istringstream is(text);
  try {
    read_events(is);
    FAIL("expected ParseError");
  } catch (const ParseError& ex) {
    CHECK(std::string(ex.what()).find("event 12") != std::string::npos);
    CHECK(std::string(ex.what()).find("35") != std::string::npos);
  }
}

TEST_CASE("out-of-range pt is rejected with its line number") {
  std::vector<Event> events{generate_event(3, 0)};
  std::ostringstream os;
  write_events(os, events);
  std::string text = os.str();
  const auto pos = text.find("region 4 ");
  const auto sp = text.find(' ', pos + 7);
  const auto colon = text.find(':', sp);
  text = text.substr(0, sp + 1) + "70000" + text.substr(colon);
  std::istringstream is(text);
  try {
    read_events(is);
    FAIL("expected ParseError");
  } catch (const ParseError& ex) {
    CHECK(ex.line() == 6);  // header + regions 0..3 precede it
    CHECK(std::string(ex.what()).find("pt out of range") != std::string::npos);
  }
}

TEST_CASE("garbage lines are rejected") {
  std::istringstream is("event 0\nnonsense 1 2 3\n");
  CHECK_THROWS_AS(read_events(is), ParseError);
  std::istringstream is2("banana\n");
  CHECK_THROWS_AS(read_events(is2), ParseError);
}

TEST_CASE("region with wrong tuple count is rejected") {
  std::vector<Event> events{generate_event(5, 0)};
  std::ostringstream os;
  write_events(os, events);
  std::string text = os.str();
  // Drop the last tuple of region 0's line.
  const auto line_start = text.find("region 0 ");
  const auto line_end = text.find('\n', line_start);
  const auto last_space = text.rfind(' ', line_end);
  text.erase(last_space, line_end - last_space);
  std::istringstream is(text);
  try {
    read_events(is);
    FAIL("expected ParseError");
  } catch (const ParseError& ex) {
    CHECK(std::string(ex.what()).find("44") != std::string::npos);
  }
}

TEST_CASE("empty input parses to zero events") {
  std::istringstream is("");
  CHECK(read_events(is).empty());
}
