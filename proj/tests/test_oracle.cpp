#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "tautrig/generate.hpp"
#include "tautrig/oracle.hpp"

using namespace tautrig;

namespace {

Track tk(std::uint16_t pt, int region = 0, int slot = 0) {
  Track t;
  t.pt = pt;
  t.origin = TrackOrigin{static_cast<std::uint8_t>(region),
                         static_cast<std::uint8_t>(slot)};
  return t;
}

std::vector<Track> random_sorted(SplitMix64& rng, int n) {
  std::vector<Track> v;
  for (int i = 0; i < n; ++i) v.push_back(tk(rng.next16(), i / 45, i % 45));
  std::stable_sort(v.begin(), v.end(),
                   [](const Track& a, const Track& b) { return a.pt > b.pt; });
  return v;
}

std::multiset<std::pair<int, int>> origin_multiset(const std::vector<Track>& v) {
  std::multiset<std::pair<int, int>> m;
  for (const Track& t : v) m.insert({t.origin.region, t.origin.slot});
  return m;
}

}  // namespace

TEST_CASE("top_k keeps stream order across full ties") {
  std::vector<Track> all;
  for (int i = 0; i < 144; ++i) all.push_back(tk(7, i / 4, i % 4));
  const auto top = oracle::top_k(all, 16);
  REQUIRE(top.size() == 16);
  for (int i = 0; i < 16; ++i) {
    CHECK(top[static_cast<std::size_t>(i)].origin.region == i / 4);
    CHECK(top[static_cast<std::size_t>(i)].origin.slot == i % 4);
  }
}

TEST_CASE("top_k of a descending stream is its prefix") {
  std::vector<Track> all;
  for (int i = 143; i >= 0; --i) all.push_back(tk(static_cast<std::uint16_t>(i)));
  const auto top = oracle::top_k(all, 16);
  for (int i = 0; i < 16; ++i)
    CHECK(top[static_cast<std::size_t>(i)].pt == 143 - i);
}

TEST_CASE("top_k regression fixture: generator seed 42") {
  // Frozen from an independent stable full sort of the 144 candidates.
  const std::vector<std::uint16_t> want_pt = {
      65318, 65097, 64638, 63692, 61799, 61689, 61320, 61114,
      61055, 60990, 60779, 60454, 59450, 59270, 59029, 58682};
  const std::vector<std::pair<int, int>> want_origin = {
      {1, 0},  {30, 0}, {26, 0}, {24, 0}, {17, 0}, {27, 0}, {0, 0},  {5, 0},
      {8, 0},  {9, 0},  {21, 0}, {35, 0}, {20, 0}, {18, 0}, {22, 0}, {25, 0}};
  const auto top = oracle::top_k(seed_candidates(generate_event(42, 0)), 16);
  REQUIRE(top.size() == 16);
  for (int i = 0; i < 16; ++i) {
    CHECK(top[static_cast<std::size_t>(i)].pt == want_pt[static_cast<std::size_t>(i)]);
    CHECK(top[static_cast<std::size_t>(i)].origin.region ==
          want_origin[static_cast<std::size_t>(i)].first);
    CHECK(top[static_cast<std::size_t>(i)].origin.slot ==
          want_origin[static_cast<std::size_t>(i)].second);
  }
}

TEST_CASE("top_k rejects k beyond the candidate count") {
  std::vector<Track> two{tk(1), tk(2)};
  CHECK_THROWS_AS(oracle::top_k(two, 3), std::invalid_argument);
}

TEST_CASE("top_k(x,k) is a prefix of top_k(x,k+1)") {
  SplitMix64 rng(11);
  std::vector<Track> xs;
  for (int i = 0; i < 60; ++i)
    xs.push_back(tk(static_cast<std::uint16_t>(rng.below(8)), i / 4, i % 4));
  for (int k = 0; k < 59; ++k) {
    const auto a = oracle::top_k(xs, k);
    const auto b = oracle::top_k(xs, k + 1);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST_CASE("top_k conserves the input multiset") {
  SplitMix64 rng(12);
  std::vector<Track> xs;
  for (int i = 0; i < 80; ++i)
    xs.push_back(tk(static_cast<std::uint16_t>(rng.below(5)), i / 45, i % 45));
  const auto top = oracle::top_k(xs, 30);
  auto kept = origin_multiset(top);
  auto input = origin_multiset(xs);
  for (const auto& o : kept) {
    auto it = input.find(o);
    REQUIRE(it != input.end());
    input.erase(it);
  }
  CHECK(input.size() == xs.size() - top.size());
}

TEST_CASE("merge_desc hand-checked examples") {
  std::vector<Track> empty;
  std::vector<Track> b{tk(5), tk(3)};
  const auto r1 = oracle::merge_desc(empty, b);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].pt == 5);
  CHECK(r1[1].pt == 3);

  std::vector<Track> a2{tk(9), tk(4)};
  std::vector<Track> b2{tk(7), tk(7), tk(1)};
  const auto r2 = oracle::merge_desc(a2, b2);
  const std::vector<std::uint16_t> want{9, 7, 7, 4, 1};
  REQUIRE(r2.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(r2[i].pt == want[i]);
}

TEST_CASE("merge_desc ties take the left input first") {
  std::vector<Track> a{tk(5, 1, 0)};
  std::vector<Track> b{tk(5, 2, 0)};
  const auto r = oracle::merge_desc(a, b);
  CHECK(r[0].origin.region == 1);
  CHECK(r[1].origin.region == 2);
}

TEST_CASE("merge_desc equals a full sort of the concatenation") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_sorted(rng, static_cast<int>(rng.below(12)));
    const auto b = random_sorted(rng, static_cast<int>(rng.below(12)));
    const auto merged = oracle::merge_desc(a, b);
    std::vector<Track> both = a;
    both.insert(both.end(), b.begin(), b.end());
    std::stable_sort(both.begin(), both.end(),
                     [](const Track& x, const Track& y) { return x.pt > y.pt; });
    REQUIRE(merged.size() == a.size() + b.size());
    for (std::size_t i = 0; i < merged.size(); ++i)
      CHECK(merged[i].pt == both[i].pt);
  }
}

TEST_CASE("sort6_oracle on disjoint ranges and on full ties") {
  const auto r = oracle::sort6_oracle({tk(9), tk(8)}, {tk(7), tk(6), tk(5), tk(4)});
  for (int i = 0; i < 6; ++i) CHECK(r[static_cast<std::size_t>(i)].pt == 9 - i);

  const auto ties = oracle::sort6_oracle(
      {tk(5, 1, 0), tk(5, 1, 1)},
      {tk(5, 2, 0), tk(5, 2, 1), tk(5, 2, 2), tk(5, 2, 3)});
  for (const Track& t : ties) CHECK(t.pt == 5);
  CHECK(ties[0].origin.region == 1);  // register elements first among ties
  CHECK(ties[1].origin.region == 1);
  CHECK(ties[2].origin.region == 2);
}

TEST_CASE("sort6_oracle equals a full sort on all 2646 sorted patterns over {0..5}") {
  int patterns = 0;
  for (int r0 = 0; r0 < 6; ++r0)
    for (int r1 = 0; r1 <= r0; ++r1)
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b <= a; ++b)
          for (int c = 0; c <= b; ++c)
            for (int d = 0; d <= c; ++d) {
              ++patterns;
              const auto got = oracle::sort6_oracle(
                  {tk(static_cast<std::uint16_t>(r0)),
                   tk(static_cast<std::uint16_t>(r1))},
                  {tk(static_cast<std::uint16_t>(a)),
                   tk(static_cast<std::uint16_t>(b)),
                   tk(static_cast<std::uint16_t>(c)),
                   tk(static_cast<std::uint16_t>(d))});
              std::array<int, 6> vals{r0, r1, a, b, c, d};
              std::sort(vals.begin(), vals.end(), std::greater<>());
              for (int i = 0; i < 6; ++i)
                CHECK(got[static_cast<std::size_t>(i)].pt ==
                      vals[static_cast<std::size_t>(i)]);
            }
  CHECK(patterns == 2646);
}

TEST_CASE("sort6_oracle rejects unsorted inputs") {
  CHECK_THROWS_AS(
      oracle::sort6_oracle({tk(1), tk(2)}, {tk(4), tk(3), tk(2), tk(1)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      oracle::sort6_oracle({tk(9), tk(8)}, {tk(1), tk(2), tk(2), tk(1)}),
      std::invalid_argument);
}
