#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "tautrig/cost_model.hpp"
#include "tautrig/generate.hpp"

using namespace tautrig;

namespace {

Track tk(std::uint16_t pt) {
  Track t;
  t.pt = pt;
  return t;
}

/// Test-local instrumented sweep of one insertion cell over the {0..4}
/// value domain (register x sorted 4-block).
int sweep_insertion_cell_sites() {
  CompareCounter probe;
  for (int curr = 0; curr < 5; ++curr)
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b <= a; ++b)
        for (int c = 0; c <= b; ++c)
          for (int d = 0; d <= c; ++d) {
            InsertionCell cell;
            cell.curr = tk(static_cast<std::uint16_t>(curr));
            Block4 in;
            in.slots = {tk(static_cast<std::uint16_t>(a)),
                        tk(static_cast<std::uint16_t>(b)),
                        tk(static_cast<std::uint16_t>(c)),
                        tk(static_cast<std::uint16_t>(d))};
            cell_step(cell, in, &probe);
          }
  return static_cast<int>(probe.distinct_sites());
}

int sweep_pair_cell_sites() {
  CompareCounter probe;
  for (int r0 = 0; r0 < 5; ++r0)
    for (int r1 = 0; r1 <= r0; ++r1)
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b <= a; ++b)
          for (int c = 0; c <= b; ++c)
            for (int d = 0; d <= c; ++d) {
              PairCell cell;
              cell.reg0 = tk(static_cast<std::uint16_t>(r0));
              cell.reg1 = tk(static_cast<std::uint16_t>(r1));
              Block4 in;
              in.slots = {tk(static_cast<std::uint16_t>(a)),
                          tk(static_cast<std::uint16_t>(b)),
                          tk(static_cast<std::uint16_t>(c)),
                          tk(static_cast<std::uint16_t>(d))};
              pair_cell_step(cell, in, &probe);
            }
  return static_cast<int>(probe.distinct_sites());
}

}  // namespace

TEST_CASE("static costs match the configured cell counts") {
  const auto spatial = static_costs(Architecture::spatial);
  REQUIRE(spatial.rows.size() == 1);
  CHECK(spatial.rows[0].cells == 16);
  const auto modified = static_costs(Architecture::modified);
  REQUIRE(modified.rows.size() == 1);
  CHECK(modified.rows[0].cells == 8);
  const auto tree = static_costs(Architecture::mergetree);
  REQUIRE(tree.rows.size() == 2);
  CHECK(tree.rows[0].cells == 16);  // fill arrays
  CHECK(tree.rows[1].cells == 15);  // merge nodes
}

TEST_CASE("per-cell comparator counts equal an instrumented exhaustive sweep") {
  CHECK(static_costs(Architecture::spatial).rows[0].comparators_per_cell ==
        sweep_insertion_cell_sites());
  CHECK(static_costs(Architecture::modified).rows[0].comparators_per_cell ==
        sweep_pair_cell_sites());
  // Measured figures for the implemented networks: 1 head + 3 insertion
  // probes per insertion cell; the full cross-comparison bank in sort6.
  CHECK(sweep_insertion_cell_sites() == 4);
  CHECK(sweep_pair_cell_sites() == 8);
  CHECK(static_costs(Architecture::spatial).rows[0].total == 64);
  CHECK(static_costs(Architecture::modified).rows[0].total == 64);
}

TEST_CASE("dynamic comparison counts stay under cycles x comparators") {
  const Event e = generate_event(42, 0);
  CompareCounter spatial, modified, tree;
  const auto rs = run_chain(e, kNumSeeds, kDefaultBufferingCycles, &spatial);
  const auto rm = run_pair_chain(e, kNumSeeds / 2, kDefaultBufferingCycles, &modified);
  const auto rt = run_tree(e, kDefaultBufferingCycles, &tree);
  CHECK(spatial.total <=
        static_cast<std::uint64_t>(rs.latency.sorting_cycles) *
            static_cast<std::uint64_t>(static_costs(Architecture::spatial).rows[0].total));
  CHECK(modified.total <=
        static_cast<std::uint64_t>(rm.latency.sorting_cycles) *
            static_cast<std::uint64_t>(static_costs(Architecture::modified).rows[0].total));
  std::uint64_t tree_total = 0;
  for (const auto& row : static_costs(Architecture::mergetree).rows)
    tree_total += static_cast<std::uint64_t>(row.total);
  CHECK(tree.total <= static_cast<std::uint64_t>(rt.stats.drain_cycle) * tree_total);
  // dynamic site sets never exceed the static site inventory
  CHECK(spatial.distinct_sites() <= 4);
  CHECK(modified.distinct_sites() <= 8);
}

TEST_CASE("cost_report flags the supported ordering claims") {
  const Event e = generate_event(8, 8);
  const TrackGrid g = build_grid(e);
  SelectorStats parity, naive;
  const auto hood = neighborhood(0, Quadrant{-1, -1});
  select_parity(g, selector_from_neighborhood(hood), parity);
  select_naive(e, hood, naive);
  const std::string report = cost_report(
      {static_costs(Architecture::spatial), static_costs(Architecture::modified)},
      {{"naive", naive}, {"parity", parity}});
  CHECK(report.find("modified_cells_lt_spatial,8,16,PASS") != std::string::npos);
  CHECK(report.find("parity_max_fanin_lt_naive,4,36,PASS") != std::string::npos);
  CHECK(report.find("arch,cell_kind,cells,comparators_per_cell,total") !=
        std::string::npos);
  CHECK(report.find("spatial,insertion_cell,16,4,64") != std::string::npos);
}

TEST_CASE("cost_report of nothing is empty and reports are byte-stable") {
  CHECK(cost_report({}, {}).empty());
  const auto costs = {static_costs(Architecture::mergetree)};
  CHECK(cost_report(costs, {}) == cost_report(costs, {}));
}
