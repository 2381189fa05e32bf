#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tautrig/event.hpp"
#include "tautrig/instrument.hpp"
#include "tautrig/latency.hpp"
#include "tautrig/oracle.hpp"

namespace tautrig {

/*
 * Spatial insertion sorter.
 *
 * Seed candidates arrive as presorted 4-blocks, one block per cycle. The
 * chain is a pipeline of cells; every cell keeps the best element(s) it
 * has ever seen in local registers and forwards the rest, still as a
 * sorted 4-block, to the next cell. After the stream drains, cell k holds
 * the (k+1)-th best candidate (single-register cells) or best pair
 * (two-register cells), so the Seeds array is read straight out of the
 * registers.
 *
 * Two cell flavours:
 *   InsertionCell — one register (CURR). The head of the incoming block is
 *     the only element that can beat CURR; on a beat the old CURR is
 *     re-inserted into the block tail.
 *   PairCell — two registers merged with the incoming block by a
 *     single-stage 6-input sorter (sort6): one bank of cross comparisons,
 *     then a fixed mux network per output position.
 *
 * Comparisons go through beats(); the raw-Track overload is strict on pt,
 * so an incumbent register keeps its place on ties. The event-level
 * runners wrap tracks with their ingestion index (SeqTrack), which makes
 * every tie resolve by stream position and the chain output equal the
 * stable top-k exactly.
 */

inline bool beats(const Track& a, const Track& b) { return a.pt > b.pt; }

/// A track plus its position in the ingestion stream.
struct SeqTrack {
  Track track;
  std::uint32_t seq = 0;
  bool operator==(const SeqTrack&) const = default;
};

inline bool beats(const SeqTrack& a, const SeqTrack& b) {
  if (a.track.pt != b.track.pt) return a.track.pt > b.track.pt;
  return a.seq < b.seq;
}

inline std::uint16_t pt_of(const Track& t) { return t.pt; }
inline std::uint16_t pt_of(const SeqTrack& t) { return t.track.pt; }

/// Four optional entries, descending by pt among present ones, present
/// entries packed first. The unit that moves between cells.
template <class E>
struct BasicBlock4 {
  std::array<std::optional<E>, 4> slots{};

  bool valid() const {
    for (int i = 0; i < 3; ++i) {
      if (!slots[static_cast<std::size_t>(i)] &&
          slots[static_cast<std::size_t>(i + 1)])
        return false;  // not packed
      if (slots[static_cast<std::size_t>(i)] &&
          slots[static_cast<std::size_t>(i + 1)] &&
          pt_of(*slots[static_cast<std::size_t>(i)]) <
              pt_of(*slots[static_cast<std::size_t>(i + 1)]))
        return false;
    }
    return true;
  }
  bool operator==(const BasicBlock4&) const = default;
};

using Block4 = BasicBlock4<Track>;

template <class E>
struct BasicInsertionCell {
  std::optional<E> curr;
};
using InsertionCell = BasicInsertionCell<Track>;

template <class E>
struct BasicPairCell {
  std::optional<E> reg0;  // reg0 outranks reg1 whenever both are present
  std::optional<E> reg1;
};
using PairCell = BasicPairCell<Track>;

// Comparator site labels (see cost_model).
inline constexpr const char* kSiteCellHead = "cell_head";
inline constexpr std::array<const char*, 3> kSiteCellInsert = {
    "cell_insert0", "cell_insert1", "cell_insert2"};
inline constexpr std::array<const char*, 4> kSiteSort6R0 = {
    "sort6_r0_i0", "sort6_r0_i1", "sort6_r0_i2", "sort6_r0_i3"};
inline constexpr std::array<const char*, 4> kSiteSort6R1 = {
    "sort6_r1_i0", "sort6_r1_i1", "sort6_r1_i2", "sort6_r1_i3"};

/// One cycle of a single-register insertion cell. The cell keeps the best
/// of what it has seen; the emitted block is the input with the loser of
/// the head comparison merged into its tail.
template <class E>
BasicBlock4<E> cell_step(BasicInsertionCell<E>& cell, const BasicBlock4<E>& in,
                         CompareCounter* probe = nullptr) {
  if (!in.valid()) throw std::invalid_argument("cell_step: malformed block");
  if (!cell.curr) {
    BasicBlock4<E> out;
    if (in.slots[0]) {
      cell.curr = in.slots[0];
      out.slots = {in.slots[1], in.slots[2], in.slots[3], std::nullopt};
    }
    return out;
  }
  if (!in.slots[0]) return in;  // empty block passes through
  if (probe) probe->record(kSiteCellHead);
  if (!beats(*in.slots[0], *cell.curr)) return in;
  // IN[0] takes the register; the old value is inserted into the sorted
  // tail IN[1..3] (before any equal it is not beaten by).
  const E old = *cell.curr;
  cell.curr = in.slots[0];
  BasicBlock4<E> out;
  int w = 0;
  int j = 1;
  for (; j < 4 && in.slots[static_cast<std::size_t>(j)]; ++j) {
    if (probe) probe->record(kSiteCellInsert[static_cast<std::size_t>(j - 1)]);
    if (!beats(*in.slots[static_cast<std::size_t>(j)], old)) break;
    out.slots[static_cast<std::size_t>(w++)] = in.slots[static_cast<std::size_t>(j)];
  }
  out.slots[static_cast<std::size_t>(w++)] = old;
  for (; j < 4 && in.slots[static_cast<std::size_t>(j)]; ++j)
    out.slots[static_cast<std::size_t>(w++)] = in.slots[static_cast<std::size_t>(j)];
  return out;
}

namespace detail {

/// Does input element `i` rank above register `r`? Absent entries rank
/// below everything, and below absent registers (so empties stay packed
/// on the register side of the network).
template <class E>
bool ranks_above(const std::optional<E>& i, const std::optional<E>& r,
                 CompareCounter* probe, const char* site) {
  if (!i) return false;
  if (!r) return true;
  if (probe) probe->record(site);
  return beats(*i, *r);
}

}  // namespace detail

/// Single-stage 6-input sorter. Both inputs are presorted (REG0 >= REG1,
/// IN descending), so eight cross comparisons fully determine the merged
/// order; each output position is then a fixed mux over its candidate
/// elements. No ranks are counted at runtime — the selection predicates
/// below are the closed forms the comparison-counting analysis yields.
template <class E>
std::array<std::optional<E>, 6> sort6(const std::optional<E>& reg0,
                                      const std::optional<E>& reg1,
                                      const BasicBlock4<E>& in,
                                      CompareCounter* probe = nullptr) {
  if (!in.valid()) throw std::invalid_argument("sort6: malformed block");
  if (reg1 && !reg0) throw std::invalid_argument("sort6: register pair not packed");
  if (reg0 && reg1 && beats(*reg1, *reg0))
    throw std::invalid_argument("sort6: register pair not descending");

  const auto& I = in.slots;
  // Comparison stage: c_j = IN[j] above REG0, d_j = IN[j] above REG1.
  // Monotone by construction: c0>=c1>=c2>=c3, d0>=d1>=d2>=d3, d_j>=c_j.
  const bool c0 = detail::ranks_above(I[0], reg0, probe, kSiteSort6R0[0]);
  const bool c1 = detail::ranks_above(I[1], reg0, probe, kSiteSort6R0[1]);
  const bool c2 = detail::ranks_above(I[2], reg0, probe, kSiteSort6R0[2]);
  const bool c3 = detail::ranks_above(I[3], reg0, probe, kSiteSort6R0[3]);
  const bool d0 = detail::ranks_above(I[0], reg1, probe, kSiteSort6R1[0]);
  const bool d1 = detail::ranks_above(I[1], reg1, probe, kSiteSort6R1[1]);
  const bool d2 = detail::ranks_above(I[2], reg1, probe, kSiteSort6R1[2]);
  const bool d3 = detail::ranks_above(I[3], reg1, probe, kSiteSort6R1[3]);

  std::array<std::optional<E>, 6> out;
  // out1: REG0 or IN[0].
  out[0] = c0 ? I[0] : reg0;
  // out2: REG0, REG1, IN[0] or IN[1].
  if (!d0) out[1] = reg1;
  else if (!c0) out[1] = I[0];
  else if (c1) out[1] = I[1];
  else out[1] = reg0;
  // out3: REG0, REG1, IN[0], IN[1] or IN[2].
  if (c2) out[2] = I[2];
  else if (c1) out[2] = reg0;
  else if (d1) out[2] = I[1];
  else if (d0) out[2] = reg1;
  else out[2] = I[0];
  // out4: REG0, REG1, IN[1], IN[2] or IN[3].
  if (c3) out[3] = I[3];
  else if (c2) out[3] = reg0;
  else if (d2) out[3] = I[2];
  else if (d1) out[3] = reg1;
  else out[3] = I[1];
  // out5: REG0, REG1, IN[2] or IN[3].
  if (c3) out[4] = reg0;
  else if (d3) out[4] = I[3];
  else if (d2) out[4] = reg1;
  else out[4] = I[2];
  // out6: REG1 or IN[3].
  out[5] = d3 ? reg1 : I[3];
  return out;
}

/// One cycle of a two-register cell: 6-sort the registers with the block,
/// keep the top two, forward the bottom four.
template <class E>
BasicBlock4<E> pair_cell_step(BasicPairCell<E>& cell, const BasicBlock4<E>& in,
                              CompareCounter* probe = nullptr) {
  const auto s = sort6(cell.reg0, cell.reg1, in, probe);
  cell.reg0 = s[0];
  cell.reg1 = s[1];
  BasicBlock4<E> out;
  out.slots = {s[2], s[3], s[4], s[5]};
  return out;
}

struct ChainResult {
  RankedSeeds seeds;  // seat order, best first; empty seats omitted
  LatencyReport latency;
};

namespace detail {

/// The pipeline clocking shared by both chain flavours. Blocks enter an
/// input latch, move one cell per cycle, and leftovers fall off the end.
/// The cycle count is ingest (one block per cycle) + 1 (latch to cell 0)
/// + one cycle per cell, which is exactly blocks + 1 + cells.
template <class Cell, class E, class StepFn>
int clock_pipeline(std::vector<Cell>& cells,
                   std::span<const BasicBlock4<E>> blocks, StepFn&& step_cell,
                   CompareCounter* probe) {
  const std::size_t m = cells.size();
  std::vector<std::optional<BasicBlock4<E>>> pending(m);
  std::optional<BasicBlock4<E>> latch;
  int cycles = 0;
  auto clock = [&] {
    for (std::size_t i = m; i-- > 0;) {
      if (!pending[i]) continue;
      BasicBlock4<E> out = step_cell(cells[i], *pending[i], probe);
      pending[i].reset();
      if (i + 1 < m) pending[i + 1] = std::move(out);
    }
    pending[0] = std::move(latch);
    latch.reset();
    ++cycles;
  };
  for (const BasicBlock4<E>& b : blocks) {
    clock();
    latch = b;
  }
  clock();                                        // registration of the last block
  for (std::size_t i = 0; i < m; ++i) clock();    // drain through every cell
  for (const auto& p : pending)
    if (p) throw std::logic_error("pipeline not drained");
  return cycles;
}

inline std::vector<BasicBlock4<SeqTrack>> to_seq_blocks(
    std::span<const Track> candidates) {
  if (candidates.size() % 4 != 0)
    throw std::invalid_argument("candidate stream length must be a multiple of 4");
  std::vector<BasicBlock4<SeqTrack>> blocks(candidates.size() / 4);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    blocks[i / 4].slots[i % 4] =
        SeqTrack{candidates[i], static_cast<std::uint32_t>(i)};
  }
  for (const auto& b : blocks)
    if (!b.valid())
      throw std::invalid_argument("candidate 4-block not sorted descending");
  return blocks;
}

}  // namespace detail

/// Single-register chain over an arbitrary presorted-4-block stream.
/// Sorting latency is blocks + 1 + cells; seat k ends holding the
/// (k+1)-th best candidate.
inline ChainResult run_chain_stream(std::span<const Track> candidates,
                                    int num_cells,
                                    int buffering_cycles = kDefaultBufferingCycles,
                                    CompareCounter* probe = nullptr) {
  if (num_cells < 1) throw std::invalid_argument("need at least one cell");
  const auto blocks = detail::to_seq_blocks(candidates);
  std::vector<BasicInsertionCell<SeqTrack>> cells(
      static_cast<std::size_t>(num_cells));
  const int cycles = detail::clock_pipeline<BasicInsertionCell<SeqTrack>, SeqTrack>(
      cells, blocks,
      [](BasicInsertionCell<SeqTrack>& c, const BasicBlock4<SeqTrack>& b,
         CompareCounter* p) { return cell_step(c, b, p); },
      probe);
  if (cycles != static_cast<int>(blocks.size()) + 1 + num_cells)
    throw std::logic_error("cycle counter diverged from pipeline model");
  ChainResult r;
  for (const auto& c : cells)
    if (c.curr) r.seeds.push_back(c.curr->track);
  r.latency = make_latency(Architecture::spatial, buffering_cycles, cycles);
  return r;
}

/// Reference configuration: 36 region blocks through 16 cells (S = 53).
inline ChainResult run_chain(const Event& e, int num_cells = kNumSeeds,
                             int buffering_cycles = kDefaultBufferingCycles,
                             CompareCounter* probe = nullptr) {
  const std::vector<Track> cand = seed_candidates(e);
  return run_chain_stream(cand, num_cells, buffering_cycles, probe);
}

/// Two-register chain; half the cells for the same seed count (S = 45 in
/// the reference configuration). Seats drain as reg0, reg1 per cell.
inline ChainResult run_pair_chain_stream(
    std::span<const Track> candidates, int num_cells,
    int buffering_cycles = kDefaultBufferingCycles,
    CompareCounter* probe = nullptr) {
  if (num_cells < 1) throw std::invalid_argument("need at least one cell");
  const auto blocks = detail::to_seq_blocks(candidates);
  std::vector<BasicPairCell<SeqTrack>> cells(static_cast<std::size_t>(num_cells));
  const int cycles = detail::clock_pipeline<BasicPairCell<SeqTrack>, SeqTrack>(
      cells, blocks,
      [](BasicPairCell<SeqTrack>& c, const BasicBlock4<SeqTrack>& b,
         CompareCounter* p) { return pair_cell_step(c, b, p); },
      probe);
  if (cycles != static_cast<int>(blocks.size()) + 1 + num_cells)
    throw std::logic_error("cycle counter diverged from pipeline model");
  ChainResult r;
  for (const auto& c : cells) {
    if (c.reg0) r.seeds.push_back(c.reg0->track);
    if (c.reg1) r.seeds.push_back(c.reg1->track);
  }
  r.latency = make_latency(Architecture::modified, buffering_cycles, cycles);
  return r;
}

inline ChainResult run_pair_chain(const Event& e, int num_cells = kNumSeeds / 2,
                                  int buffering_cycles = kDefaultBufferingCycles,
                                  CompareCounter* probe = nullptr) {
  const std::vector<Track> cand = seed_candidates(e);
  return run_pair_chain_stream(cand, num_cells, buffering_cycles, probe);
}

}  // namespace tautrig
