#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tautrig/candidate_select.hpp"
#include "tautrig/cost_model.hpp"
#include "tautrig/event_io.hpp"
#include "tautrig/generate.hpp"
#include "tautrig/merge_tree.hpp"
#include "tautrig/oracle.hpp"
#include "tautrig/spatial_sorter.hpp"

namespace tautrig {

/// Everything a command needs; defaults reproduce the reference
/// configuration (36 regions, 16 seeds, B = 56, candidate cap 30).
struct RunConfig {
  std::string in_path;
  std::string out_path;
  Architecture arch = Architecture::spatial;
  Addressing addressing = Addressing::parity;
  int events = 100;
  std::uint64_t seed = 0;
  int buffering_cycles = kDefaultBufferingCycles;
  std::optional<int> reference_s;  // display-only sorting latency to compare against
  bool verify = false;
};

/// A command's outcome: the report bytes (stable across identical runs)
/// and the process exit code. Exit 0 means every internal verification
/// passed.
struct CmdResult {
  int exit_code = 0;
  std::string report;
};

namespace detail {

inline ChainResult run_architecture(Architecture arch, const Event& e,
                                    int buffering_cycles) {
  switch (arch) {
    case Architecture::spatial: return run_chain(e, kNumSeeds, buffering_cycles);
    case Architecture::modified:
      return run_pair_chain(e, kNumSeeds / 2, buffering_cycles);
    case Architecture::mergetree: {
      TreeResult t = run_tree(e, buffering_cycles);
      return ChainResult{std::move(t.seeds), t.latency};
    }
  }
  throw std::invalid_argument("unknown architecture tag");
}

inline std::string pt_list(const std::vector<Track>& seeds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    os << (i ? ";" : "") << seeds[i].pt;
  return os.str();
}

inline long delta_percent(int reference_s, int s) {
  return std::lround(100.0 * (reference_s - s) / reference_s);
}

}  // namespace detail

/// `gen`: write N deterministic events (ids 0..N-1) to --out.
inline CmdResult cmd_gen(const RunConfig& cfg) {
  std::vector<Event> events;
  events.reserve(static_cast<std::size_t>(cfg.events));
  for (int i = 0; i < cfg.events; ++i)
    events.push_back(generate_event(cfg.seed + static_cast<std::uint64_t>(i),
                                    static_cast<std::uint64_t>(i)));
  write_events(cfg.out_path, events);
  std::ostringstream os;
  os << "events,seed,path\n"
     << cfg.events << ',' << cfg.seed << ',' << cfg.out_path << '\n';
  return CmdResult{0, os.str()};
}

/// `run`: one architecture over an event file, every event cross-checked
/// against the brute-force oracle.
inline CmdResult cmd_run(const RunConfig& cfg) {
  const std::vector<Event> events = read_events(cfg.in_path);
  std::ostringstream os;
  os << "event,S,step1,verified,seed_pts\n";
  int exit_code = 0;
  int last_s = 0, last_step1 = 0;
  for (const Event& e : events) {
    const ChainResult r = detail::run_architecture(cfg.arch, e, cfg.buffering_cycles);
    const std::vector<Track> want = oracle::top_k(seed_candidates(e), kNumSeeds);
    const bool ok = seeds_match_stable(r.seeds, want);
    if (!ok) exit_code = 1;
    os << e.id << ',' << r.latency.sorting_cycles << ','
       << r.latency.step1_cycles << ',' << (ok ? "ok" : "fail") << ','
       << detail::pt_list(r.seeds) << '\n';
    last_s = r.latency.sorting_cycles;
    last_step1 = r.latency.step1_cycles;
  }
  os << "arch,S,step1\n";
  os << to_string(cfg.arch) << ',' << last_s << ',' << last_step1 << '\n';
  return CmdResult{exit_code, os.str()};
}

/// `compare`: all architectures plus the oracle on every event; latency
/// table with optional percent deltas against a user-supplied reference
/// sorting latency, then the static cost table.
inline CmdResult cmd_compare(const RunConfig& cfg) {
  const std::vector<Event> events = read_events(cfg.in_path);
  constexpr std::array<Architecture, 3> kArchs = {
      Architecture::spatial, Architecture::modified, Architecture::mergetree};
  std::ostringstream os;
  int exit_code = 0;
  std::array<LatencyReport, 3> latencies{};
  std::vector<std::string> mismatches;
  for (const Event& e : events) {
    const std::vector<Track> want = oracle::top_k(seed_candidates(e), kNumSeeds);
    for (std::size_t a = 0; a < kArchs.size(); ++a) {
      const ChainResult r =
          detail::run_architecture(kArchs[a], e, cfg.buffering_cycles);
      latencies[a] = r.latency;
      if (!seeds_match_stable(r.seeds, want)) {
        exit_code = 1;
        std::ostringstream m;
        m << "mismatch," << e.id << ',' << to_string(kArchs[a]);
        mismatches.push_back(m.str());
      }
    }
  }
  if (cfg.reference_s) os << "arch,S,step1,delta_pct\n";
  else os << "arch,S,step1\n";
  if (!events.empty()) {
    for (std::size_t a = 0; a < kArchs.size(); ++a) {
      os << to_string(kArchs[a]) << ',' << latencies[a].sorting_cycles << ','
         << latencies[a].step1_cycles;
      if (cfg.reference_s)
        os << ','
           << detail::delta_percent(*cfg.reference_s, latencies[a].sorting_cycles);
      os << '\n';
    }
  }
  for (const std::string& m : mismatches) os << m << '\n';
  os << "events,agreement\n"
     << events.size() << ',' << (exit_code == 0 ? "ok" : "fail") << '\n';
  std::vector<CompareStats> costs;
  for (Architecture a : kArchs) costs.push_back(static_costs(a));
  os << cost_report(costs, {});
  return CmdResult{exit_code, os.str()};
}

/// `select`: step 1 (spatial chain) then step 2 in the configured
/// addressing mode; selector fan-in stats, per-seed candidate counts and,
/// with --verify, a naive-vs-parity equivalence check.
inline CmdResult cmd_select(const RunConfig& cfg) {
  const std::vector<Event> events = read_events(cfg.in_path);
  std::ostringstream os;
  int exit_code = 0;
  SelectorStats main_stats, other_stats;
  std::ostringstream candidate_rows;
  bool equivalent = true;
  candidate_rows << "event,seed,candidates\n";
  for (const Event& e : events) {
    const ChainResult seeds = run_chain(e, kNumSeeds, cfg.buffering_cycles);
    Step2Result r = run_step2(e, seeds.seeds, cfg.addressing);
    main_stats.merge(r.stats);
    for (std::size_t s = 0; s < r.candidates.size(); ++s)
      candidate_rows << e.id << ',' << s << ',' << r.candidates[s].size() << '\n';
    if (cfg.verify) {
      const Addressing other = cfg.addressing == Addressing::parity
                                   ? Addressing::naive
                                   : Addressing::parity;
      Step2Result o = run_step2(e, seeds.seeds, other);
      other_stats.merge(o.stats);
      if (o.candidates != r.candidates) equivalent = false;
    }
  }
  if (cfg.addressing == Addressing::parity && main_stats.max_fan_in() > 4)
    exit_code = 1;
  if (cfg.verify && !equivalent) exit_code = 1;
  std::vector<std::pair<std::string, SelectorStats>> selector_stats;
  selector_stats.emplace_back(to_string(cfg.addressing), main_stats);
  if (cfg.verify)
    selector_stats.emplace_back(
        to_string(cfg.addressing == Addressing::parity ? Addressing::naive
                                                       : Addressing::parity),
        other_stats);
  std::sort(selector_stats.begin(), selector_stats.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  os << cost_report({}, selector_stats);
  os << "max_fan_in," << main_stats.max_fan_in() << '\n';
  os << candidate_rows.str();
  if (cfg.verify)
    os << "equivalence," << (equivalent ? "ok" : "fail") << '\n';
  return CmdResult{exit_code, os.str()};
}

}  // namespace tautrig
