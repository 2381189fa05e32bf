#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tautrig {

enum class Architecture { spatial, modified, mergetree };

inline const char* to_string(Architecture a) {
  switch (a) {
    case Architecture::spatial: return "spatial";
    case Architecture::modified: return "modified";
    case Architecture::mergetree: return "mergetree";
  }
  throw std::invalid_argument("unknown architecture");
}

inline Architecture architecture_from(const std::string& s) {
  if (s == "spatial") return Architecture::spatial;
  if (s == "modified") return Architecture::modified;
  if (s == "mergetree") return Architecture::mergetree;
  throw std::invalid_argument("unknown architecture: " + s);
}

/// Step-1 latency accounting. B is the buffering latency (a configured
/// constant, 56 in the reference design), S the sorting latency measured
/// by the simulation; the step completes when both have.
struct LatencyReport {
  Architecture architecture = Architecture::spatial;
  int buffering_cycles = 0;   // B
  int sorting_cycles = 0;     // S
  int step1_cycles = 0;       // max(B, S)
};

inline LatencyReport make_latency(Architecture arch, int buffering, int sorting) {
  return LatencyReport{arch, buffering, sorting, std::max(buffering, sorting)};
}

}  // namespace tautrig
