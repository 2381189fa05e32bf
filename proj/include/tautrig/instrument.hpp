#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace tautrig {

/// Records comparator activity by call site. Distinct sites are the
/// software stand-in for physical comparator instances; `total` is the
/// dynamic comparison count.
struct CompareCounter {
  std::map<std::string, std::uint64_t, std::less<>> sites;
  std::uint64_t total = 0;

  void record(std::string_view site) {
    ++total;
    auto it = sites.find(site);
    if (it == sites.end())
      sites.emplace(std::string(site), 1);
    else
      ++it->second;
  }

  std::size_t distinct_sites() const { return sites.size(); }
};

}  // namespace tautrig
