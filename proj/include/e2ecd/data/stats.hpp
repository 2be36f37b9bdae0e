#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "e2ecd/data/types.hpp"

namespace e2ecd::data {

// Per-sample counts inside the validity mask.
struct SampleCounts {
  std::string id;
  std::string event;
  std::string split;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
};

// One row of the I/P/N table. split == "total" and event == "all" mark the
// marginal rows.
struct StatsRow {
  std::string event;
  std::string split;
  std::uint64_t images = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;

  friend bool operator==(const StatsRow&, const StatsRow&) = default;
};

struct StatsTable {
  std::vector<StatsRow> rows;

  const StatsRow* find(const std::string& event, const std::string& split) const;
};

inline constexpr const char* kTotalSplit = "total";
inline constexpr const char* kAllEvents = "all";

// Rows per event (sorted) and split (train, hold, test, then any others
// sorted), each event closed by a total row, followed by the "all" block.
StatsTable dataset_stats(std::span<const SampleCounts> samples);

// Split is looked up by sample id; ids missing from the map land in
// "unassigned".
StatsTable dataset_stats(std::span<const E2ESample> samples,
                         const std::map<std::string, std::string>& split_of);

// CSV with header event,split,I,P,N and LF line endings.
std::string format_stats_csv(const StatsTable& table);

}  // namespace e2ecd::data
