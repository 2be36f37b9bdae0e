#include "e2ecd/data/stats.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace e2ecd::data {
namespace {

int split_rank(const std::string& split) {
  if (split == "train") return 0;
  if (split == "hold") return 1;
  if (split == "test") return 2;
  return 3;
}

bool split_less(const std::string& a, const std::string& b) {
  const int ra = split_rank(a);
  const int rb = split_rank(b);
  return ra != rb ? ra < rb : a < b;
}

void add(StatsRow& row, const SampleCounts& s) {
  row.images += 1;
  row.positives += s.positives;
  row.negatives += s.negatives;
}

}  // namespace

const StatsRow* StatsTable::find(const std::string& event, const std::string& split) const {
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const StatsRow& r) {
    return r.event == event && r.split == split;
  });
  return it == rows.end() ? nullptr : &*it;
}

StatsTable dataset_stats(std::span<const SampleCounts> samples) {
  std::set<std::string> events;
  std::vector<std::string> splits;
  for (const auto& s : samples) {
    events.insert(s.event);
    if (std::find(splits.begin(), splits.end(), s.split) == splits.end()) splits.push_back(s.split);
  }
  std::sort(splits.begin(), splits.end(), split_less);

  StatsTable table;
  auto emit_block = [&](const std::string& event_label, auto&& selects) {
    StatsRow total{event_label, kTotalSplit};
    for (const auto& split : splits) {
      StatsRow row{event_label, split};
      for (const auto& s : samples) {
        if (s.split == split && selects(s)) add(row, s);
      }
      if (row.images == 0) continue;
      total.images += row.images;
      total.positives += row.positives;
      total.negatives += row.negatives;
      table.rows.push_back(row);
    }
    table.rows.push_back(total);
  };

  for (const auto& event : events) {
    emit_block(event, [&](const SampleCounts& s) { return s.event == event; });
  }
  // An empty corpus gets no rows at all, not a zero total.
  if (!samples.empty()) emit_block(kAllEvents, [](const SampleCounts&) { return true; });
  return table;
}

StatsTable dataset_stats(std::span<const E2ESample> samples,
                         const std::map<std::string, std::string>& split_of) {
  std::vector<SampleCounts> counts;
  counts.reserve(samples.size());
  for (const auto& s : samples) {
    const auto it = split_of.find(s.id);
    counts.push_back({s.id, s.event_name, it == split_of.end() ? "unassigned" : it->second,
                      s.valid_positives(), s.valid_negatives()});
  }
  return dataset_stats(counts);
}

std::string format_stats_csv(const StatsTable& table) {
  std::ostringstream out;
  out << "event,split,I,P,N\n";
  for (const auto& r : table.rows) {
    out << r.event << ',' << r.split << ',' << r.images << ',' << r.positives << ','
        << r.negatives << '\n';
  }
  return out.str();
}

}  // namespace e2ecd::data
