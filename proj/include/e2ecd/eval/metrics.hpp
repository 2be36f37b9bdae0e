#pragma once

#include <cstdint>
#include <optional>

#include "e2ecd/core/raster.hpp"
#include "e2ecd/eval/confusion.hpp"

namespace e2ecd::eval {

// Percentages; std::nullopt marks an undefined ratio (0/0).
struct MetricReport {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> iou;
  std::optional<double> oa;
  int radius = 0;
  std::optional<double> pck;
  double delta = 0.05;
};

// P = tp/(tp+fp), R = tp/(tp+fn), F1 = 2PR/(P+R), IoU = tp/(tp+fp+fn),
// OA = (tp+tn)/(tp+tn+fp+fn). F1 is undefined when P or R is, and 0 when
// both are 0.
MetricReport metrics_from_confusion(const RelaxedConfusion& c);

struct PckCounts {
  std::uint64_t correct = 0;
  std::uint64_t total = 0;

  PckCounts& operator+=(const PckCounts& o) {
    correct += o.correct;
    total += o.total;
    return *this;
  }
  std::optional<double> percentage() const;
};

inline constexpr double kDefaultPckDelta = 0.05;

// Valid pixels whose endpoint error is <= delta * max(H, W).
PckCounts pck_counts(const FlowField& pred, const FlowField& gt, const BinaryMask& valid,
                     double delta = kDefaultPckDelta);

// 100 * correct / valid. Throws UndefinedMetric on an empty mask.
double pck(const FlowField& pred, const FlowField& gt, const BinaryMask& valid,
           double delta = kDefaultPckDelta);

}  // namespace e2ecd::eval
