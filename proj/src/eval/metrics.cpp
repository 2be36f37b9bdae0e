#include "e2ecd/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "e2ecd/core/error.hpp"

namespace e2ecd::eval {
namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricReport metrics_from_confusion(const RelaxedConfusion& c) {
  MetricReport r;
  r.radius = c.radius;
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  if (r.precision && r.recall) {
    const double p = *r.precision;
    const double q = *r.recall;
    r.f1 = (p + q) > 0.0 ? 2.0 * p * q / (p + q) : 0.0;
  }
  r.iou = ratio(c.tp, c.tp + c.fp + c.fn);
  r.oa = ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn);
  return r;
}

std::optional<double> PckCounts::percentage() const { return ratio(correct, total); }

PckCounts pck_counts(const FlowField& pred, const FlowField& gt, const BinaryMask& valid,
                     double delta) {
  if (pred.height() != gt.height() || pred.width() != gt.width() ||
      valid.height() != gt.height() || valid.width() != gt.width()) {
    throw InvalidArgument("pck: inputs differ in size");
  }
  if (!(delta > 0.0)) throw InvalidArgument("pck: delta must be positive");
  const double threshold = delta * std::max(gt.height(), gt.width());
  PckCounts counts;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!valid.at(y, x)) continue;
      const Vec2 a = pred.at(y, x);
      const Vec2 b = gt.at(y, x);
      const double err = std::hypot(static_cast<double>(a.u) - b.u, static_cast<double>(a.v) - b.v);
      counts.total += 1;
      if (err <= threshold) counts.correct += 1;
    }
  }
  return counts;
}

double pck(const FlowField& pred, const FlowField& gt, const BinaryMask& valid, double delta) {
  const auto p = pck_counts(pred, gt, valid, delta).percentage();
  if (!p) throw UndefinedMetric("pck: validity mask is empty");
  return *p;
}

}  // namespace e2ecd::eval
