#include "e2ecd/net/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "e2ecd/core/error.hpp"

namespace e2ecd::net {
namespace {

BinaryMask pool(const BinaryMask& mask, int factor, bool any) {
  if (factor < 1 || mask.height() % factor != 0 || mask.width() % factor != 0) {
    throw InvalidShape("pooling factor " + std::to_string(factor) + " does not divide " +
                       std::to_string(mask.height()) + "x" + std::to_string(mask.width()));
  }
  BinaryMask out(mask.height() / factor, mask.width() / factor);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      bool acc = !any;
      for (int dy = 0; dy < factor; ++dy) {
        for (int dx = 0; dx < factor; ++dx) {
          const bool v = mask.at(y * factor + dy, x * factor + dx);
          acc = any ? (acc || v) : (acc && v);
        }
      }
      out.set(y, x, acc);
    }
  }
  return out;
}

}  // namespace

BinaryMask max_pool(const BinaryMask& mask, int factor) { return pool(mask, factor, true); }
BinaryMask min_pool(const BinaryMask& mask, int factor) { return pool(mask, factor, false); }

double class_balanced_ce(std::span<const ChangeProbMap> levels, const BinaryMask& gt,
                         const BinaryMask& valid) {
  if (gt.height() != valid.height() || gt.width() != valid.width()) {
    throw InvalidShape("class_balanced_ce: ground truth and mask differ in size");
  }
  double total = 0.0;
  int counted = 0;
  for (const auto& p : levels) {
    if (p.height() == 0 || gt.height() % p.height() != 0 || gt.width() % p.width() != 0 ||
        gt.height() / p.height() != gt.width() / p.width()) {
      throw InvalidShape("class_balanced_ce: level size does not divide the ground truth");
    }
    const int factor = gt.height() / p.height();
    const BinaryMask y = max_pool(gt, factor);
    const BinaryMask m = min_pool(valid, factor);

    std::size_t pos = 0, neg = 0;
    for (int r = 0; r < p.height(); ++r) {
      for (int c = 0; c < p.width(); ++c) {
        if (!m.at(r, c)) continue;
        (y.at(r, c) ? pos : neg) += 1;
      }
    }
    const std::size_t n_valid = pos + neg;
    if (n_valid == 0) continue;
    const double beta = static_cast<double>(neg) / static_cast<double>(n_valid);

    double sum = 0.0;
    for (int r = 0; r < p.height(); ++r) {
      for (int c = 0; c < p.width(); ++c) {
        if (!m.at(r, c)) continue;
        if (y.at(r, c)) {
          sum += beta * std::log(std::max<double>(p.p_changed(r, c), kLogClamp));
        } else {
          sum += (1.0 - beta) * std::log(std::max<double>(p.p_unchanged(r, c), kLogClamp));
        }
      }
    }
    total += -sum / static_cast<double>(n_valid);
    ++counted;
  }
  return counted ? total / counted : 0.0;
}

double flow_epe(const FlowField& flow, const FlowField& gt, const BinaryMask& valid) {
  if (flow.height() != gt.height() || flow.width() != gt.width() ||
      valid.height() != gt.height() || valid.width() != gt.width()) {
    throw InvalidShape("flow_epe: inputs differ in size");
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!valid.at(y, x)) continue;
      const Vec2 a = flow.at(y, x);
      const Vec2 b = gt.at(y, x);
      sum += std::hypot(static_cast<double>(a.u) - b.u, static_cast<double>(a.v) - b.v);
      ++n;
    }
  }
  if (n == 0) throw UndefinedMetric("flow_epe: validity mask is empty");
  return sum / static_cast<double>(n);
}

}  // namespace e2ecd::net
