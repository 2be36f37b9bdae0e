#include "e2ecd/eval/confusion.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "e2ecd/core/error.hpp"

namespace e2ecd::eval {
namespace {

// Summed-area table with a zero border row and column.
class BoxCounter {
 public:
  BoxCounter(int height, int width) : width_(width), sums_((height + 1) * static_cast<std::size_t>(width + 1), 0) {}

  void build(const auto& indicator, int height) {
    for (int y = 0; y < height; ++y) {
      std::uint32_t row = 0;
      for (int x = 0; x < width_; ++x) {
        row += indicator(y, x) ? 1u : 0u;
        cell(y + 1, x + 1) = cell(y, x + 1) + row;
      }
    }
  }

  // Count over rows [y0, y1] and columns [x0, x1], inclusive.
  std::uint32_t count(int y0, int x0, int y1, int x1) const {
    return cell(y1 + 1, x1 + 1) - cell(y0, x1 + 1) - cell(y1 + 1, x0) + cell(y0, x0);
  }

 private:
  std::uint32_t& cell(int y, int x) { return sums_[static_cast<std::size_t>(y) * (width_ + 1) + x]; }
  std::uint32_t cell(int y, int x) const { return sums_[static_cast<std::size_t>(y) * (width_ + 1) + x]; }

  int width_;
  std::vector<std::uint32_t> sums_;
};

}  // namespace

RelaxedConfusion relaxed_confusion(const BinaryMask& pred, const BinaryMask& gt,
                                   const BinaryMask& valid, int radius) {
  const int h = gt.height();
  const int w = gt.width();
  if (pred.height() != h || pred.width() != w || valid.height() != h || valid.width() != w) {
    throw InvalidArgument("relaxed_confusion: masks differ in size");
  }
  if (radius < 0) throw InvalidArgument("relaxed_confusion: radius must be >= 0");

  BoxCounter predicted(h, w);
  predicted.build([&](int y, int x) { return pred.at(y, x) && valid.at(y, x); }, h);
  BoxCounter positives(h, w);
  positives.build([&](int y, int x) { return gt.at(y, x) && valid.at(y, x); }, h);

  RelaxedConfusion c;
  c.radius = radius;
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - radius);
    const int y1 = std::min(h - 1, y + radius);
    for (int x = 0; x < w; ++x) {
      if (!valid.at(y, x)) continue;
      const int x0 = std::max(0, x - radius);
      const int x1 = std::min(w - 1, x + radius);
      if (gt.at(y, x)) {
        (predicted.count(y0, x0, y1, x1) > 0 ? c.tp : c.fn) += 1;
      } else if (positives.count(y0, x0, y1, x1) > 0) {
        // The square is symmetric: x lies in D(a) iff a lies in the square
        // around x.
        c.masked_out += 1;
      } else {
        (pred.at(y, x) ? c.fp : c.tn) += 1;
      }
    }
  }
  return c;
}

}  // namespace e2ecd::eval
