#pragma once

#include <cstdint>

#include "e2ecd/core/raster.hpp"

namespace e2ecd::eval {

// Counts of the radius-relaxed confusion matrix over valid pixels.
//   tp + fn = valid ground-truth positives
//   fp + tn = valid ground-truth negatives - masked_out
struct RelaxedConfusion {
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t masked_out = 0;
  int radius = 0;

  RelaxedConfusion& operator+=(const RelaxedConfusion& o) {
    tp += o.tp;
    fn += o.fn;
    fp += o.fp;
    tn += o.tn;
    masked_out += o.masked_out;
    return *this;
  }
  friend bool operator==(const RelaxedConfusion&, const RelaxedConfusion&) = default;
};

// Each valid ground-truth positive a owns the (2r+1)^2 square D(a), clipped
// to the image. a is a true positive when some valid pixel of D(a) is
// predicted positive, otherwise a false negative. Valid ground-truth
// negatives inside any D(a) are dropped (masked_out); the rest are false
// positives where predicted positive and true negatives elsewhere. At
// radius 0 this is the ordinary per-pixel confusion matrix.
RelaxedConfusion relaxed_confusion(const BinaryMask& pred, const BinaryMask& gt,
                                   const BinaryMask& valid, int radius);

}  // namespace e2ecd::eval
