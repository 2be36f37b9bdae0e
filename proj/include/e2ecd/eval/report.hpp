#pragma once

#include <string>
#include <vector>

#include "e2ecd/core/raster.hpp"
#include "e2ecd/eval/confusion.hpp"
#include "e2ecd/eval/metrics.hpp"
#include "e2ecd/net/tensor.hpp"

namespace e2ecd::eval {

struct EvalOptions {
  std::vector<int> radii{0, 5};
  double delta = kDefaultPckDelta;
  double threshold = 0.5;  // on p_changed
};

struct GroundTruth {
  FlowField flow;
  BinaryMask change;
  BinaryMask valid;
};

struct SampleEvaluation {
  std::string id;
  std::vector<RelaxedConfusion> confusions;  // one per radius
  PckCounts pck;
  std::vector<MetricReport> reports;  // one per radius, sharing the PCK
};

SampleEvaluation evaluate_sample(const std::string& id, const BinaryMask& predicted_change,
                                 const FlowField& predicted_flow, const GroundTruth& gt,
                                 const EvalOptions& options);
SampleEvaluation evaluate_sample(const std::string& id, const net::ChangeProbMap& predicted,
                                 const FlowField& predicted_flow, const GroundTruth& gt,
                                 const EvalOptions& options);

// Micro-averaged corpus totals: confusions and PCK counts are summed over
// samples before any ratio is taken.
struct CorpusEvaluation {
  EvalOptions options;
  std::vector<SampleEvaluation> samples;  // sorted by id
  std::vector<RelaxedConfusion> confusions;
  PckCounts pck;
  std::vector<MetricReport> totals;
};

CorpusEvaluation aggregate(std::vector<SampleEvaluation> samples, const EvalOptions& options);

// sample_id,radius,P,R,F1,IoU,OA,PCK with one row per sample and radius,
// then "total" rows. Undefined values are empty cells.
std::string format_report_csv(const CorpusEvaluation& corpus);

}  // namespace e2ecd::eval
