#include "e2ecd/eval/report.hpp"

#include <algorithm>
#include <cstdio>

namespace e2ecd::eval {
namespace {

std::vector<MetricReport> reports_for(const std::vector<RelaxedConfusion>& confusions,
                                      const PckCounts& pck, double delta) {
  std::vector<MetricReport> out;
  for (const auto& c : confusions) {
    MetricReport r = metrics_from_confusion(c);
    r.pck = pck.percentage();
    r.delta = delta;
    out.push_back(r);
  }
  return out;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

void write_rows(std::string& out, const std::string& id, const std::vector<MetricReport>& reports) {
  for (const auto& r : reports) {
    out += id + "," + std::to_string(r.radius) + "," + cell(r.precision) + "," + cell(r.recall) +
           "," + cell(r.f1) + "," + cell(r.iou) + "," + cell(r.oa) + "," + cell(r.pck) + "\n";
  }
}

}  // namespace

SampleEvaluation evaluate_sample(const std::string& id, const BinaryMask& predicted_change,
                                 const FlowField& predicted_flow, const GroundTruth& gt,
                                 const EvalOptions& options) {
  SampleEvaluation s;
  s.id = id;
  for (int r : options.radii) {
    s.confusions.push_back(relaxed_confusion(predicted_change, gt.change, gt.valid, r));
  }
  s.pck = pck_counts(predicted_flow, gt.flow, gt.valid, options.delta);
  s.reports = reports_for(s.confusions, s.pck, options.delta);
  return s;
}

SampleEvaluation evaluate_sample(const std::string& id, const net::ChangeProbMap& predicted,
                                 const FlowField& predicted_flow, const GroundTruth& gt,
                                 const EvalOptions& options) {
  return evaluate_sample(id, predicted.binarize(options.threshold), predicted_flow, gt, options);
}

CorpusEvaluation aggregate(std::vector<SampleEvaluation> samples, const EvalOptions& options) {
  std::sort(samples.begin(), samples.end(),
            [](const SampleEvaluation& a, const SampleEvaluation& b) { return a.id < b.id; });
  CorpusEvaluation corpus;
  corpus.options = options;
  for (int r : options.radii) {
    RelaxedConfusion c;
    c.radius = r;
    corpus.confusions.push_back(c);
  }
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < corpus.confusions.size() && i < s.confusions.size(); ++i) {
      corpus.confusions[i] += s.confusions[i];
    }
    corpus.pck += s.pck;
  }
  corpus.totals = reports_for(corpus.confusions, corpus.pck, options.delta);
  corpus.samples = std::move(samples);
  return corpus;
}

std::string format_report_csv(const CorpusEvaluation& corpus) {
  std::string out = "sample_id,radius,P,R,F1,IoU,OA,PCK\n";
  for (const auto& s : corpus.samples) write_rows(out, s.id, s.reports);
  write_rows(out, "total", corpus.totals);
  return out;
}

}  // namespace e2ecd::eval
