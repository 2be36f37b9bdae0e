#include "e2ecd/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "e2ecd/core/flow_io.hpp"
#include "e2ecd/core/image_io.hpp"
#include "e2ecd/core/sampling.hpp"
#include "e2ecd/data/affine_sampler.hpp"
#include "e2ecd/data/corpus_io.hpp"
#include "e2ecd/data/fixture.hpp"
#include "e2ecd/data/stats.hpp"
#include "e2ecd/data/synthesis.hpp"
#include "e2ecd/eval/report.hpp"
#include "e2ecd/net/model.hpp"
#include "e2ecd/net/weights.hpp"

namespace e2ecd::cli {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Outcome of one work item. Messages are buffered so the log comes out in
// item order whatever the worker interleaving.
struct ItemLog {
  bool failed = false;
  std::string messages;

  void info(const std::string& m) { messages += m + "\n"; }
  void warn(const std::string& m) { messages += "warning: " + m + "\n"; }
  void fail(const std::string& m) {
    failed = true;
    messages += "error: " + m + "\n";
  }
};

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

// Runs fn over items; errors thrown by fn mark that item as failed.
int run_items(std::size_t count, int workers, std::ostream& log,
              const std::function<void(std::size_t, ItemLog&)>& fn) {
  std::vector<ItemLog> logs(count);
  parallel_for(count, workers, [&](std::size_t i) {
    try {
      fn(i, logs[i]);
    } catch (const std::exception& e) {
      logs[i].fail(e.what());
    }
  });
  int failures = 0;
  for (const auto& l : logs) {
    log << l.messages;
    if (l.failed) ++failures;
  }
  return failures;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void prepare_output(const RunConfig& config) {
  if (config.output.empty()) throw ConfigError("no output directory given (--output)");
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec || !fs::is_directory(config.output)) {
    throw ConfigError("cannot create output directory " + config.output.string());
  }
  write_text(config.output / kRunConfigName, format_run_config(config));
}

void require_dir(const fs::path& dir, const char* what) {
  if (dir.empty()) throw ConfigError(std::string("no ") + what + " directory given");
  if (!fs::is_directory(dir)) throw ConfigError(std::string(what) + " directory not found: " + dir.string());
}

// Removes every file of a sample so a failed write leaves nothing half done.
void remove_item_files(const fs::path& dir, const std::string& id) {
  const std::string prefix = id + "_";
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with(prefix) && name != kRunConfigName) fs::remove(entry.path(), ec);
  }
}

std::string crop_note(const std::string& id, int h, int w, const CropWindow& c) {
  std::ostringstream ss;
  ss << id << ": center-cropped " << h << "x" << w << " to " << c.height << "x" << c.width
     << " at offset (" << c.y0 << ", " << c.x0 << ")";
  return ss.str();
}

int finish(std::ostream& log, const char* command, std::size_t done, int failures) {
  log << command << ": " << done << " item(s) done, " << failures << " failed\n";
  return failures > 0 ? kExitItemFailure : kExitOk;
}

struct Prediction {
  FlowField flow;
  BinaryMask change;
  std::optional<net::ChangeProbMap> prob;
  CropWindow crop;
};

// Reads a forward-pass prediction. The crop sidecar is optional; without it
// the prediction covers the full sample of size (height, width).
Prediction read_prediction(const fs::path& dir, const std::string& id, int height, int width,
                           double threshold) {
  Prediction p;
  p.flow = read_flo(dir / (id + kPredFlowSuffix));
  const fs::path crop_path = dir / (id + kPredCropSuffix);
  p.crop = fs::exists(crop_path) ? read_crop_window(crop_path) : CropWindow{0, 0, height, width};
  if (p.crop.y0 < 0 || p.crop.x0 < 0 || p.crop.y0 + p.crop.height > height ||
      p.crop.x0 + p.crop.width > width) {
    throw InvalidShape(id + ": crop window falls outside the sample");
  }
  if (p.flow.height() != p.crop.height || p.flow.width() != p.crop.width) {
    throw InvalidShape(id + ": predicted flow does not match the crop window");
  }
  const fs::path prob_path = dir / (id + kPredProbSuffix);
  const fs::path change_path = dir / (id + kPredChangeSuffix);
  if (fs::exists(prob_path)) {
    const FlowField raw = read_flo(prob_path);
    p.prob = net::ChangeProbMap(raw.as_raster());
    p.change = p.prob->binarize(threshold);
  } else if (fs::exists(change_path)) {
    p.change = read_mask_png(change_path);
  } else {
    throw IoError(id + ": no change prediction (" + prob_path.filename().string() + " or " +
                  change_path.filename().string() + ")");
  }
  if (p.change.height() != p.crop.height || p.change.width() != p.crop.width) {
    throw InvalidShape(id + ": predicted change map does not match the crop window");
  }
  return p;
}

net::WeightStore resolve_weights(const RunConfig& config, std::ostream& log) {
  if (config.weights.empty()) {
    log << "forward: seeded weights (seed " << config.seed << ")\n";
    return net::init_weights(config.seed, config.arch);
  }
  net::WeightStore store;
  try {
    store = net::load_weights(config.weights, config.arch);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& spec : net::expected_tensors(config.arch)) {
    if (!store.contains(spec.name)) {
      throw ConfigError(MissingParameter(spec.name, config.weights.string()).what());
    }
  }
  log << "forward: weights from " << config.weights.string() << "\n";
  return store;
}

}  // namespace

CropWindow center_crop_window(int height, int width, int multiple) {
  if (multiple < 1) throw InvalidArgument("crop multiple must be >= 1");
  CropWindow c;
  c.height = height / multiple * multiple;
  c.width = width / multiple * multiple;
  c.y0 = (height - c.height) / 2;
  c.x0 = (width - c.width) / 2;
  return c;
}

void write_crop_window(const fs::path& path, const CropWindow& c) {
  json doc;
  doc["y0"] = c.y0;
  doc["x0"] = c.x0;
  doc["height"] = c.height;
  doc["width"] = c.width;
  write_text(path, doc.dump(2) + "\n");
}

CropWindow read_crop_window(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    const json doc = json::parse(in);
    CropWindow c;
    c.y0 = doc.at("y0").get<int>();
    c.x0 = doc.at("x0").get<int>();
    c.height = doc.at("height").get<int>();
    c.width = doc.at("width").get<int>();
    return c;
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> list_ids_with_suffix(const fs::path& dir, const std::string& suffix) {
  std::vector<std::string> ids;
  if (!fs::is_directory(dir)) return ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      ids.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

RasterImage flow_magnitude_heatmap(const FlowField& flow) {
  const int h = flow.height();
  const int w = flow.width();
  std::vector<double> mag(static_cast<std::size_t>(h) * w);
  double peak = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 d = flow.at(y, x);
      const double m = std::hypot(static_cast<double>(d.u), static_cast<double>(d.v));
      mag[static_cast<std::size_t>(y) * w + x] = m;
      peak = std::max(peak, m);
    }
  }
  RasterImage out(h, w, 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double t = peak > 0.0 ? mag[static_cast<std::size_t>(y) * w + x] / peak : 0.0;
      out.at(y, x, 0) = static_cast<float>(std::clamp(3.0 * t, 0.0, 1.0));
      out.at(y, x, 1) = static_cast<float>(std::clamp(3.0 * t - 1.0, 0.0, 1.0));
      out.at(y, x, 2) = static_cast<float>(std::clamp(3.0 * t - 2.0, 0.0, 1.0));
    }
  }
  return out;
}

int cmd_fixture(const RunConfig& config, std::ostream& log) {
  prepare_output(config);
  data::write_fixture_corpus(config.output, config.fixture_size);
  log << "fixture: wrote 3 pairs of " << config.fixture_size << "x" << config.fixture_size << " to "
      << config.output.string() << "\n";
  return kExitOk;
}

int cmd_synth(const RunConfig& config, std::ostream& log) {
  require_dir(config.input, "input");
  const fs::path manifest_path = config.input / data::kManifestName;
  std::vector<data::CorpusEntry> entries;
  if (fs::exists(manifest_path)) {
    try {
      entries = data::read_manifest(manifest_path);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  } else if (!fs::is_empty(config.input)) {
    throw ConfigError("no " + std::string(data::kManifestName) + " in " + config.input.string());
  } else {
    log << "warning: input directory " << config.input.string() << " is empty\n";
  }
  prepare_output(config);

  std::vector<std::optional<data::E2ESample>> built(entries.size());
  int failures = run_items(entries.size(), config.workers, log, [&](std::size_t i, ItemLog& item) {
    const auto& entry = entries[i];
    data::RegisteredPair pair;
    try {
      pair = data::load_registered_pair(config.input, entry);
    } catch (const std::exception& e) {
      item.fail(entry.stem + ": " + e.what());
      return;
    }
    const int h = pair.post_image.height();
    const int w = pair.post_image.width();
    const AffineTransform2D affine = data::sample_affine(config.affine, i, h, w);
    built[i] = data::synthesize_pair(pair, affine);
  });

  // Filtering and saving follow manifest order.
  std::vector<data::E2ESample> samples;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < built.size(); ++i) {
    if (!built[i]) continue;
    const std::size_t positives = built[i]->valid_positives();
    if (positives < config.min_positive) {
      log << entries[i].stem << ": filtered, " << positives << " valid positive pixel(s) < "
          << config.min_positive << "\n";
    }
    samples.push_back(std::move(*built[i]));
    origin.push_back(i);
  }
  // filter_pairs keeps order, so the kept samples pair up with origin by id.
  std::map<std::string, std::size_t> index_of;
  for (std::size_t k = 0; k < samples.size(); ++k) index_of[samples[k].id] = origin[k];
  samples = data::filter_pairs(std::move(samples), config.min_positive);

  std::vector<char> saved(samples.size(), 0);
  failures += run_items(samples.size(), config.workers, log, [&](std::size_t k, ItemLog&) {
    const auto& s = samples[k];
    const std::size_t i = index_of.at(s.id);
    data::SampleMeta meta;
    meta.id = s.id;
    meta.event = entries[i].event;
    meta.split = entries[i].split;
    meta.seed = config.seed;
    meta.index = i;
    meta.affine = s.affine;
    meta.height = s.target_image.height();
    meta.width = s.target_image.width();
    try {
      data::save_sample(config.output, s, meta);
      saved[k] = 1;
    } catch (...) {
      remove_item_files(config.output, s.id);
      throw;
    }
  });

  std::vector<data::CorpusEntry> kept;
  std::vector<data::SampleCounts> counts;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!saved[k]) continue;
    const auto& entry = entries[index_of.at(samples[k].id)];
    kept.push_back(entry);
    counts.push_back({samples[k].id, entry.event, entry.split, samples[k].valid_positives(),
                      samples[k].valid_negatives()});
  }
  data::write_manifest(config.output / data::kManifestName, kept);
  write_text(config.output / kStatsCsvName, data::format_stats_csv(data::dataset_stats(counts)));
  return finish(log, "synth", kept.size(), failures);
}

int cmd_forward(const RunConfig& config, std::ostream& log) {
  require_dir(config.input, "corpus");
  const net::WeightStore weights = resolve_weights(config, log);
  prepare_output(config);
  const auto ids = data::list_samples(config.input);
  const int failures = run_items(ids.size(), config.workers, log, [&](std::size_t i, ItemLog& item) {
    const std::string& id = ids[i];
    data::E2ESample s;
    try {
      s = data::load_sample(config.input, id);
    } catch (const std::exception& e) {
      item.fail(id + ": skipped, " + e.what());
      return;
    }
    const int h = s.target_image.height();
    const int w = s.target_image.width();
    const CropWindow crop = center_crop_window(h, w);
    if (crop.height == 0 || crop.width == 0) {
      item.fail(id + ": " + std::to_string(h) + "x" + std::to_string(w) + " is smaller than 32x32");
      return;
    }
    if (crop.height != h || crop.width != w) item.info(crop_note(id, h, w, crop));
    const RasterImage source = s.source_image.crop(crop.y0, crop.x0, crop.height, crop.width);
    const RasterImage target = s.target_image.crop(crop.y0, crop.x0, crop.height, crop.width);
    const net::ForwardResult r = net::e2ecd_forward(source, target, weights, config.arch);
    try {
      write_flo(config.output / (id + kPredFlowSuffix), r.flow);
      write_flo(config.output / (id + kPredProbSuffix), FlowField::from_raster(r.change.raster()));
      write_mask_png(config.output / (id + kPredChangeSuffix), r.change.binarize(config.threshold));
      write_crop_window(config.output / (id + kPredCropSuffix), crop);
    } catch (...) {
      remove_item_files(config.output, id);
      throw;
    }
  });
  return finish(log, "forward", ids.size() - static_cast<std::size_t>(failures), failures);
}

int cmd_eval(const RunConfig& config, std::ostream& log) {
  require_dir(config.pred, "prediction");
  require_dir(config.gt, "ground-truth");
  prepare_output(config);
  const auto pred_ids = list_ids_with_suffix(config.pred, kPredFlowSuffix);
  const auto gt_ids = data::list_samples(config.gt);
  std::vector<std::string> common;
  int failures = 0;
  std::set_intersection(pred_ids.begin(), pred_ids.end(), gt_ids.begin(), gt_ids.end(),
                        std::back_inserter(common));
  for (const auto& id : pred_ids) {
    if (!std::binary_search(gt_ids.begin(), gt_ids.end(), id)) {
      log << "error: orphan prediction without ground truth: " << id << "\n";
      ++failures;
    }
  }
  for (const auto& id : gt_ids) {
    if (!std::binary_search(pred_ids.begin(), pred_ids.end(), id)) {
      log << "error: orphan ground truth without prediction: " << id << "\n";
      ++failures;
    }
  }

  eval::EvalOptions options;
  options.radii = config.radii;
  options.delta = config.delta;
  options.threshold = config.threshold;
  std::vector<std::optional<eval::SampleEvaluation>> results(common.size());
  failures += run_items(common.size(), config.workers, log, [&](std::size_t i, ItemLog&) {
    const std::string& id = common[i];
    const data::E2ESample s = data::load_sample(config.gt, id);
    const Prediction p = read_prediction(config.pred, id, s.target_image.height(),
                                         s.target_image.width(), config.threshold);
    const CropWindow& c = p.crop;
    eval::GroundTruth gt{s.gt_flow.crop(c.y0, c.x0, c.height, c.width),
                         s.change_map.crop(c.y0, c.x0, c.height, c.width),
                         s.validity_mask.crop(c.y0, c.x0, c.height, c.width)};
    results[i] = eval::evaluate_sample(id, p.change, p.flow, gt, options);
  });
  std::vector<eval::SampleEvaluation> done;
  for (auto& r : results) {
    if (r) done.push_back(std::move(*r));
  }
  const std::size_t n = done.size();
  const auto corpus = eval::aggregate(std::move(done), options);
  write_text(config.output / kEvalCsvName, eval::format_report_csv(corpus));
  return finish(log, "eval", n, failures);
}

int cmd_stats(const RunConfig& config, std::ostream& log) {
  require_dir(config.input, "corpus");
  prepare_output(config);
  const auto ids = data::list_samples(config.input);
  std::vector<std::optional<data::SampleCounts>> counts(ids.size());
  const int failures = run_items(ids.size(), config.workers, log, [&](std::size_t i, ItemLog&) {
    const data::SampleMeta meta = data::read_sample_meta(config.input / (ids[i] + "_meta.json"));
    const data::E2ESample s = data::load_sample(config.input, ids[i]);
    counts[i] = data::SampleCounts{s.id, meta.event, meta.split, s.valid_positives(),
                                   s.valid_negatives()};
  });
  std::vector<data::SampleCounts> rows;
  for (auto& c : counts) {
    if (c) rows.push_back(std::move(*c));
  }
  write_text(config.output / kStatsCsvName, data::format_stats_csv(data::dataset_stats(rows)));
  return finish(log, "stats", rows.size(), failures);
}

int cmd_inspect(const RunConfig& config, std::ostream& log) {
  require_dir(config.input, "corpus");
  if (!config.pred.empty()) require_dir(config.pred, "prediction");
  prepare_output(config);
  auto ids = data::list_samples(config.input);
  if (!config.sample.empty()) {
    if (!std::binary_search(ids.begin(), ids.end(), config.sample)) {
      throw ConfigError("sample '" + config.sample + "' not found in " + config.input.string());
    }
    ids = {config.sample};
  }
  const int failures = run_items(ids.size(), config.workers, log, [&](std::size_t i, ItemLog& item) {
    const std::string& id = ids[i];
    const data::E2ESample s = data::load_sample(config.input, id);
    const fs::path out = config.output;
    write_png(out / (id + "_source.png"), s.source_image);
    write_png(out / (id + "_target.png"), s.target_image);
    write_png(out / (id + "_gt_warped.png"), warp_by_flow(s.source_image, s.gt_flow));
    write_mask_png(out / (id + "_gt_change.png"), s.change_map);
    write_png(out / (id + "_gt_flow_magnitude.png"), flow_magnitude_heatmap(s.gt_flow));

    if (config.pred.empty() || !fs::exists(config.pred / (id + kPredFlowSuffix))) {
      item.warn(id + ": no prediction found, wrote ground-truth panels only");
      return;
    }
    const Prediction p = read_prediction(config.pred, id, s.target_image.height(),
                                         s.target_image.width(), config.threshold);
    const RasterImage source = s.source_image.crop(p.crop.y0, p.crop.x0, p.crop.height, p.crop.width);
    write_png(out / (id + "_pred_warped.png"), warp_by_flow(source, p.flow));
    write_mask_png(out / (id + "_pred_change.png"), p.change);
    write_png(out / (id + "_pred_flow_magnitude.png"), flow_magnitude_heatmap(p.flow));
  });
  return finish(log, "inspect", ids.size() - static_cast<std::size_t>(failures), failures);
}

int run_command(const RunConfig& config, std::ostream& log) {
  static const std::map<std::string, int (*)(const RunConfig&, std::ostream&)> table{
      {"fixture", &cmd_fixture}, {"synth", &cmd_synth},     {"forward", &cmd_forward},
      {"eval", &cmd_eval},       {"stats", &cmd_stats},     {"inspect", &cmd_inspect}};
  const auto it = table.find(config.command);
  try {
    if (it == table.end()) throw ConfigError("unknown command '" + config.command + "'");
    return it->second(config, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitItemFailure;
  }
}

}  // namespace e2ecd::cli
