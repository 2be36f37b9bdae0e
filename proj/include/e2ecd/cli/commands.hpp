#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "e2ecd/cli/config.hpp"
#include "e2ecd/core/raster.hpp"

namespace e2ecd::cli {

// Prediction files written by `forward`, next to each other in one directory.
//   {id}_pred_flow.flo    full-resolution flow
//   {id}_pred_prob.flo    2-channel (p_unchanged, p_changed) map in the .flo container
//   {id}_pred_change.png  p_changed >= threshold
//   {id}_pred_crop.json   crop window applied to the sample before the forward pass
inline constexpr const char* kPredFlowSuffix = "_pred_flow.flo";
inline constexpr const char* kPredProbSuffix = "_pred_prob.flo";
inline constexpr const char* kPredChangeSuffix = "_pred_change.png";
inline constexpr const char* kPredCropSuffix = "_pred_crop.json";

inline constexpr const char* kEvalCsvName = "eval.csv";
inline constexpr const char* kStatsCsvName = "stats.csv";

struct CropWindow {
  int y0 = 0;
  int x0 = 0;
  int height = 0;
  int width = 0;
  friend bool operator==(const CropWindow&, const CropWindow&) = default;
};

// Largest centered window whose sides are multiples of `multiple`. The extra
// row or column of an odd margin goes to the bottom/right.
CropWindow center_crop_window(int height, int width, int multiple = 32);

void write_crop_window(const std::filesystem::path& path, const CropWindow& window);
CropWindow read_crop_window(const std::filesystem::path& path);

// Ids that have a `suffix` file in `dir`, sorted.
std::vector<std::string> list_ids_with_suffix(const std::filesystem::path& dir,
                                              const std::string& suffix);

// Per-pixel flow magnitude scaled by the field maximum and mapped to a
// black-red-yellow-white ramp.
RasterImage flow_magnitude_heatmap(const FlowField& flow);

// Each command logs to `log` and returns an exit code: 0 success, 1 when any
// item failed, 2 on configuration errors.
int cmd_fixture(const RunConfig& config, std::ostream& log);
int cmd_synth(const RunConfig& config, std::ostream& log);
int cmd_forward(const RunConfig& config, std::ostream& log);
int cmd_eval(const RunConfig& config, std::ostream& log);
int cmd_stats(const RunConfig& config, std::ostream& log);
int cmd_inspect(const RunConfig& config, std::ostream& log);

// Dispatches on config.command and maps uncaught errors to exit codes.
int run_command(const RunConfig& config, std::ostream& log);

// Full command line entry point used by the executable.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace e2ecd::cli
