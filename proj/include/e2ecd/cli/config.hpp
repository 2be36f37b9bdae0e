#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "e2ecd/core/error.hpp"
#include "e2ecd/data/affine_sampler.hpp"
#include "e2ecd/net/arch.hpp"

namespace e2ecd::cli {

// Bad flags, unreadable config files or out-of-range values. Maps to exit
// code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitItemFailure = 1;
inline constexpr int kExitConfigError = 2;

inline constexpr const char* kRunConfigName = "run_config.txt";

using KeyValues = std::map<std::string, std::string>;

// "key = value" lines; '#' starts a comment, blank lines are skipped and
// hyphens in keys are read as underscores. Duplicate keys are rejected.
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::filesystem::path& path);

struct RunConfig {
  std::string command;
  std::filesystem::path input;   // synth: registered pairs; forward/stats/inspect: corpus
  std::filesystem::path gt;      // eval ground-truth corpus
  std::filesystem::path pred;    // eval/inspect predictions
  std::filesystem::path output;
  std::filesystem::path weights;  // empty: seeded init
  std::filesystem::path arch_file;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<int> radii{0, 5};
  double delta = 0.05;
  double threshold = 0.5;
  std::size_t min_positive = 100;
  int fixture_size = 128;
  std::string sample;  // inspect: restrict to one id
  data::AffineSamplingConfig affine;
  net::ArchConfig arch;
};

// Keys understood by resolve_config.
const std::vector<std::string>& known_keys();

// `file` holds values from --config, `flags` the ones given on the command
// line; flags win. Unknown keys and unparsable values throw ConfigError.
RunConfig resolve_config(const std::string& command, const KeyValues& file,
                         const KeyValues& flags);

// Every resolved key, one "key = value" line each, sorted by key.
std::string format_run_config(const RunConfig& config);

std::vector<int> parse_int_list(std::string_view text);

}  // namespace e2ecd::cli
