#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace e2ecd::net {

// Network shape. Read from a key = value text file; every key is optional:
//
//   input_channels     = 3
//   stem_channels      = 8
//   channels           = 16,32,64,128   # pyramid levels 1/4 .. 1/32
//   consensus_channels = 16
//   refine_channels    = 16
//   head_hidden        = 64,32
//   radius             = 4
//   temperature        = <1/sqrt(channels[3]) when omitted>
//   levels             = 4              # only 4 is supported
struct ArchConfig {
  int input_channels = 3;
  int stem_channels = 8;
  std::array<int, 4> channels{16, 32, 64, 128};
  int consensus_channels = 16;
  int refine_channels = 16;
  std::array<int, 2> head_hidden{64, 32};
  int radius = 4;
  std::optional<double> temperature;
  int levels = 4;

  double effective_temperature() const;
  int local_corr_channels() const { return (2 * radius + 1) * (2 * radius + 1); }

  friend bool operator==(const ArchConfig&, const ArchConfig&) = default;
};

void validate(const ArchConfig& arch);
ArchConfig parse_arch_config(std::string_view text);
ArchConfig read_arch_config(const std::filesystem::path& path);
std::string format_arch_config(const ArchConfig& arch);

}  // namespace e2ecd::net
