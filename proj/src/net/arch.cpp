#include "e2ecd/net/arch.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "e2ecd/core/error.hpp"

namespace e2ecd::net {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw InvalidArgument("arch config: '" + key + "' expects an integer, got '" + value + "'");
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::istringstream in(value);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(parse_int(key, trim(cell)));
  return out;
}

template <std::size_t N>
std::array<int, N> parse_int_array(const std::string& key, const std::string& value) {
  const auto list = parse_int_list(key, value);
  if (list.size() != N) {
    throw InvalidArgument("arch config: '" + key + "' expects " + std::to_string(N) + " values");
  }
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = list[i];
  return out;
}

}  // namespace

double ArchConfig::effective_temperature() const {
  return temperature ? *temperature : 1.0 / std::sqrt(static_cast<double>(channels[3]));
}

void validate(const ArchConfig& a) {
  auto positive = [](int v) { return v > 0; };
  bool ok = positive(a.input_channels) && positive(a.stem_channels) &&
            positive(a.consensus_channels) && positive(a.refine_channels) && a.radius >= 1;
  for (int c : a.channels) ok = ok && positive(c);
  for (int c : a.head_hidden) ok = ok && positive(c);
  if (!ok) throw InvalidArgument("arch config: channel counts must be positive and radius >= 1");
  if (a.levels != 4) throw InvalidArgument("arch config: only levels = 4 is supported");
  if (a.temperature && !(*a.temperature > 0.0)) {
    throw InvalidArgument("arch config: temperature must be positive");
  }
}

ArchConfig parse_arch_config(std::string_view text) {
  ArchConfig a;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("arch config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key == "input_channels") a.input_channels = parse_int(key, value);
    else if (key == "stem_channels") a.stem_channels = parse_int(key, value);
    else if (key == "channels") a.channels = parse_int_array<4>(key, value);
    else if (key == "consensus_channels") a.consensus_channels = parse_int(key, value);
    else if (key == "refine_channels") a.refine_channels = parse_int(key, value);
    else if (key == "head_hidden") a.head_hidden = parse_int_array<2>(key, value);
    else if (key == "radius") a.radius = parse_int(key, value);
    else if (key == "levels") a.levels = parse_int(key, value);
    else if (key == "temperature") {
      try {
        std::size_t used = 0;
        a.temperature = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw InvalidArgument("arch config: 'temperature' expects a number, got '" + value + "'");
      }
    } else {
      throw InvalidArgument("arch config: unknown key '" + key + "'");
    }
  }
  validate(a);
  return a;
}

ArchConfig read_arch_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open arch config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_arch_config(ss.str());
}

std::string format_arch_config(const ArchConfig& a) {
  std::ostringstream out;
  out.precision(17);
  out << "input_channels = " << a.input_channels << "\n"
      << "stem_channels = " << a.stem_channels << "\n"
      << "channels = " << a.channels[0] << "," << a.channels[1] << "," << a.channels[2] << ","
      << a.channels[3] << "\n"
      << "consensus_channels = " << a.consensus_channels << "\n"
      << "refine_channels = " << a.refine_channels << "\n"
      << "head_hidden = " << a.head_hidden[0] << "," << a.head_hidden[1] << "\n"
      << "radius = " << a.radius << "\n"
      << "temperature = " << a.effective_temperature() << "\n"
      << "levels = " << a.levels << "\n";
  return out.str();
}

}  // namespace e2ecd::net
