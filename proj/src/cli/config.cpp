#include "e2ecd/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace e2ecd::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value for '" + key + "': '" + value + "'");
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key{trim(line.substr(0, eq))};
    std::replace(key.begin(), key.end(), '-', '_');
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, std::string{trim(line.substr(eq + 1))}).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_key_values(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "arch",          "delta",        "fixture_size",  "gt",
      "input",         "max_rotation_deg", "max_shear_deg", "max_translation_frac",
      "min_positive",  "output",       "pred",          "radii",
      "sample",        "scale_max",    "scale_min",     "seed",
      "threshold",     "weights",      "workers"};
  return keys;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string item{trim(text.substr(0, comma))};
    if (item.empty()) throw ConfigError("empty entry in list");
    out.push_back(parse_number<int>("list", item));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

RunConfig resolve_config(const std::string& command, const KeyValues& file,
                         const KeyValues& flags) {
  KeyValues merged = file;
  for (const auto& [k, v] : flags) merged[k] = v;

  const auto& keys = known_keys();
  for (const auto& [k, v] : merged) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }

  RunConfig c;
  c.command = command;
  auto get = [&](const char* key) -> const std::string* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };
  if (auto v = get("input")) c.input = *v;
  if (auto v = get("gt")) c.gt = *v;
  if (auto v = get("pred")) c.pred = *v;
  if (auto v = get("output")) c.output = *v;
  if (auto v = get("weights")) c.weights = *v;
  if (auto v = get("arch")) c.arch_file = *v;
  if (auto v = get("sample")) c.sample = *v;
  if (auto v = get("seed")) c.seed = parse_number<std::uint64_t>("seed", *v);
  if (auto v = get("workers")) c.workers = parse_number<int>("workers", *v);
  if (auto v = get("radii")) {
    try {
      c.radii = parse_int_list(*v);
    } catch (const ConfigError&) {
      throw ConfigError("invalid value for 'radii': '" + *v + "'");
    }
  }
  if (auto v = get("delta")) c.delta = parse_number<double>("delta", *v);
  if (auto v = get("threshold")) c.threshold = parse_number<double>("threshold", *v);
  if (auto v = get("min_positive")) c.min_positive = parse_number<std::size_t>("min_positive", *v);
  if (auto v = get("fixture_size")) c.fixture_size = parse_number<int>("fixture_size", *v);
  if (auto v = get("max_rotation_deg")) c.affine.max_rotation_deg = parse_number<double>("max_rotation_deg", *v);
  if (auto v = get("scale_min")) c.affine.scale_min = parse_number<double>("scale_min", *v);
  if (auto v = get("scale_max")) c.affine.scale_max = parse_number<double>("scale_max", *v);
  if (auto v = get("max_translation_frac")) {
    c.affine.max_translation_frac = parse_number<double>("max_translation_frac", *v);
  }
  if (auto v = get("max_shear_deg")) c.affine.max_shear_deg = parse_number<double>("max_shear_deg", *v);
  c.affine.seed = c.seed;

  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  for (int r : c.radii) {
    if (r < 0) throw ConfigError("radii must be non-negative");
  }
  if (!(c.delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(c.threshold >= 0.0 && c.threshold <= 1.0)) throw ConfigError("threshold must be in [0, 1]");
  if (c.fixture_size < 32) throw ConfigError("fixture_size must be >= 32");
  try {
    data::validate(c.affine);
    if (!c.arch_file.empty()) c.arch = net::read_arch_config(c.arch_file);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

std::string format_run_config(const RunConfig& c) {
  KeyValues out;
  out["command"] = c.command;
  out["input"] = c.input.string();
  out["gt"] = c.gt.string();
  out["pred"] = c.pred.string();
  out["output"] = c.output.string();
  out["weights"] = c.weights.string();
  out["arch"] = c.arch_file.string();
  out["sample"] = c.sample;
  out["seed"] = std::to_string(c.seed);
  out["workers"] = std::to_string(c.workers);
  out["radii"] = join_ints(c.radii);
  out["delta"] = format_double(c.delta);
  out["threshold"] = format_double(c.threshold);
  out["min_positive"] = std::to_string(c.min_positive);
  out["fixture_size"] = std::to_string(c.fixture_size);
  out["max_rotation_deg"] = format_double(c.affine.max_rotation_deg);
  out["scale_min"] = format_double(c.affine.scale_min);
  out["scale_max"] = format_double(c.affine.scale_max);
  out["max_translation_frac"] = format_double(c.affine.max_translation_frac);
  out["max_shear_deg"] = format_double(c.affine.max_shear_deg);
  std::string text;
  for (const auto& [k, v] : out) text += k + " = " + v + "\n";
  text += "\n# architecture\n" + net::format_arch_config(c.arch);
  return text;
}

}  // namespace e2ecd::cli
