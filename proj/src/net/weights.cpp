#include "e2ecd/net/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "e2ecd/core/byte_order.hpp"
#include "e2ecd/core/error.hpp"
#include "e2ecd/core/flow_io.hpp"

namespace e2ecd::net {

namespace {

constexpr std::uint8_t kMagic[4] = {'E', '2', 'C', 'D'};

std::string shape_string(const std::vector<std::uint32_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "," : "") + std::to_string(shape[i]);
  return s + "]";
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void conv2d_specs(std::vector<TensorSpec>& out, const std::string& prefix, int cin, int cout,
                  InitKind kernel_init) {
  out.push_back({prefix + ".weight",
                 {3, 3, static_cast<std::uint32_t>(cin), static_cast<std::uint32_t>(cout)},
                 kernel_init});
  out.push_back({prefix + ".bias", {static_cast<std::uint32_t>(cout)}, InitKind::Zero});
}

}  // namespace

std::size_t Tensor::element_count() const {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         [](std::size_t a, std::uint32_t b) { return a * b; });
}

void WeightStore::insert(const std::string& name, Tensor tensor) {
  if (name.empty() || name.size() > 0xFFFF) throw InvalidArgument("invalid tensor name length");
  if (tensor.shape.size() > 0xFF) throw InvalidArgument("tensor rank too large: " + name);
  if (tensor.values.size() != tensor.element_count()) {
    throw InvalidShape("tensor '" + name + "' has " + std::to_string(tensor.values.size()) +
                       " values for shape " + shape_string(tensor.shape));
  }
  if (!tensors_.emplace(name, std::move(tensor)).second) {
    throw InvalidArgument("duplicate tensor name '" + name + "'");
  }
}

const Tensor& WeightStore::get(const std::string& name, const std::string& context) const {
  const auto it = tensors_.find(name);
  if (it == tensors_.end()) throw MissingParameter(name, context);
  return it->second;
}

Tensor& WeightStore::mutable_tensor(const std::string& name) {
  const auto it = tensors_.find(name);
  if (it == tensors_.end()) throw MissingParameter(name);
  return it->second;
}

std::vector<TensorSpec> expected_tensors(const ArchConfig& a) {
  validate(a);
  std::vector<TensorSpec> specs;
  const auto he = InitKind::HeUniform;

  conv2d_specs(specs, "backbone.stem", a.input_channels, a.stem_channels, he);
  int prev = a.stem_channels;
  for (int s = 0; s < 4; ++s) {
    conv2d_specs(specs, "backbone.stage" + std::to_string(s + 1), prev, a.channels[s], he);
    prev = a.channels[s];
  }

  const auto cc = static_cast<std::uint32_t>(a.consensus_channels);
  specs.push_back({"consensus.conv1.weight", {3, 3, 3, 3, 1, cc}, he});
  specs.push_back({"consensus.conv2.weight", {3, 3, 3, 3, cc, cc}, he});
  specs.push_back({"consensus.conv3.weight", {3, 3, 3, 3, cc, 1}, he});

  conv2d_specs(specs, "head4.refine1", 3, a.refine_channels, he);
  conv2d_specs(specs, "head4.refine2", a.refine_channels, 2, InitKind::Zero);

  for (int level = 1; level <= 3; ++level) {
    const std::string p = "level" + std::to_string(level);
    conv2d_specs(specs, p + ".flow_head.conv1", a.local_corr_channels() + 2, a.head_hidden[0], he);
    conv2d_specs(specs, p + ".flow_head.conv2", a.head_hidden[0], a.head_hidden[1], he);
    conv2d_specs(specs, p + ".flow_head.conv3", a.head_hidden[1], 2, InitKind::Zero);
    conv2d_specs(specs, p + ".cd_head.conv1", a.channels[level - 1], a.head_hidden[0], he);
    conv2d_specs(specs, p + ".cd_head.conv2", a.head_hidden[0], a.head_hidden[1], he);
    conv2d_specs(specs, p + ".cd_head.conv3", a.head_hidden[1], 2, he);
  }
  return specs;
}

WeightStore init_weights(std::uint64_t seed, const ArchConfig& arch) {
  WeightStore store;
  for (const auto& spec : expected_tensors(arch)) {
    Tensor t{spec.shape, std::vector<float>()};
    t.values.assign(t.element_count(), 0.0f);
    if (spec.init == InitKind::HeUniform) {
      // Fan-in is every axis but the last (output channels).
      std::size_t fan_in = 1;
      for (std::size_t d = 0; d + 1 < spec.shape.size(); ++d) fan_in *= spec.shape[d];
      const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
      const std::uint64_t h = fnv1a(spec.name);
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
      std::mt19937_64 engine(seq);
      for (auto& v : t.values) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        v = static_cast<float>((2.0 * u - 1.0) * bound);
      }
    }
    store.insert(spec.name, std::move(t));
  }
  return store;
}

std::vector<std::uint8_t> encode_weights(const WeightStore& store) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  bytes::put_le(out, kWeightFormatVersion);
  bytes::put_le(out, static_cast<std::uint32_t>(store.size()));
  for (const auto& [name, t] : store.tensors()) {
    bytes::put_le(out, static_cast<std::uint16_t>(name.size()));
    out.insert(out.end(), name.begin(), name.end());
    bytes::put_le(out, std::uint8_t{0});
    bytes::put_le(out, static_cast<std::uint8_t>(t.shape.size()));
    for (auto d : t.shape) bytes::put_le(out, d);
    for (float v : t.values) bytes::put_le(out, v);
  }
  return out;
}

WeightStore decode_weights(std::span<const std::uint8_t> data) {
  bytes::Reader in(data);
  const auto magic = in.take(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    throw FormatError("bad weight container magic", 0);
  }
  const auto version_at = in.offset();
  const auto version = in.get<std::uint32_t>("format version");
  if (version != kWeightFormatVersion) {
    throw FormatError("unsupported weight container version " + std::to_string(version), version_at);
  }
  const auto count = in.get<std::uint32_t>("tensor count");
  WeightStore store;
  for (std::uint32_t n = 0; n < count; ++n) {
    const auto record_at = in.offset();
    const auto name_len = in.get<std::uint16_t>("name length");
    const auto name_bytes = in.take(name_len, "tensor name");
    std::string name(name_bytes.begin(), name_bytes.end());
    const auto dtype_at = in.offset();
    if (in.get<std::uint8_t>("dtype") != 0) throw FormatError("unsupported dtype in '" + name + "'", dtype_at);
    const auto rank = in.get<std::uint8_t>("rank");
    Tensor t;
    for (std::uint8_t d = 0; d < rank; ++d) t.shape.push_back(in.get<std::uint32_t>("dimension"));
    const std::size_t elements = t.element_count();
    if (elements > in.remaining() / 4) {
      throw FormatError("truncated payload for tensor '" + name + "'", in.offset());
    }
    t.values.resize(elements);
    for (auto& v : t.values) v = in.get<float>("tensor payload");
    if (store.contains(name)) throw FormatError("duplicate tensor '" + name + "'", record_at);
    store.insert(name, std::move(t));
  }
  if (in.remaining() != 0) throw FormatError("trailing bytes after last tensor", in.offset());
  return store;
}

void save_weights(const std::filesystem::path& path, const WeightStore& store) {
  write_file_bytes(path, encode_weights(store));
}

WeightStore load_weights(const std::filesystem::path& path) {
  try {
    return decode_weights(read_file_bytes(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.detail(), e.offset());
  }
}

void check_schema(const WeightStore& store, const ArchConfig& arch) {
  const auto specs = expected_tensors(arch);
  for (const auto& [name, t] : store.tensors()) {
    const auto it = std::find_if(specs.begin(), specs.end(),
                                 [&](const TensorSpec& s) { return s.name == name; });
    if (it == specs.end()) throw SchemaError("unknown tensor '" + name + "' for this architecture");
    if (it->shape != t.shape) {
      throw SchemaError("tensor '" + name + "' has shape " + shape_string(t.shape) + ", expected " +
                        shape_string(it->shape));
    }
  }
}

WeightStore load_weights(const std::filesystem::path& path, const ArchConfig& arch) {
  WeightStore store = load_weights(path);
  check_schema(store, arch);
  return store;
}

}  // namespace e2ecd::net
