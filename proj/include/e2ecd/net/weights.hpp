#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "e2ecd/net/arch.hpp"

namespace e2ecd::net {

struct Tensor {
  std::vector<std::uint32_t> shape;
  std::vector<float> values;

  std::size_t element_count() const;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

// Named f32 tensors. Names are unique and every payload matches its shape.
class WeightStore {
 public:
  void insert(const std::string& name, Tensor tensor);
  bool contains(const std::string& name) const { return tensors_.contains(name); }
  // Throws MissingParameter naming the tensor (and `context` if given).
  const Tensor& get(const std::string& name, const std::string& context = {}) const;
  Tensor& mutable_tensor(const std::string& name);
  std::size_t size() const noexcept { return tensors_.size(); }
  const std::map<std::string, Tensor>& tensors() const noexcept { return tensors_; }

  friend bool operator==(const WeightStore&, const WeightStore&) = default;

 private:
  std::map<std::string, Tensor> tensors_;
};

enum class InitKind { HeUniform, Zero };

struct TensorSpec {
  std::string name;
  std::vector<std::uint32_t> shape;
  InitKind init;
};

// Every tensor the architecture reads, in a fixed order. Conv kernels are laid
// out (taps..., in, out); 2D kernels are [3,3,in,out], 4D kernels
// [3,3,3,3,in,out].
std::vector<TensorSpec> expected_tensors(const ArchConfig& arch);

// He-uniform kernels (bound sqrt(6 / fan_in)); biases and the final layer of
// every residual head start at zero. Each tensor draws from its own stream
// seeded by (seed, name).
WeightStore init_weights(std::uint64_t seed, const ArchConfig& arch);

// Container: "E2CD", u32 version, u32 count, then per tensor u16 name length,
// UTF-8 name, u8 dtype (0 = f32), u8 rank, u32 dims, f32 payload. All
// little-endian; tensors are written in name order.
inline constexpr std::uint32_t kWeightFormatVersion = 1;

std::vector<std::uint8_t> encode_weights(const WeightStore& store);
WeightStore decode_weights(std::span<const std::uint8_t> bytes);

void save_weights(const std::filesystem::path& path, const WeightStore& store);
WeightStore load_weights(const std::filesystem::path& path);
// Also rejects tensors the architecture does not know or whose shape differs
// (SchemaError).
WeightStore load_weights(const std::filesystem::path& path, const ArchConfig& arch);
void check_schema(const WeightStore& store, const ArchConfig& arch);

}  // namespace e2ecd::net
