#include "e2ecd/core/flow_io.hpp"

#include <fstream>
#include <iterator>
#include <limits>

#include "e2ecd/core/byte_order.hpp"
#include "e2ecd/core/error.hpp"

namespace e2ecd {

std::vector<std::uint8_t> encode_flo(const FlowField& flow) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + 4 * flow.data().size());
  bytes::put_le(out, kFloTag);
  bytes::put_le(out, static_cast<std::int32_t>(flow.width()));
  bytes::put_le(out, static_cast<std::int32_t>(flow.height()));
  for (float v : flow.data()) bytes::put_le(out, v);
  return out;
}

FlowField decode_flo(std::span<const std::uint8_t> data) {
  bytes::Reader in(data);
  const auto tag = in.get<float>("flo tag");
  if (tag != kFloTag) throw FormatError("bad .flo tag", 0);
  const auto width = in.get<std::int32_t>("flo width");
  const auto height = in.get<std::int32_t>("flo height");
  if (width < 0 || height < 0) throw FormatError("negative .flo dimensions", 4);
  const std::size_t count = 2 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (count > in.remaining() / 4) {
    throw FormatError("truncated .flo payload: need " + std::to_string(count * 4) + " bytes, have " +
                          std::to_string(in.remaining()),
                      in.offset());
  }
  std::vector<float> uv(count);
  for (auto& v : uv) v = in.get<float>("flo payload");
  if (in.remaining() != 0) throw FormatError("trailing bytes after .flo payload", in.offset());
  return {height, width, std::move(uv)};
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

FlowField read_flo(const std::filesystem::path& path) {
  try {
    return decode_flo(read_file_bytes(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.detail(), e.offset());
  }
}

void write_flo(const std::filesystem::path& path, const FlowField& flow) {
  write_file_bytes(path, encode_flo(flow));
}

}  // namespace e2ecd
