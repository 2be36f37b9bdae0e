#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "e2ecd/data/types.hpp"

namespace e2ecd::data {

// Row of the split manifest CSV (header: stem,event,split).
struct CorpusEntry {
  std::string stem;
  std::string event;
  std::string split;
};

inline constexpr const char* kManifestName = "manifest.csv";

std::vector<CorpusEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<CorpusEntry>& entries);

// Annotation document: {"buildings": [{"wkt": "POLYGON ((...))", "damage": "..."}]}.
// For pre-event files the damage field is ignored and forced to no-damage.
std::vector<BuildingPolygon> read_annotations(const std::filesystem::path& path, bool pre_event);
void write_annotations(const std::filesystem::path& path,
                       const std::vector<BuildingPolygon>& buildings);
std::string to_wkt(const BuildingPolygon& polygon);

// {stem}_pre.png, {stem}_post.png, {stem}_pre.json, {stem}_post.json
RegisteredPair load_registered_pair(const std::filesystem::path& dir, const CorpusEntry& entry);
void save_registered_pair(const std::filesystem::path& dir, const RegisteredPair& pair);

struct SampleMeta {
  std::string id;
  std::string event;
  std::string split;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  AffineTransform2D affine;
  int height = 0;
  int width = 0;
};


// {stem}_source.png, _target.png, _flow.flo, _mask.png, _change.png, _meta.json
void save_sample(const std::filesystem::path& dir, const E2ESample& sample, const SampleMeta& meta);
E2ESample load_sample(const std::filesystem::path& dir, const std::string& stem);
SampleMeta read_sample_meta(const std::filesystem::path& path);

// Sample ids with a *_meta.json in `dir`, sorted.
std::vector<std::string> list_samples(const std::filesystem::path& dir);

}  // namespace e2ecd::data
