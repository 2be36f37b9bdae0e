#include "e2ecd/data/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "e2ecd/core/error.hpp"
#include "e2ecd/core/flow_io.hpp"
#include "e2ecd/core/image_io.hpp"
#include "e2ecd/data/wkt.hpp"
#include "json.hpp"

namespace e2ecd::data {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
}

}  // namespace

std::vector<CorpusEntry> read_manifest(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::vector<CorpusEntry> entries;
  bool header = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (header) {
      header = false;
      if (cells.size() == 3 && cells[0] == "stem" && cells[1] == "event" && cells[2] == "split") {
        continue;
      }
      throw SchemaError(path.string() + ": manifest header must be 'stem,event,split'");
    }
    if (cells.size() != 3 || cells[0].empty()) {
      throw SchemaError(path.string() + ": malformed manifest line " + std::to_string(line_no));
    }
    entries.push_back({cells[0], cells[1], cells[2]});
  }
  return entries;
}

void write_manifest(const fs::path& path, const std::vector<CorpusEntry>& entries) {
  std::string text = "stem,event,split\n";
  for (const auto& e : entries) text += e.stem + "," + e.event + "," + e.split + "\n";
  write_text(path, text);
}

std::vector<BuildingPolygon> read_annotations(const fs::path& path, bool pre_event) {
  const json doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("buildings") || !doc["buildings"].is_array()) {
    throw SchemaError(path.string() + ": expected an object with a 'buildings' array");
  }
  std::vector<BuildingPolygon> out;
  for (const auto& b : doc["buildings"]) {
    if (!b.is_object() || !b.contains("wkt") || !b["wkt"].is_string()) {
      throw SchemaError(path.string() + ": building entry without a 'wkt' string");
    }
    BuildingPolygon polygon = parse_wkt_polygon(b["wkt"].get<std::string>());
    if (!pre_event && b.contains("damage")) {
      polygon.damage = parse_damage(b["damage"].get<std::string>());
    }
    out.push_back(std::move(polygon));
  }
  return out;
}

std::string to_wkt(const BuildingPolygon& polygon) {
  std::ostringstream out;
  out << std::setprecision(17) << "POLYGON ((";
  for (const auto& p : polygon.vertices) out << p.x << ' ' << p.y << ", ";
  const auto& first = polygon.vertices.front();
  out << first.x << ' ' << first.y << "))";
  return out.str();
}

void write_annotations(const fs::path& path, const std::vector<BuildingPolygon>& buildings) {
  json doc;
  doc["buildings"] = json::array();
  for (const auto& b : buildings) {
    doc["buildings"].push_back({{"wkt", to_wkt(b)}, {"damage", std::string(damage_name(b.damage))}});
  }
  write_text(path, doc.dump(2) + "\n");
}

RegisteredPair load_registered_pair(const fs::path& dir, const CorpusEntry& entry) {
  RegisteredPair pair;
  pair.id = entry.stem;
  pair.event_name = entry.event;
  pair.pre_image = read_png(dir / (entry.stem + "_pre.png"));
  pair.post_image = read_png(dir / (entry.stem + "_post.png"));
  pair.pre_buildings = read_annotations(dir / (entry.stem + "_pre.json"), true);
  pair.post_buildings = read_annotations(dir / (entry.stem + "_post.json"), false);
  validate(pair);
  return pair;
}

void save_registered_pair(const fs::path& dir, const RegisteredPair& pair) {
  write_png(dir / (pair.id + "_pre.png"), pair.pre_image);
  write_png(dir / (pair.id + "_post.png"), pair.post_image);
  write_annotations(dir / (pair.id + "_pre.json"), pair.pre_buildings);
  write_annotations(dir / (pair.id + "_post.json"), pair.post_buildings);
}

void save_sample(const fs::path& dir, const E2ESample& s, const SampleMeta& meta) {
  write_png(dir / (s.id + "_source.png"), s.source_image);
  write_png(dir / (s.id + "_target.png"), s.target_image);
  write_flo(dir / (s.id + "_flow.flo"), s.gt_flow);
  write_mask_png(dir / (s.id + "_mask.png"), s.validity_mask);
  write_mask_png(dir / (s.id + "_change.png"), s.change_map);

  json doc;
  doc["id"] = meta.id;
  doc["event"] = meta.event;
  doc["split"] = meta.split;
  doc["seed"] = meta.seed;
  doc["index"] = meta.index;
  doc["height"] = meta.height;
  doc["width"] = meta.width;
  doc["affine"] = meta.affine.m;
  write_text(dir / (s.id + "_meta.json"), doc.dump(2) + "\n");
}

SampleMeta read_sample_meta(const fs::path& path) {
  const json doc = parse_json_file(path);
  try {
    SampleMeta meta;
    meta.id = doc.at("id").get<std::string>();
    meta.event = doc.at("event").get<std::string>();
    meta.split = doc.at("split").get<std::string>();
    meta.seed = doc.at("seed").get<std::uint64_t>();
    meta.index = doc.at("index").get<std::uint64_t>();
    meta.height = doc.at("height").get<int>();
    meta.width = doc.at("width").get<int>();
    meta.affine.m = doc.at("affine").get<std::array<double, 6>>();
    return meta;
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

E2ESample load_sample(const fs::path& dir, const std::string& stem) {
  const SampleMeta meta = read_sample_meta(dir / (stem + "_meta.json"));
  E2ESample s;
  s.id = meta.id;
  s.event_name = meta.event;
  s.affine = meta.affine;
  s.source_image = read_png(dir / (stem + "_source.png"));
  s.target_image = read_png(dir / (stem + "_target.png"));
  s.gt_flow = read_flo(dir / (stem + "_flow.flo"));
  s.validity_mask = read_mask_png(dir / (stem + "_mask.png"));
  s.change_map = read_mask_png(dir / (stem + "_change.png"));
  const int h = s.target_image.height();
  const int w = s.target_image.width();
  if (!s.source_image.same_size(s.target_image) || s.gt_flow.height() != h ||
      s.gt_flow.width() != w || s.validity_mask.height() != h || s.validity_mask.width() != w ||
      s.change_map.height() != h || s.change_map.width() != w) {
    throw InvalidShape("sample '" + stem + "': rasters disagree in size");
  }
  return s;
}

std::vector<std::string> list_samples(const fs::path& dir) {
  std::vector<std::string> ids;
  if (!fs::is_directory(dir)) return ids;
  const std::string suffix = "_meta.json";
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      ids.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace e2ecd::data
