#include "e2ecd/data/fixture.hpp"

#include <cmath>
#include <numbers>

#include "e2ecd/data/rasterize.hpp"

namespace e2ecd::data {

namespace {

BuildingPolygon box(double x0, double y0, double x1, double y1,
                    DamageClass damage = DamageClass::NoDamage) {
  return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, damage};
}

BuildingPolygon rotated_box(double cx, double cy, double hw, double hh, double deg,
                            DamageClass damage = DamageClass::NoDamage) {
  const double t = deg * std::numbers::pi / 180.0;
  const double c = std::cos(t), s = std::sin(t);
  BuildingPolygon p{{}, damage};
  for (auto [dx, dy] : {std::pair{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}}) {
    p.vertices.push_back({cx + c * dx - s * dy, cy + s * dx + c * dy});
  }
  return p;
}

RasterImage terrain(int size, double phase) {
  RasterImage img(size, size, 3);
  const double tau = 2.0 * std::numbers::pi;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double base = 0.38 + 0.10 * std::sin(tau * x / 41.0 + phase) * std::cos(tau * y / 57.0) +
                          0.06 * std::sin(tau * (x + y) / 23.0);
      img.at(y, x, 0) = static_cast<float>(base * 0.85);
      img.at(y, x, 1) = static_cast<float>(base * 1.05);
      img.at(y, x, 2) = static_cast<float>(base * 0.75);
    }
  }
  return img;
}

void paint(RasterImage& img, const std::vector<BuildingPolygon>& buildings) {
  const LabelMap labels = rasterize_polygons(buildings, img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const auto label = labels.at(y, x);
      if (label == 0) continue;
      const auto& b = buildings[static_cast<std::size_t>(label - 1)];
      float rgb[3] = {0.78f, 0.74f, 0.70f};
      switch (b.damage) {
        case DamageClass::NoDamage:
          break;
        case DamageClass::MinorDamage:
          rgb[0] = 0.70f; rgb[1] = 0.60f; rgb[2] = 0.52f;
          break;
        case DamageClass::MajorDamage:
          rgb[0] = 0.55f; rgb[1] = 0.42f; rgb[2] = 0.35f;
          break;
        case DamageClass::Destroyed: {
          const float rubble = ((x / 2 + y / 2) % 2 == 0) ? 0.30f : 0.45f;
          rgb[0] = rubble; rgb[1] = rubble * 0.9f; rgb[2] = rubble * 0.8f;
          break;
        }
      }
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = rgb[c];
    }
  }
}

RegisteredPair make_pair(std::string id, std::string event, int size, double phase,
                         std::vector<BuildingPolygon> pre, std::vector<BuildingPolygon> post) {
  RegisteredPair pair;
  pair.id = std::move(id);
  pair.event_name = std::move(event);
  pair.pre_image = terrain(size, phase);
  pair.post_image = terrain(size, phase);
  paint(pair.pre_image, pre);
  paint(pair.post_image, post);
  pair.pre_buildings = std::move(pre);
  pair.post_buildings = std::move(post);
  return pair;
}

}  // namespace

FixtureCorpus make_fixture_corpus(int size) {
  const double k = size / 128.0;
  using D = DamageClass;
  FixtureCorpus corpus;

  // Mixed damage, one building removed, one new.
  corpus.pairs.push_back(make_pair(
      "fixture_000", "hurricane-florence", size, 0.3,
      {box(10 * k, 12 * k, 34 * k, 30 * k), box(48 * k, 14 * k, 70 * k, 38 * k),
       rotated_box(96 * k, 28 * k, 14 * k, 9 * k, 20), box(16 * k, 60 * k, 40 * k, 84 * k),
       box(60 * k, 64 * k, 84 * k, 82 * k), rotated_box(100 * k, 96 * k, 12 * k, 16 * k, -15)},
      {box(10 * k, 12 * k, 34 * k, 30 * k, D::Destroyed), box(48 * k, 14 * k, 70 * k, 38 * k),
       rotated_box(96 * k, 28 * k, 14 * k, 9 * k, 20, D::MajorDamage),
       box(16 * k, 60 * k, 40 * k, 84 * k, D::MinorDamage),
       rotated_box(100 * k, 96 * k, 12 * k, 16 * k, -15), box(30 * k, 98 * k, 54 * k, 118 * k)}));

  corpus.pairs.push_back(make_pair(
      "fixture_001", "hurricane-florence", size, 1.7,
      {rotated_box(30 * k, 30 * k, 16 * k, 10 * k, 35), box(70 * k, 20 * k, 100 * k, 44 * k),
       box(20 * k, 76 * k, 44 * k, 100 * k), rotated_box(90 * k, 90 * k, 18 * k, 12 * k, -40)},
      {rotated_box(30 * k, 30 * k, 16 * k, 10 * k, 35, D::Destroyed),
       box(70 * k, 20 * k, 100 * k, 44 * k, D::Destroyed), box(20 * k, 76 * k, 44 * k, 100 * k),
       rotated_box(90 * k, 90 * k, 18 * k, 12 * k, -40, D::MajorDamage),
       box(56 * k, 104 * k, 76 * k, 120 * k)}));

  // Only a 7x7 footprint changes: 49 positives at most.
  corpus.pairs.push_back(make_pair(
      "fixture_002", "socal-fire", size, 2.9,
      {box(20, 20, 44, 44), box(60, 60, 67, 67), box(80, 20, 104, 40)},
      {box(20, 20, 44, 44), box(60, 60, 67, 67, D::Destroyed), box(80, 20, 104, 40)}));

  corpus.manifest = {{"fixture_000", "hurricane-florence", "train"},
                     {"fixture_001", "hurricane-florence", "test"},
                     {"fixture_002", "socal-fire", "hold"}};
  return corpus;
}

void write_fixture_corpus(const std::filesystem::path& dir, int size) {
  std::filesystem::create_directories(dir);
  const FixtureCorpus corpus = make_fixture_corpus(size);
  for (const auto& pair : corpus.pairs) save_registered_pair(dir, pair);
  write_manifest(dir / kManifestName, corpus.manifest);
}

}  // namespace e2ecd::data
