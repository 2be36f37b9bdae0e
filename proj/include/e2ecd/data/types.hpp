#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "e2ecd/core/affine.hpp"
#include "e2ecd/core/raster.hpp"

namespace e2ecd::data {

enum class DamageClass : std::uint8_t { NoDamage, MinorDamage, MajorDamage, Destroyed };

std::string_view damage_name(DamageClass damage);
// Accepts the annotation spellings "no-damage", "minor-damage",
// "major-damage" and "destroyed". Throws SchemaError otherwise.
DamageClass parse_damage(std::string_view name);

// Closed ring without the repeated closing vertex.
struct BuildingPolygon {
  std::vector<Point2> vertices;
  DamageClass damage = DamageClass::NoDamage;
};

struct RegisteredPair {
  std::string id;
  std::string event_name;
  RasterImage pre_image;
  RasterImage post_image;
  std::vector<BuildingPolygon> pre_buildings;
  std::vector<BuildingPolygon> post_buildings;
};

// Throws if the pair breaks its invariants (image sizes, pre-event damage).
void validate(const RegisteredPair& pair);

struct E2ESample {
  std::string id;
  std::string event_name;
  RasterImage source_image;  // unregistered pre-event
  RasterImage target_image;  // post-event
  FlowField gt_flow;
  BinaryMask validity_mask;
  BinaryMask change_map;
  AffineTransform2D affine;

  // change_map pixels with validity_mask == 1.
  std::size_t valid_positives() const;
  std::size_t valid_negatives() const;
};

}  // namespace e2ecd::data
