#include "e2ecd/data/types.hpp"

#include "e2ecd/core/error.hpp"

namespace e2ecd::data {

std::string_view damage_name(DamageClass damage) {
  switch (damage) {
    case DamageClass::NoDamage:
      return "no-damage";
    case DamageClass::MinorDamage:
      return "minor-damage";
    case DamageClass::MajorDamage:
      return "major-damage";
    case DamageClass::Destroyed:
      return "destroyed";
  }
  return "no-damage";
}

DamageClass parse_damage(std::string_view name) {
  for (auto d : {DamageClass::NoDamage, DamageClass::MinorDamage, DamageClass::MajorDamage,
                 DamageClass::Destroyed}) {
    if (damage_name(d) == name) return d;
  }
  throw SchemaError("unknown damage class '" + std::string(name) + "'");
}

void validate(const RegisteredPair& pair) {
  if (!pair.pre_image.same_size(pair.post_image)) {
    throw InvalidShape("pair '" + pair.id + "': pre and post images differ in size");
  }
  for (const auto& b : pair.pre_buildings) {
    if (b.damage != DamageClass::NoDamage) {
      throw SchemaError("pair '" + pair.id + "': pre-event building carries damage '" +
                        std::string(damage_name(b.damage)) + "'");
    }
  }
  for (const auto* list : {&pair.pre_buildings, &pair.post_buildings}) {
    for (const auto& b : *list) {
      if (b.vertices.size() < 3) {
        throw InvalidArgument("pair '" + pair.id + "': polygon with fewer than 3 vertices");
      }
    }
  }
}

namespace {
std::size_t count_valid(const E2ESample& s, bool positive) {
  std::size_t n = 0;
  const auto mask = s.validity_mask.data();
  const auto change = s.change_map.data();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] && (change[i] != 0) == positive) ++n;
  }
  return n;
}
}  // namespace

std::size_t E2ESample::valid_positives() const { return count_valid(*this, true); }
std::size_t E2ESample::valid_negatives() const { return count_valid(*this, false); }

}  // namespace e2ecd::data
