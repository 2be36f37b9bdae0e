#pragma once

#include <string_view>

#include "e2ecd/data/types.hpp"

namespace e2ecd::data {

// Parses a WKT POLYGON with a single outer ring, e.g.
// "POLYGON ((0 0, 4 0, 4 4, 0 4, 0 0))". The repeated closing vertex is
// dropped. The returned polygon carries DamageClass::NoDamage.
//
// Malformed text raises ParseError with the byte offset; MULTIPOLYGON, other
// geometry types and interior rings raise UnsupportedGeometry.
BuildingPolygon parse_wkt_polygon(std::string_view text);

}  // namespace e2ecd::data
