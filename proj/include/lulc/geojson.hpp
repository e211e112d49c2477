#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "lulc/labels.hpp"

namespace lulc {

struct PolygonSet {
    std::vector<LabelPolygon> polygons;
    std::vector<SkippedPolygon> skipped;  ///< invalid geometries, by feature index
};

/// Reads a FeatureCollection of Polygon/MultiPolygon features. The `class`
/// property is matched case-insensitively against the scheme; `provenance`
/// (manual | osm | pseudo) is optional and defaults to manual. Coordinates are
/// taken to be in the raster grid's metric frame. Invalid geometries are
/// skipped; unknown classes raise ValidationError.
PolygonSet parse_label_polygons(const nlohmann::json& collection, const ClassScheme& scheme);
PolygonSet read_label_polygons(const std::filesystem::path& path, const ClassScheme& scheme);

nlohmann::json to_geojson(const std::vector<LabelPolygon>& polys, const ClassScheme& scheme);
void write_label_polygons(const std::filesystem::path& path, const std::vector<LabelPolygon>& polys,
                          const ClassScheme& scheme);

}  // namespace lulc
