#include "lulc/geojson.hpp"

#include <fstream>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/raster_io.hpp"

namespace lulc {

using nlohmann::json;

namespace {

Ring parse_ring(const json& coords) {
    Ring ring;
    ring.reserve(coords.size());
    for (const auto& pt : coords) {
        if (!pt.is_array() || pt.size() < 2) throw ValidationError("position must have at least two numbers");
        ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return ring;
}

LabelPolygon parse_polygon(const json& rings, ClassIndex cls, Provenance prov) {
    if (!rings.is_array() || rings.empty()) throw ValidationError("polygon has no rings");
    LabelPolygon p;
    p.class_index = cls;
    p.provenance = prov;
    p.exterior = parse_ring(rings[0]);
    for (std::size_t i = 1; i < rings.size(); ++i) p.holes.push_back(parse_ring(rings[i]));
    return p;
}

json ring_json(const Ring& ring) {
    json a = json::array();
    for (const Point& p : ring) a.push_back({p.x, p.y});
    return a;
}

}  // namespace

PolygonSet parse_label_polygons(const json& collection, const ClassScheme& scheme) {
    if (!collection.is_object() || collection.value("type", "") != "FeatureCollection")
        throw ValidationError("label file must be a GeoJSON FeatureCollection");
    PolygonSet set;
    if (!collection.contains("features") || !collection["features"].is_array())
        throw ValidationError("FeatureCollection has no 'features' array");
    const auto& features = collection["features"];
    for (std::size_t i = 0; i < features.size(); ++i) {
        const json& f = features[i];
        const json props = f.value("properties", json::object());
        if (!props.contains("class") || !props["class"].is_string()) {
            std::ostringstream os;
            os << "feature " << i << " has no string 'class' property";
            throw ValidationError(os.str());
        }
        const ClassIndex cls = scheme.index_of(props["class"].get<std::string>());
        if (cls == 0) throw ValidationError("feature class must not be Unlabeled");
        Provenance prov = Provenance::Manual;
        if (props.contains("provenance") && props["provenance"].is_string())
            prov = provenance_from_string(props["provenance"].get<std::string>());

        try {
            const json& geom = f.at("geometry");
            const std::string type = geom.at("type").get<std::string>();
            std::vector<LabelPolygon> parts;
            if (type == "Polygon") {
                parts.push_back(parse_polygon(geom.at("coordinates"), cls, prov));
            } else if (type == "MultiPolygon") {
                for (const auto& rings : geom.at("coordinates")) parts.push_back(parse_polygon(rings, cls, prov));
            } else {
                throw ValidationError("unsupported geometry type '" + type + "'");
            }
            for (const auto& p : parts) validate_polygon(p);
            for (auto& p : parts) set.polygons.push_back(std::move(p));
        } catch (const ValidationError& e) {
            set.skipped.push_back({i, e.what()});
        } catch (const json::exception& e) {
            set.skipped.push_back({i, std::string("malformed geometry: ") + e.what()});
        }
    }
    return set;
}

PolygonSet read_label_polygons(const std::filesystem::path& path, const ClassScheme& scheme) {
    json j;
    try {
        j = json::parse(read_file_bytes(path));
    } catch (const json::exception& e) {
        throw ValidationError("malformed GeoJSON in '" + path.string() + "': " + e.what());
    }
    return parse_label_polygons(j, scheme);
}

json to_geojson(const std::vector<LabelPolygon>& polys, const ClassScheme& scheme) {
    json features = json::array();
    for (const LabelPolygon& p : polys) {
        json rings = json::array();
        rings.push_back(ring_json(p.exterior));
        for (const Ring& h : p.holes) rings.push_back(ring_json(h));
        features.push_back({{"type", "Feature"},
                            {"properties",
                             {{"class", scheme.name_of(p.class_index)},
                              {"provenance", std::string(to_string(p.provenance))}}},
                            {"geometry", {{"type", "Polygon"}, {"coordinates", rings}}}});
    }
    return {{"type", "FeatureCollection"}, {"features", features}};
}

void write_label_polygons(const std::filesystem::path& path, const std::vector<LabelPolygon>& polys,
                          const ClassScheme& scheme) {
    write_file_bytes(path, to_geojson(polys, scheme).dump(1) + "\n");
}

}  // namespace lulc
