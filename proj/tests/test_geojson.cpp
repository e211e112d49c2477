#include <doctest.h>

#include <filesystem>

#include "lulc/error.hpp"
#include "lulc/geojson.hpp"

using namespace lulc;
using nlohmann::json;

namespace {

json feature(const std::string& cls, json geometry, const std::string& prov = "") {
    json props = {{"class", cls}};
    if (!prov.empty()) props["provenance"] = prov;
    return {{"type", "Feature"}, {"properties", props}, {"geometry", geometry}};
}

json square(double x0, double y0, double s) {
    return {{"type", "Polygon"},
            {"coordinates", json::array({json::array({{x0, y0}, {x0 + s, y0}, {x0 + s, y0 + s}, {x0, y0 + s}, {x0, y0}})})}};
}

}  // namespace

TEST_CASE("parses polygons, multipolygons, holes and provenance") {
    const ClassScheme s = teacher_scheme();
    json holed = square(0, 0, 10);
    holed["coordinates"].push_back(json::array({{2, 2}, {4, 2}, {4, 4}, {2, 4}, {2, 2}}));
    json multi = {{"type", "MultiPolygon"},
                  {"coordinates", json::array({square(20, 0, 2)["coordinates"], square(30, 0, 2)["coordinates"]})}};
    const json fc = {{"type", "FeatureCollection"},
                     {"features", json::array({feature("building", holed, "osm"), feature("CROP", multi)})}};
    const PolygonSet set = parse_label_polygons(fc, s);
    REQUIRE(set.polygons.size() == 3);
    CHECK(set.skipped.empty());
    CHECK(set.polygons[0].class_index == s.index_of("Building"));
    CHECK(set.polygons[0].provenance == Provenance::Osm);
    CHECK(set.polygons[0].holes.size() == 1);
    CHECK(set.polygons[0].area() == doctest::Approx(96.0));
    CHECK(set.polygons[1].class_index == s.index_of("Crop"));
    CHECK(set.polygons[2].provenance == Provenance::Manual);
}

TEST_CASE("invalid geometries are skipped, unknown classes are errors") {
    const ClassScheme s = teacher_scheme();
    json bowtie = {{"type", "Polygon"}, {"coordinates", json::array({json::array({{0, 0}, {2, 2}, {2, 0}, {0, 2}, {0, 0}})})}};
    json line = {{"type", "LineString"}, {"coordinates", json::array({{0, 0}, {1, 1}})}};
    const json fc = {{"type", "FeatureCollection"},
                     {"features", json::array({feature("Trees", bowtie), feature("Trees", square(0, 0, 1)),
                                               feature("Trees", line)})}};
    const PolygonSet set = parse_label_polygons(fc, s);
    CHECK(set.polygons.size() == 1);
    REQUIRE(set.skipped.size() == 2);
    CHECK(set.skipped[0].index == 0);
    CHECK(set.skipped[1].index == 2);

    const json unknown = {{"type", "FeatureCollection"}, {"features", json::array({feature("Lava", square(0, 0, 1))})}};
    CHECK_THROWS_AS(parse_label_polygons(unknown, s), ValidationError);
    CHECK_THROWS_AS(parse_label_polygons(json{{"type", "Feature"}}, s), ValidationError);
    CHECK_THROWS_AS(parse_label_polygons(json{{"type", "FeatureCollection"}}, s), ValidationError);
}

TEST_CASE("write then read round-trips") {
    const ClassScheme s = synthetic_scheme();
    LabelPolygon a = rectangle(1, 2, 3, 4, s.index_of("Water"), Provenance::Pseudo);
    a.holes.push_back({{1.5, 2.5}, {2, 2.5}, {2, 3}, {1.5, 2.5}});
    const std::vector<LabelPolygon> polys{a, rectangle(10, 10, 20, 11, s.index_of("Road"))};
    const auto path = std::filesystem::temp_directory_path() / "lulc_geojson_test.geojson";
    write_label_polygons(path, polys, s);
    const PolygonSet back = read_label_polygons(path, s);
    REQUIRE(back.polygons.size() == 2);
    CHECK(back.polygons[0].exterior == polys[0].exterior);
    CHECK(back.polygons[0].holes == polys[0].holes);
    CHECK(back.polygons[0].provenance == Provenance::Pseudo);
    CHECK(back.polygons[1].class_index == s.index_of("Road"));
    std::filesystem::remove(path);
}
