#include <doctest.h>

#include "lulc/error.hpp"
#include "lulc/labels.hpp"
#include "oracles.hpp"

using namespace lulc;

namespace {

const ClassScheme kTeacher = teacher_scheme();
const ClassIndex kBuilding = kTeacher.index_of("Building");
const ClassIndex kRoad = kTeacher.index_of("Road");
const ClassIndex kCrop = kTeacher.index_of("Crop");
const ClassIndex kNeg = *kTeacher.negative_index();

std::size_t count(const MaskRaster& m, ClassIndex c) {
    std::size_t n = 0;
    for (auto v : m.values()) n += v == c;
    return n;
}

/// Brute-force Chebyshev dilation of a cell set by k cells.
std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& cells, std::size_t w, std::size_t h, int k) {
    std::vector<std::uint8_t> out(cells.size(), 0);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            if (!cells[r * w + c]) continue;
            for (int dr = -k; dr <= k; ++dr)
                for (int dc = -k; dc <= k; ++dc) {
                    const long rr = long(r) + dr, cc = long(c) + dc;
                    if (rr >= 0 && cc >= 0 && rr < long(h) && cc < long(w)) out[rr * w + cc] = 1;
                }
        }
    return out;
}

}  // namespace

TEST_CASE("10 m square with a 3 m Chebyshev buffer gives a 156 m2 ring") {
    const LabelPolygon sq = rectangle(0, 0, 10, 10, kBuilding);
    const Grid lattice{-5.0, 15.0, 0.1, 200, 200};
    const auto rings = buffer_ring(sq, 3.0, kNeg, lattice);
    REQUIRE_FALSE(rings.empty());
    double area = 0;
    for (const auto& r : rings) {
        CHECK(r.class_index == kNeg);
        area += r.area();
    }
    CHECK(area == doctest::Approx(156.0).epsilon(1e-9));

    // Oracle: rasterize the rings at 0.1 m and count cells.
    const MaskRaster burned = oracle::burn(rings, lattice, kNeg);
    CHECK(count(burned, kNeg) == 15600);

    // Oracle: brute-force dilation of the square's cells.
    std::vector<std::uint8_t> cells(lattice.size(), 0);
    for (std::size_t r = 0; r < lattice.height; ++r)
        for (std::size_t c = 0; c < lattice.width; ++c)
            cells[r * lattice.width + c] =
                sq.contains(lattice.center_x(std::int64_t(c)), lattice.center_y(std::int64_t(r)));
    const auto dil = dilate(cells, lattice.width, lattice.height, 30);
    for (std::size_t i = 0; i < cells.size(); ++i) CHECK((dil[i] && !cells[i]) == (burned.values()[i] == kNeg));
}

TEST_CASE("buffer rings of disjoint squares stay disjoint") {
    const Grid lattice{0.0, 100.0, 0.5, 200, 200};
    const LabelPolygon a = rectangle(10, 10, 20, 20, kBuilding);
    const LabelPolygon b = rectangle(40, 40, 50, 50, kBuilding);
    const auto ra = buffer_ring(a, 3.0, kNeg, lattice);
    const auto rb = buffer_ring(b, 3.0, kNeg, lattice);
    CHECK(ra.size() == 1);
    CHECK(rb.size() == 1);
    const MaskRaster ma = oracle::burn(ra, lattice, kNeg), mb = oracle::burn(rb, lattice, kNeg);
    for (std::size_t i = 0; i < ma.size(); ++i) CHECK_FALSE((ma.values()[i] && mb.values()[i]));
    // The ring's hole is the source polygon.
    CHECK(ra[0].holes.size() == 1);
}

TEST_CASE("buffer_ring rejects degenerate input") {
    const Grid lattice{0.0, 10.0, 0.1, 100, 100};
    LabelPolygon flat;
    flat.exterior = {{0, 0}, {5, 0}, {10, 0}, {0, 0}};
    flat.class_index = kBuilding;
    CHECK_THROWS_AS(buffer_ring(flat, 3.0, kNeg, lattice), ValidationError);
    CHECK_THROWS_AS(buffer_ring(rectangle(0, 0, 1, 1, kBuilding), 0.0, kNeg, lattice), ValidationError);
}

TEST_CASE("make_negatives uses 3 m for Building and 5 m for Road") {
    const auto d = default_negative_distances(kTeacher);
    CHECK(d.at(kBuilding) == 3.0);
    CHECK(d.at(kRoad) == 5.0);
    CHECK(d.count(kCrop) == 0);

    const Grid lattice{-20.0, 40.0, 0.5, 120, 120};
    CHECK(make_negatives({}, d, kNeg, lattice).polygons.empty());
    CHECK(make_negatives({rectangle(0, 0, 10, 10, kCrop)}, d, kNeg, lattice).polygons.empty());

    const auto b = make_negatives({rectangle(0, 0, 10, 10, kBuilding)}, d, kNeg, lattice);
    REQUIRE(b.polygons.size() == 1);
    CHECK(b.polygons[0].area() == doctest::Approx(16.0 * 16.0 - 100.0));
    const auto r = make_negatives({rectangle(0, 0, 10, 10, kRoad)}, d, kNeg, lattice);
    REQUIRE(r.polygons.size() == 1);
    CHECK(r.polygons[0].class_index == kNeg);
    CHECK(r.polygons[0].area() == doctest::Approx(20.0 * 20.0 - 100.0));

    LabelPolygon bad;
    bad.exterior = {{0, 0}, {1, 1}, {2, 2}, {0, 0}};
    bad.class_index = kBuilding;
    const auto mixed = make_negatives({bad, rectangle(0, 0, 10, 10, kBuilding)}, d, kNeg, lattice);
    CHECK(mixed.polygons.size() == 1);
    REQUIRE(mixed.skipped.size() == 1);
    CHECK(mixed.skipped[0].index == 0);
}

TEST_CASE("rasterize examples") {
    const Grid g{0.0, 4.0, 1.0, 4, 4};
    const MaskRaster m = rasterize({rectangle(0, 2, 2, 4, 3)}, g, kTeacher);
    const std::vector<ClassIndex> expect{3, 3, 0, 0, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK(m.values() == expect);
    CHECK(rasterize({}, g, kTeacher).max_value() == 0);
    CHECK_THROWS_AS(rasterize({rectangle(0, 0, 1, 1, 200)}, g, kTeacher), ValidationError);
}

TEST_CASE("Building overrides an overlapping Negative ring regardless of input order") {
    const Grid g{0.0, 40.0, 0.5, 80, 80};
    const LabelPolygon road = rectangle(0, 18, 40, 22, kRoad);
    const auto rings = buffer_ring(road, 5.0, kNeg, g);
    const LabelPolygon building = rectangle(10, 23, 16, 30, kBuilding);
    std::vector<LabelPolygon> polys{building, road};
    polys.insert(polys.end(), rings.begin(), rings.end());
    const MaskRaster m = rasterize(polys, g, kTeacher);
    CHECK(m == oracle::burn(polys, g, kNeg));
    for (std::size_t r = 0; r < g.height; ++r)
        for (std::size_t c = 0; c < g.width; ++c)
            if (building.contains(g.center_x(std::int64_t(c)), g.center_y(std::int64_t(r))))
                CHECK(m.at(c, r) == kBuilding);
}

TEST_CASE("rasterize matches point-in-polygon on random polygons with holes") {
    Rng rng(99);
    const Grid g{3.0, 35.0, 1.0, 32, 32};
    for (int t = 0; t < 40; ++t) {
        LabelPolygon p;
        p.exterior = oracle::random_star(rng, 19, 19, 4, 15, 3 + rng.uniform_index(12));
        p.class_index = static_cast<ClassIndex>(1 + rng.uniform_index(9));
        if (t % 3 == 0) {
            lulc::Ring hole = oracle::random_star(rng, 19, 19, 1, 3, 5);
            p.holes.push_back(hole);
        }
        const MaskRaster m = rasterize({p}, g, kTeacher);
        CHECK(m == oracle::burn({p}, g, std::nullopt));
    }
}

TEST_CASE("polygonize returns polygons that rasterize back to the cells") {
    Rng rng(4);
    const Grid g{0.0, 20.0, 1.0, 20, 20};
    for (int t = 0; t < 10; ++t) {
        std::vector<std::uint8_t> cells(g.size());
        for (auto& c : cells) c = rng.bernoulli(0.45);
        const auto polys = polygonize(cells, g, kCrop);
        const MaskRaster m = rasterize(polys, g, kTeacher);
        for (std::size_t i = 0; i < cells.size(); ++i) CHECK((m.values()[i] == kCrop) == (cells[i] == 1));
    }
}

TEST_CASE("sparsity") {
    const Grid g{0, 4, 1, 4, 4};
    CHECK(sparsity(MaskRaster(g)) == 0.0);
    CHECK(sparsity(MaskRaster(g, 2)) == 1.0);
    MaskRaster m(g);
    for (int i = 0; i < 9; ++i) m.values()[i] = 1;
    CHECK(sparsity(m) == 0.5625);
}

TEST_CASE("validate_polygon") {
    CHECK_NOTHROW(validate_polygon(rectangle(0, 0, 1, 1, 1)));
    CHECK_THROWS_AS(validate_polygon(rectangle(0, 0, 1, 1, 0)), ValidationError);
    LabelPolygon bowtie;
    bowtie.exterior = {{0, 0}, {2, 2}, {2, 0}, {0, 2}, {0, 0}};
    bowtie.class_index = 1;
    CHECK_THROWS_AS(validate_polygon(bowtie), ValidationError);
    LabelPolygon open;
    open.exterior = {{0, 0}, {2, 0}, {2, 2}};
    open.class_index = 1;
    CHECK_THROWS_AS(validate_polygon(open), ValidationError);
}
