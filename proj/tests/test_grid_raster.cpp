#include <doctest.h>

#include "lulc/error.hpp"
#include "lulc/grid.hpp"
#include "lulc/raster.hpp"
#include "oracles.hpp"

using namespace lulc;

TEST_CASE("world_to_pixel on a 10x10 grid at 10 m") {
    const Grid g{0.0, 100.0, 10.0, 10, 10};
    auto p = world_to_pixel(g, 0.0, 100.0);
    REQUIRE(p);
    CHECK(*p == PixelIndex{0, 0});
    p = world_to_pixel(g, 95.0, 5.0);
    REQUIRE(p);
    CHECK(*p == PixelIndex{9, 9});
    CHECK_FALSE(world_to_pixel(g, -1.0, 50.0));
    CHECK_FALSE(world_to_pixel(g, 50.0, 0.0));  // south edge is open
    CHECK_FALSE(world_to_pixel(g, 100.0, 50.0));
}

TEST_CASE("pixel centre maps back into its own pixel") {
    const Grid g{-1234.5, 987.25, 0.331, 300, 200};
    for (std::int64_t r = 0; r < 200; r += 7)
        for (std::int64_t c = 0; c < 300; c += 11) {
            const auto p = world_to_pixel(g, g.center_x(c), g.center_y(r));
            REQUIRE(p);
            CHECK(*p == PixelIndex{c, r});
        }
}

TEST_CASE("grid validation and area") {
    CHECK_THROWS_AS((Grid{0, 0, 0.0, 1, 1}.validate()), ValidationError);
    CHECK_THROWS_AS((Grid{0, 0, 1.0, 0, 1}.validate()), ValidationError);
    CHECK(Grid{0, 0, 10.0, 100, 100}.area() == 1e6);
}

TEST_CASE("resample_nearest") {
    const Grid g2{0.0, 20.0, 10.0, 2, 2};
    const MaskRaster src(g2, {1, 2, 3, 4});

    SUBCASE("identity on the same grid") { CHECK(resample_nearest(src, g2) == src); }

    SUBCASE("upsampling replicates") {
        const MaskRaster up = resample_nearest(src, Grid{0.0, 20.0, 5.0, 4, 4});
        const std::vector<ClassIndex> expect{1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4, 3, 3, 4, 4};
        CHECK(up.values() == expect);
        CHECK(resample_nearest(up, up.grid()) == up);
    }

    SUBCASE("disjoint target is all zero") {
        const MaskRaster out = resample_nearest(src, Grid{500.0, 20.0, 10.0, 4, 4});
        CHECK(out.max_value() == 0);
    }

    SUBCASE("rejects a non-positive resolution") {
        CHECK_THROWS_AS(resample_nearest(src, Grid{0.0, 20.0, -1.0, 4, 4}), ValidationError);
    }
}

TEST_CASE("downsample_majority examples") {
    const Grid g{0.0, 2.0, 1.0, 2, 2};
    CHECK(downsample_majority(MaskRaster(g, {3, 3, 3, 0}), 2, 0.5).values() == std::vector<ClassIndex>{3});
    CHECK(downsample_majority(MaskRaster(g, {1, 2, 2, 1}), 2, 0.5).values() == std::vector<ClassIndex>{1});
    CHECK(downsample_majority(MaskRaster(g, {1, 0, 0, 0}), 2, 0.5).values() == std::vector<ClassIndex>{0});
    CHECK(downsample_majority(MaskRaster(g, {1, 0, 0, 0}), 2, 0.0).values() == std::vector<ClassIndex>{1});
    CHECK(downsample_majority(MaskRaster(g, {0, 0, 0, 0}), 2, 0.0).values() == std::vector<ClassIndex>{0});
    CHECK_THROWS_AS(downsample_majority(MaskRaster(g), 0), ValidationError);

    Rng rng(5);
    const MaskRaster m = oracle::random_mask(rng, 9, 7, 4);
    CHECK(downsample_majority(m, 1, 0.0) == m);
}

TEST_CASE("downsample_majority drops trailing partial blocks and keeps the world frame") {
    const MaskRaster src(Grid{100.0, 50.0, 2.5, 10, 7}, 4);
    const MaskRaster out = downsample_majority(src, 4, 1.0);
    CHECK(out.width() == 2);
    CHECK(out.height() == 1);
    CHECK(out.grid().origin_x == 100.0);
    CHECK(out.grid().origin_y == 50.0);
    CHECK(out.grid().res == 10.0);
    CHECK(out.values() == std::vector<ClassIndex>{4, 4});
}

TEST_CASE("downsample_majority agrees with block counting on random masks") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        const std::size_t f = 2 + rng.uniform_index(3);
        const MaskRaster m = oracle::random_mask(rng, f * (1 + rng.uniform_index(5)), f * (1 + rng.uniform_index(5)), 5,
                                                 1.0, rng.uniform01());
        const double cov = rng.uniform01();
        const MaskRaster out = downsample_majority(m, f, cov);
        for (std::size_t r = 0; r < out.height(); ++r)
            for (std::size_t c = 0; c < out.width(); ++c) CHECK(out.at(c, r) == oracle::block_majority(m, c, r, f, cov));
    }
}

TEST_CASE("downsample_mean averages blocks") {
    BandRaster img(Grid{0, 2, 1, 2, 2}, 2, std::vector<float>{1, 2, 3, 4, 10, 10, 10, 14});
    const BandRaster out = downsample_mean(img, 2);
    CHECK(out.bands() == 2);
    CHECK(out.at(0, 0, 0) == doctest::Approx(2.5));
    CHECK(out.at(1, 0, 0) == doctest::Approx(11.0));
}

TEST_CASE("ProbRaster argmax breaks ties toward the lower class and honours min_confidence") {
    ProbRaster p(Grid{0, 1, 1, 3, 1}, 3);
    const float v[3][3] = {{0.2f, 0.5f, 0.3f}, {0.4f, 0.4f, 0.2f}, {0.1f, 0.1f, 0.8f}};
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < 3; ++k) p.at(k, c, 0) = v[c][k];
    CHECK(p.argmax().values() == std::vector<ClassIndex>{2, 1, 3});
    CHECK(p.argmax(0.6).values() == std::vector<ClassIndex>{0, 0, 3});
}

TEST_CASE("extents and windows") {
    const Grid g{0, 10, 1, 10, 10};
    CHECK_THROWS_AS(validate_extent(g, Extent{0, 11, 0, 1}), ValidationError);
    CHECK_THROWS_AS(validate_extent(g, Extent{3, 3, 0, 1}), ValidationError);
    MaskRaster m(g);
    m.at(4, 5) = 7;
    const MaskRaster w = m.window(Extent{3, 6, 4, 7});
    CHECK(w.width() == 3);
    CHECK(w.at(1, 1) == 7);
    CHECK(w.grid().origin_x == 3.0);
    CHECK(w.grid().origin_y == 6.0);
}
