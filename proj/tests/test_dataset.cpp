#include <doctest.h>

#include <set>

#include "lulc/dataset.hpp"
#include "lulc/error.hpp"
#include "oracles.hpp"

using namespace lulc;

TEST_CASE("vertical_split examples") {
    auto split = [](std::size_t w, double f) { return vertical_split(Grid{0, 1, 1, w, 3}, f); };
    SplitExtents s = split(10, 0.7);
    CHECK(s.train == Extent{0, 7, 0, 3});
    CHECK(s.test == Extent{7, 10, 0, 3});
    s = split(4, 0.5);
    CHECK(s.train.col_end == 2);
    CHECK(s.test.col_begin == 2);
    s = split(1000, 0.999);
    CHECK(s.train.col_end == 999);
    CHECK(s.test == Extent{999, 1000, 0, 3});
    CHECK(split(10, 0.01).train.col_end == 1);  // clamped so the training side is not empty
    CHECK_THROWS_AS(split(1, 0.5), ValidationError);
    CHECK_THROWS_AS(split(10, 0.0), ValidationError);
    CHECK_THROWS_AS(split(10, 1.0), ValidationError);
}

TEST_CASE("extent files round-trip") {
    const auto p = std::filesystem::temp_directory_path() / "lulc_extent_test.json";
    const Extent e{3, 9, 1, 4};
    write_extent(p, e);
    CHECK(read_extent(p) == e);
    std::filesystem::remove(p);
}

TEST_CASE("sample_patches: every patch holds the single labeled pixel") {
    const Grid g{0, 20, 1, 20, 20};
    BandRaster img(g, 2);
    MaskRaster mask(g);
    mask.at(13, 6) = 2;
    const auto patches = sample_patches(img, mask, Extent::full(g), 5, 25, 123);
    REQUIRE(patches.size() == 25);
    for (const auto& p : patches) {
        CHECK(p.image.width() == 5);
        CHECK(p.mask.height() == 5);
        // Valid anchors containing (13, 6): col in [9, 13], row in [2, 6].
        CHECK(p.anchor.col >= 9);
        CHECK(p.anchor.col <= 13);
        CHECK(p.anchor.row >= 2);
        CHECK(p.anchor.row <= 6);
        CHECK(p.mask.at(13 - p.anchor.col, 6 - p.anchor.row) == 2);
    }
}

TEST_CASE("sample_patches is deterministic and stays inside the extent") {
    const Grid g{0, 30, 1, 30, 30};
    Rng rng(1);
    BandRaster img(g, 1);
    for (auto& v : img.values()) v = static_cast<float>(rng.uniform01());
    const MaskRaster mask(g, oracle::random_mask(rng, 30, 30, 3, 1.0, 0.9).values());
    const Extent ext{5, 20, 2, 28};
    const auto a = sample_patches(img, mask, ext, 8, 10, 77);
    const auto b = sample_patches(img, mask, ext, 8, 10, 77);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].anchor == b[i].anchor);
        CHECK(a[i].image == b[i].image);
        CHECK(a[i].anchor.col >= 5);
        CHECK(a[i].anchor.col + 8 <= 20);
        CHECK(a[i].anchor.row >= 2);
        CHECK(a[i].anchor.row + 8 <= 28);
        CHECK(a[i].mask.max_value() > 0);
        CHECK(a[i].image.at(0, 0, 0) == img.at(0, a[i].anchor.col, a[i].anchor.row));
    }
    CHECK_THROWS_AS(sample_patches(img, mask, ext, 16, 1, 0), ValidationError);
    CHECK_THROWS_AS(sample_patches(img, MaskRaster(g), ext, 4, 1, 0), ValidationError);
}

TEST_CASE("fully labeled mask gives fully labeled patches") {
    const Grid g{0, 8, 1, 8, 8};
    const auto p = sample_patches(BandRaster(g, 1), MaskRaster(g, 1), Extent::full(g), 4, 1, 5);
    CHECK(p.size() == 1);
    for (auto v : p[0].mask.values()) CHECK(v == 1);
}

namespace {

Patch small_patch(std::vector<ClassIndex> labels) {
    const auto n = static_cast<std::size_t>(std::lround(std::sqrt(double(labels.size()))));
    const Grid g{0, double(n), 1, n, n};
    Patch p{BandRaster(g, 1), MaskRaster(g, labels), {}};
    for (std::size_t i = 0; i < labels.size(); ++i) p.image.values()[i] = float(labels[i]) * 10.0f;
    return p;
}

}  // namespace

TEST_CASE("augmentation conventions") {
    const Patch p = small_patch({1, 2, 3, 4});
    CHECK(apply_augmentation(p, {}).mask == p.mask);
    const Patch r90 = apply_augmentation(p, {true, false, false, false});
    CHECK(r90.mask.values() == std::vector<ClassIndex>{2, 4, 1, 3});
    CHECK(r90.image.values() == std::vector<float>{20, 40, 10, 30});
    const Patch h = apply_augmentation(p, {false, false, true, false});
    CHECK(h.mask.values() == std::vector<ClassIndex>{2, 1, 4, 3});
    CHECK(apply_augmentation(h, {false, false, true, false}).mask == p.mask);
    const Patch v = apply_augmentation(p, {false, false, false, true});
    CHECK(v.mask.values() == std::vector<ClassIndex>{3, 4, 1, 2});
    // Four quarter turns are the identity.
    Patch q = p;
    for (int i = 0; i < 4; ++i) q = rotate_patch(q, 90.0);
    CHECK(q.mask == p.mask);
    CHECK(rotate_patch(p, 90.0).mask == r90.mask);
}

TEST_CASE("225 degree rotation keeps shape and classes, filling corners with 0") {
    Rng rng(12);
    const Grid g{0, 9, 1, 9, 9};
    Patch p{BandRaster(g, 1), MaskRaster(g, oracle::random_mask(rng, 9, 9, 3, 1.0, 0.0).values()), {}};
    const Patch r = apply_augmentation(p, {false, true, false, false});
    CHECK(r.mask.width() == 9);
    CHECK(r.mask.height() == 9);
    CHECK(r.mask.at(0, 0) == 0);  // a corner maps outside the source
    CHECK(r.mask.at(4, 4) == p.mask.at(4, 4));  // the centre is fixed
    std::set<ClassIndex> in(p.mask.values().begin(), p.mask.values().end());
    in.insert(0);
    for (auto v : r.mask.values()) CHECK(in.count(v));
}

TEST_CASE("augment draws coins in a fixed order and rejects non-square patches") {
    Rng a(3), b(3);
    const AugmentDraw d = draw_augmentation(a);
    const Patch p = small_patch({1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(augment(p, b).mask == apply_augmentation(p, d).mask);
    const Grid g{0, 2, 1, 3, 2};
    CHECK_THROWS_AS(apply_augmentation(Patch{BandRaster(g, 1), MaskRaster(g), {}}, {}), ValidationError);
    // Over many draws each transform fires about half the time.
    Rng r(9);
    int hits[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4000; ++i) {
        const AugmentDraw x = draw_augmentation(r);
        hits[0] += x.rot90;
        hits[1] += x.rot225;
        hits[2] += x.hflip;
        hits[3] += x.vflip;
    }
    for (int h : hits) CHECK(std::abs(h - 2000) < 200);
}

TEST_CASE("class weights") {
    const ClassScheme s("ab", {"A", "B", "C"});
    const Grid g{0, 1, 1, 100, 1};
    MaskRaster m(g);
    for (std::size_t i = 0; i < 90; ++i) m.values()[i] = 1;
    for (std::size_t i = 90; i < 100; ++i) m.values()[i] = 2;
    const ClassWeights w = class_weights(m, s);
    CHECK(w[0] == 0.0);
    CHECK(w[1] == doctest::Approx(100.0 / 180.0));
    CHECK(w[2] == doctest::Approx(5.0));
    CHECK(w[3] == 1.0);  // absent
    CHECK(w[1] * 90 + w[2] * 10 == doctest::Approx(100.0));

    MaskRaster eq(g);
    for (std::size_t i = 0; i < 100; ++i) eq.values()[i] = static_cast<ClassIndex>(1 + i % 2);
    CHECK(class_weights(eq, s)[1] == 1.0);
    CHECK(class_weights(eq, s)[2] == 1.0);
    CHECK(class_weights(MaskRaster(g, 3), s)[3] == 1.0);
    CHECK(class_weights(m, s, WeightStrategy::Uniform)[2] == 1.0);
    CHECK_THROWS_AS(class_weights(MaskRaster(g), s), ValidationError);
    CHECK(weight_strategy_from_string(to_string(WeightStrategy::Uniform)) == WeightStrategy::Uniform);
}
