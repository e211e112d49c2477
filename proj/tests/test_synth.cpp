#include <doctest.h>

#include <limits>
#include <set>

#include "lulc/error.hpp"
#include "lulc/labels.hpp"
#include "lulc/synth.hpp"
#include "oracles.hpp"

using namespace lulc;

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("class means sit on a simplex lattice with the stated spacing") {
    const ClassMeans m = class_means(6, 4);
    REQUIRE(m.mean.size() == 6);
    CHECK(m.spacing == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(m.mean[0] == std::vector<double>{1, 0, 0, 0});
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 6; ++i) {
        double s = 0;
        for (double v : m.mean[i]) {
            CHECK(v >= 0.0);
            s += v;
        }
        CHECK(s == doctest::Approx(1.0));
        for (std::size_t j = i + 1; j < 6; ++j) closest = std::min(closest, dist(m.mean[i], m.mean[j]));
    }
    CHECK(closest == doctest::Approx(m.spacing));

    const ClassMeans one = class_means(3, 1);
    CHECK(one.mean[2][0] == doctest::Approx(1.0));
    CHECK(one.spacing == doctest::Approx(0.5));
}

TEST_CASE("gen_scene is deterministic and consistent") {
    const Grid g{0, 1280, 5, 192, 256};
    const ClassScheme s = synthetic_scheme();
    const Scene a = gen_scene(4, g, 3, s, 0.8);
    const Scene b = gen_scene(4, g, 3, s, 0.8);
    CHECK(a.image == b.image);
    CHECK(a.truth == b.truth);
    CHECK(a.polygons.size() == b.polygons.size());
    CHECK(a.image.grid() == g);
    CHECK(gen_scene(5, g, 3, s, 0.8).truth != a.truth);

    std::set<ClassIndex> present(a.truth.values().begin(), a.truth.values().end());
    CHECK(!present.count(0));
    CHECK(!present.count(*s.negative_index()));
    CHECK(present.count(s.index_of("Road")));
    CHECK(present.count(s.index_of("Building")));

    // Sparse polygons agree with the truth wherever they burn.
    const MaskRaster labels = rasterize(a.polygons, g, s);
    std::size_t labeled = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels.values()[i]) {
            ++labeled;
            CHECK(labels.values()[i] == a.truth.values()[i]);
        }
    CHECK(sparsity(labels) >= 0.04);
    CHECK(sparsity(labels) <= 0.2);
    for (const auto& p : a.polygons) CHECK(p.provenance == Provenance::Manual);
}

TEST_CASE("full separability is solved by the nearest-mean rule") {
    const Grid g{0, 640, 5, 128, 128};
    const ClassScheme s = synthetic_scheme();
    const Scene sc = gen_scene(9, g, 4, s, 1.0);
    const ClassMeans m = class_means(s.class_count() - 1, 4);
    std::size_t ok = 0;
    for (std::size_t r = 0; r < g.height; ++r)
        for (std::size_t c = 0; c < g.width; ++c) {
            std::vector<double> x(4);
            for (std::size_t b = 0; b < 4; ++b) x[b] = sc.image.at(b, c, r);
            std::size_t best = 0;
            for (std::size_t k = 1; k < m.mean.size(); ++k)
                if (dist(x, m.mean[k]) < dist(x, m.mean[best])) best = k;
            ok += best + 1 == sc.truth.at(c, r);
        }
    CHECK(double(ok) / double(g.size()) >= 0.99);
}

TEST_CASE("gen_pair relates the two resolutions") {
    const Grid hi{100, 900, 2.5, 130, 99};
    const ScenePair p = gen_pair(3, hi, 4, 2, synthetic_scheme(), 0.9);
    CHECK(p.hi.truth.width() == 128);
    CHECK(p.hi.truth.height() == 96);
    CHECK(p.lo_truth.grid() == Grid{100, 900, 10, 32, 24});
    CHECK(p.lo_image.grid() == p.lo_truth.grid());
    CHECK(p.lo_truth == downsample_majority(p.hi.truth, 4, 0.5));
    CHECK(p.lo_image.at(1, 3, 5) == doctest::Approx(downsample_mean(p.hi.image, 4).at(1, 3, 5)));
}

TEST_CASE("gen_scene rejects bad inputs") {
    const ClassScheme s = synthetic_scheme();
    CHECK_THROWS_AS(gen_scene(1, Grid{0, 0, 1, 0, 10}, 3, s, 0.5), ValidationError);
    CHECK_THROWS_AS(gen_scene(1, Grid{0, 64, 1, 64, 64}, 0, s, 0.5), ValidationError);
    CHECK_THROWS_AS(gen_scene(1, Grid{0, 64, 1, 64, 64}, 3, s, 0.0), ValidationError);
    CHECK_THROWS_AS(gen_scene(1, Grid{0, 64, 1, 64, 64}, 3, s, 1.5), ValidationError);
    CHECK_THROWS_AS(gen_scene(1, Grid{0, 64, 1, 64, 64}, 3, ClassScheme("one", {"A"}), 0.5), ValidationError);
}
