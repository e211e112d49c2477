#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lulc/distill.hpp"
#include "lulc/error.hpp"
#include "oracles.hpp"

using namespace lulc;

TEST_CASE("overlap report") {
    const OverlapReport r = overlap(Grid{0, 100, 1, 100, 100}, Grid{50, 100, 10, 10, 10});
    CHECK(r.teacher_area == 10000.0);
    CHECK(r.student_area == 10000.0);
    CHECK(r.overlap_area == 5000.0);
    CHECK(r.student_fraction == 0.5);
    CHECK(!r.describe().empty());
    CHECK(overlap(Grid{0, 10, 1, 10, 10}, Grid{20, 10, 1, 5, 5}).overlap_area == 0.0);
}

TEST_CASE("teacher to student on aligned grids is block majority") {
    Rng rng(3);
    const ClassScheme s = synthetic_scheme();
    const MaskRaster teacher(Grid{0, 40, 1, 40, 40},
                             oracle::random_mask(rng, 40, 40, int(s.class_count()), 1.0, 0.3).values());
    const Grid student{0, 40, 4, 10, 10};
    const MaskRaster out = teacher_to_student(teacher, student, 4, 0.5, RemapTable::identity(s));
    CHECK(out.grid() == student);
    CHECK(out == downsample_majority(teacher, 4, 0.5));
    for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t c = 0; c < 10; ++c) CHECK(out.at(c, r) == oracle::block_majority(teacher, c, r, 4, 0.5));
}

TEST_CASE("teacher to student handles partial overlap and finer teacher pixels") {
    // Teacher at 0.5 m covering only the left half of a 10 m student grid.
    const Grid tg{0, 20, 0.5, 20, 40};
    const MaskRaster teacher(tg, 2);
    const Grid student{0, 20, 10, 2, 2};
    OverlapReport rep;
    const MaskRaster out = teacher_to_student(teacher, student, 10, 0.5, RemapTable::identity(synthetic_scheme()), &rep);
    CHECK(out.values() == std::vector<ClassIndex>{2, 0, 2, 0});
    CHECK(rep.student_fraction == doctest::Approx(0.5));
}

TEST_CASE("teacher to student applies the class remap and rejects bad inputs") {
    const ClassScheme t = teacher_scheme();
    const Grid tg{0, 10, 1, 10, 10};
    const MaskRaster teacher(tg, t.index_of("Building"));
    const RemapTable table = teacher_to_student();
    const MaskRaster out = teacher_to_student(teacher, Grid{0, 10, 5, 2, 2}, 5, 0.5, table);
    for (auto v : out.values()) CHECK(v == table(t.index_of("Building")));

    try {
        teacher_to_student(teacher, Grid{100, 10, 5, 2, 2}, 5, 0.5, table);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("overlap") != std::string::npos);
    }
    CHECK_THROWS_AS(teacher_to_student(teacher, Grid{0, 10, 5, 2, 2}, 0, 0.5, table), ValidationError);
    const MaskRaster bad(tg, 200);
    CHECK_THROWS_AS(teacher_to_student(bad, Grid{0, 10, 5, 2, 2}, 5, 0.5, table), ValidationError);
}

TEST_CASE("label fusion") {
    const Grid g{0, 1, 1, 4, 1};
    const MaskRaster manual(g, std::vector<ClassIndex>{1, 0, 0, 0});
    const MaskRaster osm(g, std::vector<ClassIndex>{2, 2, 0, 0});
    const MaskRaster pseudo(g, std::vector<ClassIndex>{3, 3, 3, 0});
    CHECK(default_priority(Provenance::Manual) == 3);
    CHECK(default_priority(Provenance::Osm) == 2);
    CHECK(default_priority(Provenance::Pseudo) == 1);
    const MaskRaster f = fuse_labels({{pseudo, 1}, {manual, 3}, {osm, 2}});
    CHECK(f.values() == std::vector<ClassIndex>{1, 2, 3, 0});
    // Equal priorities keep list order.
    CHECK(fuse_labels({{osm, 1}, {pseudo, 1}}).values() == std::vector<ClassIndex>{2, 2, 3, 0});
    CHECK(fuse_labels({{pseudo, 1}, {osm, 1}}).values() == std::vector<ClassIndex>{3, 3, 3, 0});
    CHECK_THROWS_AS(fuse_labels({}), ValidationError);
    CHECK_THROWS_AS(fuse_labels({{manual, 1}, {MaskRaster(Grid{0, 1, 1, 3, 1}), 1}}), ValidationError);
}

TEST_CASE("fusion manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "lulc_manifest_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream os(dir / "m.json");
        os << R"({"sources": [{"path": "a.lulc", "provenance": "manual"},
                              {"path": "/abs/b.lulc", "provenance": "pseudo", "priority": 7}]})";
    }
    const auto e = read_fusion_manifest(dir / "m.json");
    REQUIRE(e.size() == 2);
    CHECK(e[0].path == dir / "a.lulc");
    CHECK(e[0].priority == 3);
    CHECK(e[1].path == "/abs/b.lulc");
    CHECK(e[1].provenance == Provenance::Pseudo);
    CHECK(e[1].priority == 7);
    {
        std::ofstream os(dir / "bad.json");
        os << R"({"sources": [{"path": "a.lulc", "provenance": "rumour"}]})";
    }
    CHECK_THROWS_AS(read_fusion_manifest(dir / "bad.json"), ValidationError);
    std::filesystem::remove_all(dir);
}
