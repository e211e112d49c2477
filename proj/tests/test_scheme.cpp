#include <doctest.h>

#include <fstream>

#include "lulc/error.hpp"
#include "lulc/raster_io.hpp"
#include "lulc/scheme.hpp"

using namespace lulc;

TEST_CASE("built-in schemes reserve index 0 and flag Negative") {
    for (const auto& name : builtin_scheme_names()) {
        const ClassScheme s = builtin_scheme(name);
        CHECK(s.name_of(0) == "Unlabeled");
        if (auto n = s.negative_index()) CHECK(s.name_of(*n) == "Negative");
    }
    const ClassScheme t = teacher_scheme();
    CHECK(t.class_count() == 10);
    CHECK(t.find("building"));
    CHECK(t.find("ROAD"));
    CHECK(t.negative_index() == t.find("Negative"));
    CHECK_FALSE(student_scheme().negative_index());
    CHECK(student_scheme().find("Built-up"));
    CHECK(student_scheme().find("Road"));
    CHECK_FALSE(evaluation_scheme().find("Flooded Vegetation"));
    CHECK_THROWS_AS(builtin_scheme("nope"), ValidationError);
}

TEST_CASE("scheme construction rejects duplicates and bad Negative names") {
    CHECK_THROWS_AS(ClassScheme("x", {"A", "a"}), ValidationError);
    CHECK_THROWS_AS(ClassScheme("x", {"A", "B"}, std::string("C")), ValidationError);
    CHECK_THROWS_AS(ClassScheme("x", {"Unlabeled", "B"}), ValidationError);
    const ClassScheme s("x", {"A", "B"}, std::string("B"));
    CHECK(ClassScheme::from_json(s.to_json()) == s);
}

TEST_CASE("teacher to evaluation merges Building and Road into Built-up") {
    const RemapTable t = teacher_to_evaluation();
    const ClassScheme& src = t.source();
    const ClassScheme& dst = t.target();
    const MaskRaster m(Grid{0, 1, 1, 4, 1},
                       {src.index_of("Building"), src.index_of("Road"), src.index_of("Crop"), 0});
    const MaskRaster out = remap(m, t);
    CHECK(out.values() ==
          std::vector<ClassIndex>{dst.index_of("Built-up"), dst.index_of("Built-up"), dst.index_of("Crop"), 0});
    CHECK(t(src.index_of("Flooded Vegetation")) == dst.index_of("Others"));
    CHECK(t.others() == dst.find("Others"));
}

TEST_CASE("external map exclusions become Others") {
    const RemapTable esa = esa_to_evaluation();
    const ClassIndex others = esa.target().index_of("Others");
    for (const char* n : {"Snow and ice", "Herbaceous wetland", "Mangroves"}) CHECK(esa(esa.source().index_of(n)) == others);
    CHECK(esa(esa.source().index_of("Cropland")) == esa.target().index_of("Crop"));
    const RemapTable gdw = gdw_to_evaluation();
    CHECK(gdw(gdw.source().index_of("Flooded Vegetation")) == gdw.target().index_of("Others"));
    const RemapTable esri = esri_to_evaluation();
    CHECK(esri(esri.source().index_of("Built Area")) == esri.target().index_of("Built-up"));
}

TEST_CASE("teacher to student keeps Road and drops Negative") {
    const RemapTable t = teacher_to_student();
    CHECK(t(t.source().index_of("Road")) == t.target().index_of("Road"));
    CHECK(t(t.source().index_of("Building")) == t.target().index_of("Built-up"));
    CHECK(t(t.source().index_of("Negative")) == 0);
    CHECK(t(0) == 0);
}

TEST_CASE("remap tables are total and identity is a no-op") {
    for (const auto& name : builtin_remap_names()) {
        const RemapTable t = builtin_remap(name);
        CHECK(t.mapping().size() == t.source().size());
        CHECK(t(0) == 0);
        for (auto v : t.mapping()) CHECK(v < t.target().size());
    }
    const RemapTable id = RemapTable::identity(teacher_scheme());
    MaskRaster m(Grid{0, 1, 1, 11, 1});
    for (std::size_t i = 0; i < 11; ++i) m.values()[i] = static_cast<ClassIndex>(i);
    CHECK(remap(m, id) == m);
    CHECK(load_remap("identity:teacher").mapping() == id.mapping());
}

TEST_CASE("remap names the first offending pixel") {
    const MaskRaster m(Grid{0, 2, 1, 2, 2}, {1, 2, 3, 99});
    try {
        remap(m, student_to_evaluation());
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("99") != std::string::npos);
        CHECK(msg.find("col 1") != std::string::npos);
        CHECK(msg.find("row 1") != std::string::npos);
    }
}

TEST_CASE("shipped remap and scheme files equal the built-ins") {
    const std::filesystem::path data = LULC_DATA_DIR;
    for (const auto& name : builtin_remap_names()) {
        const RemapTable file = RemapTable::load(data / "remap" / (name + ".json"));
        const RemapTable builtin = builtin_remap(name);
        CHECK(file.mapping() == builtin.mapping());
        CHECK(file.source() == builtin.source());
        CHECK(file.target() == builtin.target());
        CHECK(file.others() == builtin.others());
    }
    for (const auto& name : builtin_scheme_names())
        CHECK(load_scheme((data / "schemes" / (name + ".json")).string()) == builtin_scheme(name));
}

TEST_CASE("remap tables from JSON reject unknown and missing classes") {
    using nlohmann::json;
    CHECK_THROWS_AS(RemapTable::from_json(json{{"source", "student"}, {"target", "evaluation"},
                                               {"map", {{"Nope", "Crop"}}}}),
                    ValidationError);
    // Road has no same-named class in the evaluation scheme.
    CHECK_THROWS_AS(RemapTable::from_json(json{{"source", "student"}, {"target", "evaluation"}, {"map", json::object()}}),
                    ValidationError);
    const RemapTable ok = RemapTable::from_json(
        json{{"source", "student"}, {"target", "evaluation"}, {"map", {{"road", "built-up"}}}});
    CHECK(ok.mapping() == student_to_evaluation().mapping());
}
