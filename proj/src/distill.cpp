#include "lulc/distill.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "lulc/error.hpp"
#include "lulc/parallel.hpp"
#include "lulc/raster_io.hpp"

namespace lulc {

std::string OverlapReport::describe() const {
    std::ostringstream os;
    os << "teacher area " << teacher_area << " m2, student area " << student_area << " m2, overlap "
       << overlap_area << " m2 (" << student_fraction * 100.0 << "% of student grid)";
    return os.str();
}

OverlapReport overlap(const Grid& teacher, const Grid& student) {
    OverlapReport r;
    r.teacher_area = teacher.area();
    r.student_area = student.area();
    const double w = std::min(teacher.max_x(), student.max_x()) - std::max(teacher.origin_x, student.origin_x);
    const double h = std::min(teacher.origin_y, student.origin_y) - std::max(teacher.min_y(), student.min_y());
    r.overlap_area = (w > 0 && h > 0) ? w * h : 0.0;
    r.student_fraction = r.student_area > 0 ? r.overlap_area / r.student_area : 0.0;
    return r;
}

MaskRaster teacher_to_student(const MaskRaster& teacher_map, const Grid& student_grid, std::size_t factor,
                              double min_coverage, const RemapTable& class_remap, OverlapReport* report) {
    student_grid.validate();
    teacher_map.grid().validate();
    if (factor < 1) throw ValidationError("distill factor must be at least 1");
    const OverlapReport ov = overlap(teacher_map.grid(), student_grid);
    if (report) *report = ov;
    if (ov.overlap_area <= 0.0) throw ValidationError("teacher map does not overlap the student grid: " + ov.describe());

    const MaskRaster remapped = remap(teacher_map, class_remap);
    const Grid inter{student_grid.origin_x, student_grid.origin_y, student_grid.res / static_cast<double>(factor),
                     student_grid.width * factor, student_grid.height * factor};
    const MaskRaster fine = resample_nearest(remapped, inter);
    MaskRaster coarse = downsample_majority(fine, factor, min_coverage);
    return MaskRaster(student_grid, std::move(coarse.values()));
}

int default_priority(Provenance p) {
    switch (p) {
        case Provenance::Manual: return 3;
        case Provenance::Osm: return 2;
        case Provenance::Pseudo: return 1;
    }
    return 0;
}

MaskRaster fuse_labels(const std::vector<LabelSource>& sources) {
    if (sources.empty()) throw ValidationError("fuse_labels needs at least one source");
    const Grid& g = sources.front().mask.grid();
    for (std::size_t i = 1; i < sources.size(); ++i) {
        if (!(sources[i].mask.grid() == g)) {
            std::ostringstream os;
            os << "fusion source " << i << " is on a different grid than source 0";
            throw ValidationError(os.str());
        }
    }
    std::vector<std::size_t> order(sources.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sources[a].priority > sources[b].priority; });

    MaskRaster out(g);
    auto& dst = out.values();
    parallel::for_chunks(dst.size(), 1 << 16, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            for (std::size_t s : order) {
                const ClassIndex v = sources[s].mask.values()[i];
                if (v != 0) {
                    dst[i] = v;
                    break;
                }
            }
        }
    });
    return out;
}

std::vector<ManifestEntry> read_fusion_manifest(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file_bytes(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("malformed fusion manifest " + path.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("sources") || !j["sources"].is_array() || j["sources"].empty())
        throw ValidationError("fusion manifest " + path.string() + " needs a non-empty \"sources\" array");
    std::vector<ManifestEntry> out;
    for (const auto& s : j["sources"]) {
        try {
            ManifestEntry e;
            e.path = s.at("path").get<std::string>();
            if (e.path.is_relative()) e.path = path.parent_path() / e.path;
            e.provenance = provenance_from_string(s.value("provenance", std::string("manual")));
            e.priority = s.contains("priority") ? s["priority"].get<int>() : default_priority(e.provenance);
            out.push_back(std::move(e));
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("bad fusion manifest entry in " + path.string() + ": " + e.what());
        }
    }
    return out;
}

}  // namespace lulc
