#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lulc/polygon.hpp"
#include "lulc/raster.hpp"
#include "lulc/scheme.hpp"

namespace lulc {

/// World-coordinate overlap between a teacher map and the student grid.
struct OverlapReport {
    double teacher_area = 0.0;     ///< m²
    double student_area = 0.0;     ///< m²
    double overlap_area = 0.0;     ///< m²
    double student_fraction = 0.0; ///< overlap / student area
    std::string describe() const;
};

OverlapReport overlap(const Grid& teacher, const Grid& student);

/// Teacher argmax map to student weak labels. The map is remapped to the
/// student scheme, nearest-resampled onto an intermediate grid with
/// resolution student.res / factor aligned to the student grid, then reduced
/// with downsample_majority. Student pixels outside the teacher map stay 0.
/// Throws ValidationError when the grids do not overlap (the message carries
/// the overlap report), when factor < 1, or when the remap source does not
/// cover the teacher map's values.
MaskRaster teacher_to_student(const MaskRaster& teacher_map, const Grid& student_grid, std::size_t factor,
                              double min_coverage, const RemapTable& class_remap,
                              OverlapReport* report = nullptr);

struct LabelSource {
    MaskRaster mask;
    int priority = 0;
};

/// Default fusion priorities: manual 3 > osm 2 > pseudo 1.
int default_priority(Provenance p);

/// Per pixel, the nonzero value of the highest-priority source that labels
/// it; equal priorities keep list order. Throws ValidationError for an empty
/// list or differing grids.
MaskRaster fuse_labels(const std::vector<LabelSource>& sources);

/// One entry of a fusion manifest:
/// {"sources": [{"path": ..., "provenance": "manual|osm|pseudo", "priority": n}]}
/// priority defaults to default_priority(provenance); relative paths resolve
/// against the manifest's directory.
struct ManifestEntry {
    std::filesystem::path path;
    Provenance provenance = Provenance::Manual;
    int priority = 0;
};

std::vector<ManifestEntry> read_fusion_manifest(const std::filesystem::path& path);

}  // namespace lulc
