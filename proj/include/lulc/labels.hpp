#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lulc/polygon.hpp"
#include "lulc/raster.hpp"
#include "lulc/scheme.hpp"

namespace lulc {

/// Hard-negative buffer widths (m) around Building and Road annotations.
inline constexpr double kBuildingBufferMeters = 3.0;
inline constexpr double kRoadBufferMeters = 5.0;

struct SkippedPolygon {
    std::size_t index = 0;  ///< position in the input list
    std::string reason;
};

/// Chebyshev (square) buffer ring around `poly`: the cells within `distance`
/// of the polygon, minus the polygon itself, traced back into polygons tagged
/// with `negative_class`. Buffering runs as a morphological dilation on the
/// cells of `lattice` (its origin and resolution; its extent is ignored) with a
/// radius of round(distance / res) cells, at least one. Burning the result onto
/// `lattice` reproduces the ring cells exactly.
/// Throws ValidationError for degenerate (zero-area) polygons or distance <= 0.
std::vector<LabelPolygon> buffer_ring(const LabelPolygon& poly, double distance, ClassIndex negative_class,
                                      const Grid& lattice);

struct NegativesResult {
    std::vector<LabelPolygon> polygons;
    std::vector<SkippedPolygon> skipped;
};

/// Per-class buffer distances: Building -> 3 m, Road -> 5 m for every scheme
/// that has those classes.
std::map<ClassIndex, double> default_negative_distances(const ClassScheme& scheme);

/// Buffer rings for every polygon whose class has a distance entry. Polygons
/// that fail buffering are reported in `skipped`; the rest are still processed.
NegativesResult make_negatives(const std::vector<LabelPolygon>& polys,
                               const std::map<ClassIndex, double>& distances, ClassIndex negative_class,
                               const Grid& lattice);

/// Burns polygons by pixel-centre containment (even-odd rule). Negative-class
/// polygons are burned first, then all other polygons in input order, so real
/// classes override Negative rings and later polygons override earlier ones.
/// Degenerate polygons are skipped (and reported when `skipped` is given).
/// Throws ValidationError when a polygon class is outside the scheme.
MaskRaster rasterize(const std::vector<LabelPolygon>& polys, const Grid& grid, const ClassScheme& scheme,
                     std::vector<SkippedPolygon>* skipped = nullptr);

/// Traces the 4-connected regions of a binary cell mask on `grid` into
/// polygons of class `cls`; rasterizing them onto `grid` yields the mask back.
std::vector<LabelPolygon> polygonize(const std::vector<std::uint8_t>& cells, const Grid& grid, ClassIndex cls,
                                     Provenance prov = Provenance::Pseudo);

/// Fraction of nonzero pixels.
double sparsity(const MaskRaster& mask);

}  // namespace lulc
