#pragma once

#include <cstdint>
#include <vector>

#include "lulc/polygon.hpp"
#include "lulc/raster.hpp"
#include "lulc/scheme.hpp"

namespace lulc {

struct SceneOptions {
    double sparse_fraction = 0.05;        ///< target share of pixels covered by sparse polygons
    std::size_t building_min = 8;         ///< building side lengths, pixels
    std::size_t building_max = 20;
    std::size_t road_width_min = 6;       ///< road widths, pixels
    std::size_t road_width_max = 10;
    std::size_t region_size = 64;         ///< typical background region side, pixels
    std::size_t building_spacing = 48;    ///< one building per spacing^2 pixels
};

struct Scene {
    BandRaster image;
    MaskRaster truth;
    std::vector<LabelPolygon> polygons;  ///< sparse annotations, Manual provenance
};

/// Spectral class means: the first K points (lexicographic) of the smallest
/// lattice {x >= 0, sum x = n} / n on the unit simplex in `bands` dimensions
/// with at least K points; a single band uses k * spacing. Returns the means
/// and the minimum pairwise spacing.
struct ClassMeans {
    std::vector<std::vector<double>> mean;  ///< [k][band]
    double spacing = 0.0;
};
ClassMeans class_means(std::size_t classes, std::size_t bands);

/// Seeded scene over `grid`: Voronoi background regions of the non-built
/// classes, straight roads and rectangular buildings when the scheme has Road
/// and Building. Band values are the class mean plus Gaussian noise with
/// sigma (1 - separability) * spacing. Sparse polygons lie entirely inside
/// truth regions of their class: rasterized, every labeled pixel matches the
/// truth. The truth never contains the Negative class.
/// Throws ValidationError for a degenerate grid, bands == 0, separability
/// outside (0, 1] or fewer than 2 non-negative classes.
Scene gen_scene(std::uint64_t seed, const Grid& grid, std::size_t bands, const ClassScheme& scheme,
                double separability, const SceneOptions& options = {});

struct ScenePair {
    Scene hi;
    BandRaster lo_image;
    MaskRaster lo_truth;
};

/// High-resolution scene cropped to a multiple of `factor`, with its
/// low-resolution counterpart: block-mean image and downsample_majority
/// truth (min coverage 0.5) over the same world extent.
ScenePair gen_pair(std::uint64_t seed, const Grid& hi_res, std::size_t factor, std::size_t bands,
                   const ClassScheme& scheme, double separability, const SceneOptions& options = {});

}  // namespace lulc
