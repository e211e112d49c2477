#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lulc/raster.hpp"

namespace lulc {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

/// Closed ring: the first vertex is repeated as the last one.
using Ring = std::vector<Point>;

enum class Provenance { Manual, Osm, Pseudo };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

struct Bounds {
    double min_x, min_y, max_x, max_y;
};

/// Annotated polygon in grid (meter) coordinates, with at most one level of holes.
struct LabelPolygon {
    Ring exterior;
    std::vector<Ring> holes;
    ClassIndex class_index = 0;
    Provenance provenance = Provenance::Manual;

    Bounds bounds() const;
    /// Exterior area minus hole areas (absolute values).
    double area() const;
    /// Even-odd test over the exterior and all holes.
    bool contains(double x, double y) const;
};

/// Signed shoelace area; positive for counter-clockwise rings.
double signed_area(const Ring& ring);

/// Closes the ring if the last vertex differs from the first.
Ring close_ring(Ring ring);

/// Throws ValidationError unless every ring is closed, has at least three
/// distinct vertices and does not self-intersect, the polygon has nonzero area
/// and its class is not 0. The O(n^2) self-intersection test runs only when
/// `check_simple` is set.
void validate_polygon(const LabelPolygon& poly, bool check_simple = true);

/// Axis-aligned rectangle polygon.
LabelPolygon rectangle(double min_x, double min_y, double max_x, double max_y, ClassIndex cls,
                       Provenance prov = Provenance::Manual);

}  // namespace lulc
