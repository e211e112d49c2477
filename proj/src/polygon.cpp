#include "lulc/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/scheme.hpp"

namespace lulc {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Manual: return "manual";
        case Provenance::Osm: return "osm";
        case Provenance::Pseudo: return "pseudo";
    }
    return "manual";
}

Provenance provenance_from_string(std::string_view s) {
    if (iequals(s, "manual")) return Provenance::Manual;
    if (iequals(s, "osm")) return Provenance::Osm;
    if (iequals(s, "pseudo")) return Provenance::Pseudo;
    throw ValidationError("unknown provenance '" + std::string(s) + "'");
}

double signed_area(const Ring& ring) {
    double twice = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
        twice += ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y;
    return 0.5 * twice;
}

Ring close_ring(Ring ring) {
    if (!ring.empty() && !(ring.front() == ring.back())) ring.push_back(ring.front());
    return ring;
}

Bounds LabelPolygon::bounds() const {
    Bounds b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : exterior) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

double LabelPolygon::area() const {
    double a = std::abs(signed_area(exterior));
    for (const Ring& h : holes) a -= std::abs(signed_area(h));
    return a;
}

namespace {
bool ring_crossings(const Ring& ring, double x, double y) {
    bool inside = false;
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
        const Point& a = ring[i];
        const Point& b = ring[j];
        if ((a.y > y) != (b.y > y) && x < (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x) inside = !inside;
    }
    return inside;
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    if (d1 == 0 && on_segment(p1, q1, q2)) return true;
    if (d2 == 0 && on_segment(p2, q1, q2)) return true;
    if (d3 == 0 && on_segment(q1, p1, p2)) return true;
    if (d4 == 0 && on_segment(q2, p1, p2)) return true;
    return false;
}

void validate_ring(const Ring& ring, const char* what, bool check_simple) {
    if (ring.size() < 4 || !(ring.front() == ring.back()))
        throw ValidationError(std::string(what) + " ring must be closed with at least 3 vertices");
    for (const Point& p : ring)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw ValidationError(std::string(what) + " ring has a non-finite coordinate");
    std::vector<Point> distinct(ring.begin(), ring.end() - 1);
    std::sort(distinct.begin(), distinct.end(),
              [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw ValidationError(std::string(what) + " ring has fewer than 3 distinct vertices");

    if (!check_simple) return;
    // O(n^2) check of non-adjacent edge pairs.
    const std::size_t n = ring.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(ring[i], ring[i + 1], ring[j], ring[j + 1])) {
                std::ostringstream os;
                os << what << " ring self-intersects between edges " << i << " and " << j;
                throw ValidationError(os.str());
            }
        }
    }
}
}  // namespace

bool LabelPolygon::contains(double x, double y) const {
    bool inside = ring_crossings(exterior, x, y);
    for (const Ring& h : holes)
        if (ring_crossings(h, x, y)) inside = !inside;
    return inside;
}

void validate_polygon(const LabelPolygon& poly, bool check_simple) {
    if (poly.class_index == 0) throw ValidationError("polygon class must not be Unlabeled (0)");
    validate_ring(poly.exterior, "exterior", check_simple);
    for (const Ring& h : poly.holes) validate_ring(h, "hole", check_simple);
    if (!(poly.area() > 0.0)) throw ValidationError("polygon has zero area");
}

LabelPolygon rectangle(double min_x, double min_y, double max_x, double max_y, ClassIndex cls, Provenance prov) {
    LabelPolygon p;
    p.exterior = {{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}, {min_x, min_y}};
    p.class_index = cls;
    p.provenance = prov;
    return p;
}

}  // namespace lulc
