#include "lulc/labels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lulc/error.hpp"
#include "lulc/parallel.hpp"

namespace lulc {
namespace {

// Calls emit(row, col_begin, col_end) for every run of lattice cells whose
// centre lies inside `poly`, restricted to [col_lo, col_hi) x [row_lo, row_hi).
// Indices are lattice indices and may be negative. The crossing expression is
// the one LabelPolygon::contains uses, so both agree bit for bit.
void scan_polygon(const LabelPolygon& poly, const Grid& lattice, std::int64_t col_lo, std::int64_t col_hi,
                  std::int64_t row_lo, std::int64_t row_hi,
                  const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& emit) {
    const Bounds b = poly.bounds();
    row_lo = std::max(row_lo, static_cast<std::int64_t>(std::floor((lattice.origin_y - b.max_y) / lattice.res)) - 1);
    row_hi = std::min(row_hi, static_cast<std::int64_t>(std::floor((lattice.origin_y - b.min_y) / lattice.res)) + 2);
    std::vector<double> xs;
    auto add_crossings = [&](const Ring& ring, double y) {
        for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
            const Point& a = ring[i];
            const Point& p = ring[j];
            if ((a.y > y) != (p.y > y)) xs.push_back((p.x - a.x) * (y - a.y) / (p.y - a.y) + a.x);
        }
    };
    // First lattice column whose centre is >= x.
    auto first_col_at_or_after = [&](double x) {
        auto c = static_cast<std::int64_t>(std::ceil((x - lattice.origin_x) / lattice.res - 0.5));
        while (lattice.center_x(c - 1) >= x) --c;
        while (lattice.center_x(c) < x) ++c;
        return c;
    };
    for (std::int64_t row = row_lo; row < row_hi; ++row) {
        const double y = lattice.center_y(row);
        xs.clear();
        add_crossings(poly.exterior, y);
        for (const Ring& h : poly.holes) add_crossings(h, y);
        if (xs.size() < 2) continue;
        std::sort(xs.begin(), xs.end());
        // Centre x is inside iff an odd number of crossings lie strictly to its
        // right, i.e. x in [xs[2i], xs[2i+1]).
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const std::int64_t c0 = std::max(col_lo, first_col_at_or_after(xs[k]));
            const std::int64_t c1 = std::min(col_hi, first_col_at_or_after(xs[k + 1]));
            if (c0 < c1) emit(row, c0, c1);
        }
    }
}

struct Vertex {
    std::int64_t i, j;
};

std::uint64_t key(std::int64_t i, std::int64_t j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
}

// Traces region boundaries of a cell window. Cell (c, r) of the window is
// lattice cell (col_off + c, row_off + r); vertex (i, j) sits at world
// (origin_x + i * res, origin_y - j * res).
std::vector<LabelPolygon> trace_regions(const std::vector<std::uint8_t>& cells, std::size_t w, std::size_t h,
                                        const Grid& lattice, std::int64_t col_off, std::int64_t row_off,
                                        ClassIndex cls, Provenance prov) {
    std::vector<std::int32_t> comp(w * h, -1);
    std::int32_t ncomp = 0;
    std::vector<std::size_t> stack;
    auto in = [&](std::int64_t c, std::int64_t r) {
        return c >= 0 && r >= 0 && c < static_cast<std::int64_t>(w) && r < static_cast<std::int64_t>(h) &&
               cells[static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)] != 0;
    };
    for (std::size_t start = 0; start < w * h; ++start) {
        if (!cells[start] || comp[start] >= 0) continue;
        comp[start] = ncomp;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t idx = stack.back();
            stack.pop_back();
            const auto c = static_cast<std::int64_t>(idx % w);
            const auto r = static_cast<std::int64_t>(idx / w);
            const std::array<std::array<std::int64_t, 2>, 4> nb{{{c - 1, r}, {c + 1, r}, {c, r - 1}, {c, r + 1}}};
            for (const auto& n : nb) {
                if (!in(n[0], n[1])) continue;
                const std::size_t nidx = static_cast<std::size_t>(n[1]) * w + static_cast<std::size_t>(n[0]);
                if (comp[nidx] < 0) {
                    comp[nidx] = ncomp;
                    stack.push_back(nidx);
                }
            }
        }
        ++ncomp;
    }

    struct Edge {
        Vertex from, to;
        bool used = false;
    };
    std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(ncomp));
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const std::int32_t id = comp[r * w + c];
            if (id < 0) continue;
            const auto ci = static_cast<std::int64_t>(c);
            const auto rj = static_cast<std::int64_t>(r);
            auto& e = edges[static_cast<std::size_t>(id)];
            // Counter-clockwise in world orientation (y up, rows grow downwards).
            if (!in(ci, rj + 1)) e.push_back({{ci, rj + 1}, {ci + 1, rj + 1}});
            if (!in(ci + 1, rj)) e.push_back({{ci + 1, rj + 1}, {ci + 1, rj}});
            if (!in(ci, rj - 1)) e.push_back({{ci + 1, rj}, {ci, rj}});
            if (!in(ci - 1, rj)) e.push_back({{ci, rj}, {ci, rj + 1}});
        }
    }

    auto to_world = [&](const Vertex& v) {
        return Point{lattice.origin_x + static_cast<double>(v.i + col_off) * lattice.res,
                     lattice.origin_y - static_cast<double>(v.j + row_off) * lattice.res};
    };

    std::vector<LabelPolygon> out;
    for (auto& comp_edges : edges) {
        std::unordered_map<std::uint64_t, std::array<std::int32_t, 2>> outgoing;
        for (std::size_t k = 0; k < comp_edges.size(); ++k) {
            auto [it, fresh] = outgoing.try_emplace(key(comp_edges[k].from.i, comp_edges[k].from.j),
                                                    std::array<std::int32_t, 2>{-1, -1});
            (it->second[0] < 0 ? it->second[0] : it->second[1]) = static_cast<std::int32_t>(k);
        }
        std::vector<Ring> loops;
        for (std::size_t first = 0; first < comp_edges.size(); ++first) {
            if (comp_edges[first].used) continue;
            std::vector<Vertex> verts;
            std::size_t cur = first;
            for (;;) {
                Edge& e = comp_edges[cur];
                e.used = true;
                verts.push_back(e.from);
                const auto& cand = outgoing.at(key(e.to.i, e.to.j));
                std::int32_t next = -1;
                for (std::int32_t k : cand) {
                    if (k < 0) continue;
                    if (comp_edges[static_cast<std::size_t>(k)].used && static_cast<std::size_t>(k) != first) continue;
                    if (next < 0) {
                        next = k;
                        continue;
                    }
                    // Pinch vertex: prefer the left turn (world orientation), which
                    // keeps the loop tight around the current cell.
                    const auto& nk = comp_edges[static_cast<std::size_t>(k)];
                    const std::int64_t dx_in = e.to.i - e.from.i, dy_in = -(e.to.j - e.from.j);
                    const std::int64_t dx_out = nk.to.i - nk.from.i, dy_out = -(nk.to.j - nk.from.j);
                    if (dx_in * dy_out - dy_in * dx_out > 0) next = k;
                }
                if (next < 0) break;
                cur = static_cast<std::size_t>(next);
                if (cur == first) break;
            }
            // Drop collinear vertices.
            std::vector<Vertex> simple;
            const std::size_t n = verts.size();
            for (std::size_t k = 0; k < n; ++k) {
                const Vertex& p = verts[(k + n - 1) % n];
                const Vertex& v = verts[k];
                const Vertex& q = verts[(k + 1) % n];
                const std::int64_t cr = (v.i - p.i) * (q.j - v.j) - (v.j - p.j) * (q.i - v.i);
                if (cr != 0) simple.push_back(v);
            }
            Ring ring;
            ring.reserve(simple.size() + 1);
            for (const Vertex& v : simple) ring.push_back(to_world(v));
            loops.push_back(close_ring(std::move(ring)));
        }
        if (loops.empty()) continue;
        auto outer = std::max_element(loops.begin(), loops.end(), [](const Ring& a, const Ring& b) {
            return signed_area(a) < signed_area(b);
        });
        LabelPolygon poly;
        poly.class_index = cls;
        poly.provenance = prov;
        poly.exterior = std::move(*outer);
        for (auto it = loops.begin(); it != loops.end(); ++it)
            if (it != outer) poly.holes.push_back(std::move(*it));
        out.push_back(std::move(poly));
    }
    return out;
}

// Square (Chebyshev) dilation by k cells, separable running-count form.
std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& src, std::size_t w, std::size_t h, std::size_t k) {
    std::vector<std::uint8_t> tmp(w * h, 0), out(w * h, 0);
    std::vector<std::size_t> prefix(std::max(w, h) + 1);
    for (std::size_t r = 0; r < h; ++r) {
        prefix[0] = 0;
        for (std::size_t c = 0; c < w; ++c) prefix[c + 1] = prefix[c] + (src[r * w + c] != 0);
        for (std::size_t c = 0; c < w; ++c) {
            const std::size_t lo = c >= k ? c - k : 0;
            const std::size_t hi = std::min(w, c + k + 1);
            tmp[r * w + c] = prefix[hi] > prefix[lo];
        }
    }
    for (std::size_t c = 0; c < w; ++c) {
        prefix[0] = 0;
        for (std::size_t r = 0; r < h; ++r) prefix[r + 1] = prefix[r] + (tmp[r * w + c] != 0);
        for (std::size_t r = 0; r < h; ++r) {
            const std::size_t lo = r >= k ? r - k : 0;
            const std::size_t hi = std::min(h, r + k + 1);
            out[r * w + c] = prefix[hi] > prefix[lo];
        }
    }
    return out;
}

}  // namespace

std::vector<LabelPolygon> polygonize(const std::vector<std::uint8_t>& cells, const Grid& grid, ClassIndex cls,
                                     Provenance prov) {
    grid.validate();
    if (cells.size() != grid.size()) throw ValidationError("polygonize: cell count does not match grid");
    return trace_regions(cells, grid.width, grid.height, grid, 0, 0, cls, prov);
}

std::vector<LabelPolygon> buffer_ring(const LabelPolygon& poly, double distance, ClassIndex negative_class,
                                      const Grid& lattice) {
    if (!(distance > 0.0) || !std::isfinite(distance)) throw ValidationError("buffer distance must be positive");
    if (!(lattice.res > 0.0)) throw ValidationError("buffer lattice resolution must be positive");
    if (negative_class == 0) throw ValidationError("negative class must not be Unlabeled");
    validate_polygon(poly, /*check_simple=*/false);

    const auto k = static_cast<std::int64_t>(std::max<long long>(1, std::llround(distance / lattice.res)));
    const Bounds b = poly.bounds();
    const PixelIndex top_left = lattice_index(lattice, b.min_x, b.max_y);
    const PixelIndex bottom_right = lattice_index(lattice, b.max_x, b.min_y);
    const std::int64_t col_off = top_left.col - k - 1;
    const std::int64_t row_off = top_left.row - k - 1;
    const auto w = static_cast<std::size_t>(bottom_right.col + k + 2 - col_off);
    const auto h = static_cast<std::size_t>(bottom_right.row + k + 2 - row_off);

    std::vector<std::uint8_t> seed(w * h, 0);
    bool any = false;
    scan_polygon(poly, lattice, col_off, col_off + static_cast<std::int64_t>(w), row_off,
                 row_off + static_cast<std::int64_t>(h), [&](std::int64_t row, std::int64_t c0, std::int64_t c1) {
                     for (std::int64_t c = c0; c < c1; ++c)
                         seed[static_cast<std::size_t>(row - row_off) * w + static_cast<std::size_t>(c - col_off)] = 1;
                     any = true;
                 });
    if (!any) {
        // Polygon smaller than a cell: seed with the cells holding its vertices.
        for (const Point& p : poly.exterior) {
            const PixelIndex px = lattice_index(lattice, p.x, p.y);
            seed[static_cast<std::size_t>(px.row - row_off) * w + static_cast<std::size_t>(px.col - col_off)] = 1;
        }
    }

    std::vector<std::uint8_t> ring = dilate(seed, w, h, static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < ring.size(); ++i)
        if (seed[i]) ring[i] = 0;
    return trace_regions(ring, w, h, lattice, col_off, row_off, negative_class, poly.provenance);
}

std::map<ClassIndex, double> default_negative_distances(const ClassScheme& scheme) {
    std::map<ClassIndex, double> d;
    if (auto b = scheme.find("Building")) d[*b] = kBuildingBufferMeters;
    if (auto r = scheme.find("Road")) d[*r] = kRoadBufferMeters;
    return d;
}

NegativesResult make_negatives(const std::vector<LabelPolygon>& polys, const std::map<ClassIndex, double>& distances,
                               ClassIndex negative_class, const Grid& lattice) {
    NegativesResult result;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        auto it = distances.find(polys[i].class_index);
        if (it == distances.end()) continue;
        try {
            auto rings = buffer_ring(polys[i], it->second, negative_class, lattice);
            for (auto& r : rings) result.polygons.push_back(std::move(r));
        } catch (const ValidationError& e) {
            result.skipped.push_back({i, e.what()});
        }
    }
    return result;
}

MaskRaster rasterize(const std::vector<LabelPolygon>& polys, const Grid& grid, const ClassScheme& scheme,
                     std::vector<SkippedPolygon>* skipped) {
    grid.validate();
    std::vector<std::size_t> order;
    order.reserve(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const LabelPolygon& p = polys[i];
        if (p.class_index >= scheme.size()) {
            std::ostringstream os;
            os << "polygon " << i << " has class index " << static_cast<int>(p.class_index) << " outside scheme '"
               << scheme.name() << "'";
            throw ValidationError(os.str());
        }
        try {
            validate_polygon(p, /*check_simple=*/false);
        } catch (const ValidationError& e) {
            if (skipped) skipped->push_back({i, e.what()});
            continue;
        }
        order.push_back(i);
    }
    std::stable_partition(order.begin(), order.end(),
                          [&](std::size_t i) { return scheme.is_negative(polys[i].class_index); });

    MaskRaster out(grid);
    parallel::for_chunks(grid.height, 64, [&](std::size_t r0, std::size_t r1) {
        for (std::size_t i : order) {
            const ClassIndex cls = polys[i].class_index;
            scan_polygon(polys[i], grid, 0, static_cast<std::int64_t>(grid.width), static_cast<std::int64_t>(r0),
                         static_cast<std::int64_t>(r1), [&](std::int64_t row, std::int64_t c0, std::int64_t c1) {
                             auto* line = out.values().data() + static_cast<std::size_t>(row) * grid.width;
                             std::fill(line + c0, line + c1, cls);
                         });
        }
    });
    return out;
}

double sparsity(const MaskRaster& mask) {
    if (mask.size() == 0) return 0.0;
    const auto labeled = static_cast<std::size_t>(
        std::count_if(mask.values().begin(), mask.values().end(), [](ClassIndex v) { return v != 0; }));
    return static_cast<double>(labeled) / static_cast<double>(mask.size());
}

}  // namespace lulc
