#include "lulc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/labels.hpp"
#include "lulc/rng.hpp"

namespace lulc {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Compositions of n into `parts` nonnegative parts, lexicographically descending
/// in the first coordinate.
void compositions(std::size_t n, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out, std::size_t limit) {
    if (out.size() >= limit) return;
    if (cur.size() + 1 == parts) {
        cur.push_back(n);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t v = n + 1; v-- > 0;) {
        cur.push_back(v);
        compositions(n - v, parts, cur, out, limit);
        cur.pop_back();
        if (out.size() >= limit) return;
    }
}

struct Layout {
    std::vector<ClassIndex> background;
    std::optional<ClassIndex> building, road;
};

Layout layout(const ClassScheme& scheme) {
    Layout l;
    for (std::size_t c = 1; c < scheme.size(); ++c) {
        const auto ci = static_cast<ClassIndex>(c);
        if (scheme.is_negative(ci)) continue;
        if (iequals(scheme.name_of(ci), "Building"))
            l.building = ci;
        else if (iequals(scheme.name_of(ci), "Road"))
            l.road = ci;
        else
            l.background.push_back(ci);
    }
    return l;
}

void paint_background(MaskRaster& truth, const Layout& l, const SceneOptions& opt, Rng& rng) {
    const Grid& g = truth.grid();
    const std::size_t nbg = l.background.size();
    const std::size_t region = std::max<std::size_t>(opt.region_size, 1);
    const std::size_t nseeds = std::max<std::size_t>(2 * nbg, g.size() / (region * region));
    struct Seed {
        double x, y;
        ClassIndex cls;
    };
    std::vector<Seed> seeds(nseeds);
    for (std::size_t i = 0; i < nseeds; ++i) {
        seeds[i].x = rng.uniform(0.0, static_cast<double>(g.width));
        seeds[i].y = rng.uniform(0.0, static_cast<double>(g.height));
        seeds[i].cls = i < nbg ? l.background[i] : l.background[rng.uniform_index(nbg)];
    }
    for (std::size_t r = 0; r < g.height; ++r) {
        for (std::size_t c = 0; c < g.width; ++c) {
            const double x = static_cast<double>(c) + 0.5, y = static_cast<double>(r) + 0.5;
            double best = std::numeric_limits<double>::infinity();
            ClassIndex cls = 0;
            for (const Seed& s : seeds) {
                const double d = (s.x - x) * (s.x - x) + (s.y - y) * (s.y - y);
                if (d < best) {
                    best = d;
                    cls = s.cls;
                }
            }
            truth.at(c, r) = cls;
        }
    }
}

void paint_roads(MaskRaster& truth, ClassIndex road, const SceneOptions& opt, Rng& rng) {
    const Grid& g = truth.grid();
    const auto n = static_cast<std::size_t>(
        std::max(1.0, std::round(std::sqrt(static_cast<double>(g.size())) / 128.0)));
    for (std::size_t i = 0; i < n; ++i) {
        const double px = rng.uniform(0.25, 0.75) * static_cast<double>(g.width);
        const double py = rng.uniform(0.25, 0.75) * static_cast<double>(g.height);
        const double angle = rng.uniform(0.0, std::numbers::pi);
        const double half =
            0.5 * static_cast<double>(opt.road_width_min +
                                      rng.uniform_index(opt.road_width_max - opt.road_width_min + 1));
        const double nx = -std::sin(angle), ny = std::cos(angle);
        for (std::size_t r = 0; r < g.height; ++r)
            for (std::size_t c = 0; c < g.width; ++c) {
                const double d = (static_cast<double>(c) + 0.5 - px) * nx + (static_cast<double>(r) + 0.5 - py) * ny;
                if (std::abs(d) <= half) truth.at(c, r) = road;
            }
    }
}

void paint_buildings(MaskRaster& truth, ClassIndex building, std::optional<ClassIndex> road,
                     const SceneOptions& opt, Rng& rng) {
    const Grid& g = truth.grid();
    const std::size_t spacing = std::max<std::size_t>(opt.building_spacing, 1);
    const std::size_t n = std::max<std::size_t>(1, g.size() / (spacing * spacing));
    const std::size_t span = opt.building_max - opt.building_min + 1;
    for (std::size_t i = 0, tries = 0; i < n && tries < 20 * n; ++tries) {
        const std::size_t bw = std::min(g.width, opt.building_min + rng.uniform_index(span));
        const std::size_t bh = std::min(g.height, opt.building_min + rng.uniform_index(span));
        const std::size_t c0 = rng.uniform_index(g.width - bw + 1);
        const std::size_t r0 = rng.uniform_index(g.height - bh + 1);
        bool clear = true;
        for (std::size_t r = r0; r < r0 + bh && clear; ++r)
            for (std::size_t c = c0; c < c0 + bw && clear; ++c)
                if (truth.at(c, r) == building || (road && truth.at(c, r) == *road)) clear = false;
        if (!clear) continue;
        for (std::size_t r = r0; r < r0 + bh; ++r)
            for (std::size_t c = c0; c < c0 + bw; ++c) truth.at(c, r) = building;
        ++i;
    }
}

/// Star-shaped polygon (possibly concave) around (cx, cy) with outer radius r.
LabelPolygon star(double cx, double cy, double r, ClassIndex cls, Rng& rng) {
    const std::size_t n = 4 + rng.uniform_index(5);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    LabelPolygon p;
    p.class_index = cls;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        const double rr = r * rng.uniform(0.5, 1.0);
        p.exterior.push_back({cx + rr * std::cos(a), cy + rr * std::sin(a)});
    }
    p.exterior = close_ring(p.exterior);
    return p;
}

std::vector<LabelPolygon> sparse_polygons(const MaskRaster& truth, const ClassScheme& scheme,
                                          const std::vector<ClassIndex>& classes, const SceneOptions& opt,
                                          Rng& rng) {
    const Grid& g = truth.grid();
    std::vector<std::vector<std::size_t>> pixels(scheme.size());
    for (std::size_t i = 0; i < truth.size(); ++i) pixels[truth.values()[i]].push_back(i);

    std::vector<ClassIndex> present;
    for (ClassIndex c : classes)
        if (!pixels[c].empty()) present.push_back(c);
    std::vector<LabelPolygon> out;
    if (present.empty()) return out;

    const auto target = static_cast<std::size_t>(opt.sparse_fraction * static_cast<double>(g.size()));
    std::vector<std::uint8_t> covered(g.size(), 0);
    std::size_t covered_count = 0;
    const std::size_t max_attempts = 200 + 50 * target;
    for (std::size_t attempt = 0; covered_count < target && attempt < max_attempts; ++attempt) {
        const ClassIndex cls = present[attempt % present.size()];
        const std::size_t pix = pixels[cls][rng.uniform_index(pixels[cls].size())];
        const auto col = static_cast<std::int64_t>(pix % g.width), row = static_cast<std::int64_t>(pix / g.width);
        const double cx = g.center_x(col), cy = g.center_y(row);
        double radius = g.res * rng.uniform(2.0, 10.0);
        const bool rect = rng.bernoulli(0.5);
        for (;;) {
            LabelPolygon poly;
            if (radius < g.res) {
                // Inset single-pixel square: always covers exactly this pixel.
                const double x0 = g.origin_x + static_cast<double>(col) * g.res;
                const double y1 = g.origin_y - static_cast<double>(row) * g.res;
                poly = rectangle(x0 + 0.1 * g.res, y1 - 0.9 * g.res, x0 + 0.9 * g.res, y1 - 0.1 * g.res, cls);
            } else if (rect) {
                poly = rectangle(cx - radius, cy - 0.6 * radius, cx + radius, cy + 0.6 * radius, cls);
            } else {
                poly = star(cx, cy, radius, cls, rng);
            }
            const MaskRaster burned = rasterize({poly}, g, scheme);
            bool ok = true;
            std::size_t fresh = 0, any = 0;
            for (std::size_t i = 0; i < burned.size() && ok; ++i) {
                if (burned.values()[i] == 0) continue;
                ++any;
                if (truth.values()[i] != cls) ok = false;
                fresh += covered[i] == 0;
            }
            if (ok && any > 0) {
                for (std::size_t i = 0; i < burned.size(); ++i)
                    if (burned.values()[i] != 0 && !covered[i]) {
                        covered[i] = 1;
                        ++covered_count;
                    }
                if (fresh > 0) out.push_back(std::move(poly));
                break;
            }
            if (radius < g.res) break;
            radius *= 0.5;
        }
    }
    return out;
}

}  // namespace

ClassMeans class_means(std::size_t classes, std::size_t bands) {
    if (classes == 0 || bands == 0) throw ValidationError("class_means needs classes and bands");
    ClassMeans m;
    if (bands == 1) {
        m.spacing = 1.0 / static_cast<double>(std::max<std::size_t>(classes - 1, 1));
        for (std::size_t k = 0; k < classes; ++k) m.mean.push_back({static_cast<double>(k) * m.spacing});
        return m;
    }
    std::size_t n = 1;
    while (binomial(n + bands - 1, bands - 1) < classes) ++n;
    std::vector<std::vector<std::size_t>> pts;
    std::vector<std::size_t> cur;
    compositions(n, bands, cur, pts, classes);
    for (const auto& p : pts) {
        std::vector<double> v;
        for (std::size_t x : p) v.push_back(static_cast<double>(x) / static_cast<double>(n));
        m.mean.push_back(std::move(v));
    }
    m.spacing = std::sqrt(2.0) / static_cast<double>(n);
    return m;
}

Scene gen_scene(std::uint64_t seed, const Grid& grid, std::size_t bands, const ClassScheme& scheme,
                double separability, const SceneOptions& options) {
    grid.validate();
    if (bands == 0) throw ValidationError("synthetic scene needs at least one band");
    if (!(separability > 0.0 && separability <= 1.0)) throw ValidationError("separability must lie in (0, 1]");
    if (options.building_min == 0 || options.building_min > options.building_max ||
        options.road_width_min == 0 || options.road_width_min > options.road_width_max)
        throw ValidationError("synthetic scene size ranges must be positive and ordered");
    if (!(options.sparse_fraction >= 0.0 && options.sparse_fraction <= 1.0))
        throw ValidationError("sparse_fraction must lie in [0, 1]");

    Layout l = layout(scheme);
    std::vector<ClassIndex> truth_classes = l.background;
    if (l.building) truth_classes.push_back(*l.building);
    if (l.road) truth_classes.push_back(*l.road);
    if (truth_classes.size() < 2) throw ValidationError("synthetic scene needs at least 2 non-negative classes");
    if (l.background.empty()) {  // only built classes: let them fill the background too
        l.background = truth_classes;
        l.building.reset();
        l.road.reset();
    }

    Scene s;
    s.truth = MaskRaster(grid);
    Rng layout_rng(derive_seed(seed, {1}));
    paint_background(s.truth, l, options, layout_rng);
    if (l.road) paint_roads(s.truth, *l.road, options, layout_rng);
    if (l.building) paint_buildings(s.truth, *l.building, l.road, options, layout_rng);

    std::sort(truth_classes.begin(), truth_classes.end());
    const ClassMeans means = class_means(truth_classes.size(), bands);
    std::vector<std::size_t> slot(scheme.size(), 0);
    for (std::size_t k = 0; k < truth_classes.size(); ++k) slot[truth_classes[k]] = k;
    const double sigma = (1.0 - separability) * means.spacing;

    s.image = BandRaster(grid, bands);
    Rng noise(derive_seed(seed, {2}));
    for (std::size_t b = 0; b < bands; ++b)
        for (std::size_t r = 0; r < grid.height; ++r)
            for (std::size_t c = 0; c < grid.width; ++c) {
                const double mu = means.mean[slot[s.truth.at(c, r)]][b];
                s.image.at(b, c, r) = static_cast<float>(mu + sigma * noise.normal());
            }

    Rng poly_rng(derive_seed(seed, {3}));
    s.polygons = sparse_polygons(s.truth, scheme, truth_classes, options, poly_rng);
    return s;
}

ScenePair gen_pair(std::uint64_t seed, const Grid& hi_res, std::size_t factor, std::size_t bands,
                   const ClassScheme& scheme, double separability, const SceneOptions& options) {
    if (factor < 2) throw ValidationError("gen_pair factor must be at least 2");
    hi_res.validate();
    Grid hi = hi_res;
    hi.width = hi.width / factor * factor;
    hi.height = hi.height / factor * factor;
    if (hi.width == 0 || hi.height == 0) {
        std::ostringstream os;
        os << "grid " << hi_res.width << "x" << hi_res.height << " is smaller than factor " << factor;
        throw ValidationError(os.str());
    }
    ScenePair p;
    p.hi = gen_scene(seed, hi, bands, scheme, separability, options);
    p.lo_truth = downsample_majority(p.hi.truth, factor, 0.5);
    p.lo_image = downsample_mean(p.hi.image, factor);
    return p;
}

}  // namespace lulc
