#include "lulc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/raster_io.hpp"

namespace lulc {

using nlohmann::json;

SplitExtents vertical_split(const Grid& grid, double train_fraction) {
    grid.validate();
    if (grid.width < 2) throw ValidationError("vertical split needs a grid at least 2 pixels wide");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ValidationError("train fraction must lie strictly between 0 and 1");
    auto split = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(grid.width)));
    split = std::clamp<std::size_t>(split, 1, grid.width - 1);
    return {{0, split, 0, grid.height}, {split, grid.width, 0, grid.height}};
}

json extent_to_json(const Extent& e) {
    return {{"col_begin", e.col_begin}, {"col_end", e.col_end}, {"row_begin", e.row_begin}, {"row_end", e.row_end}};
}

Extent extent_from_json(const json& j) {
    try {
        return {j.at("col_begin").get<std::size_t>(), j.at("col_end").get<std::size_t>(),
                j.at("row_begin").get<std::size_t>(), j.at("row_end").get<std::size_t>()};
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed extent: ") + e.what());
    }
}

void write_extent(const std::filesystem::path& path, const Extent& e) {
    write_file_bytes(path, extent_to_json(e).dump(1) + "\n");
}

Extent read_extent(const std::filesystem::path& path) {
    try {
        return extent_from_json(json::parse(read_file_bytes(path)));
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed extent file '" + path.string() + "': " + e.what());
    }
}

std::vector<Patch> sample_patches(const BandRaster& image, const MaskRaster& mask, const Extent& extent,
                                  std::size_t size, std::size_t count, std::uint64_t seed, std::size_t retry_cap) {
    if (!(image.grid() == mask.grid())) throw ValidationError("image and mask grids differ");
    validate_extent(mask.grid(), extent);
    if (size == 0) throw ValidationError("patch size must be positive");
    if (extent.width() < size || extent.height() < size) {
        std::ostringstream os;
        os << "extent " << extent.width() << "x" << extent.height() << " is smaller than patch size " << size;
        throw ValidationError(os.str());
    }

    // Integral image of labeled pixels over the extent.
    const std::size_t ew = extent.width(), eh = extent.height();
    std::vector<std::uint64_t> integral((ew + 1) * (eh + 1), 0);
    for (std::size_t r = 0; r < eh; ++r) {
        std::uint64_t row_sum = 0;
        for (std::size_t c = 0; c < ew; ++c) {
            row_sum += mask.at(extent.col_begin + c, extent.row_begin + r) != 0;
            integral[(r + 1) * (ew + 1) + c + 1] = integral[r * (ew + 1) + c + 1] + row_sum;
        }
    }
    if (integral.back() == 0) throw ValidationError("extent contains no labeled pixels");
    auto labeled_in = [&](std::size_t c, std::size_t r) {  // window anchored at extent-relative (c, r)
        return integral[(r + size) * (ew + 1) + c + size] - integral[r * (ew + 1) + c + size] -
               integral[(r + size) * (ew + 1) + c] + integral[r * (ew + 1) + c];
    };

    const std::size_t ncols = ew - size + 1, nrows = eh - size + 1;
    std::vector<std::size_t> valid;  // filled lazily for the exhaustive fallback
    bool enumerated = false;

    Rng rng(seed);
    std::vector<Patch> patches;
    patches.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        std::size_t ac = 0, ar = 0;
        bool found = false;
        for (std::size_t attempt = 0; attempt < retry_cap && !found; ++attempt) {
            ac = rng.uniform_index(ncols);
            ar = rng.uniform_index(nrows);
            found = labeled_in(ac, ar) > 0;
        }
        if (!found) {
            if (!enumerated) {
                for (std::size_t r = 0; r < nrows; ++r)
                    for (std::size_t c = 0; c < ncols; ++c)
                        if (labeled_in(c, r) > 0) valid.push_back(r * ncols + c);
                enumerated = true;
            }
            const std::size_t pick = valid[rng.uniform_index(valid.size())];
            ac = pick % ncols;
            ar = pick / ncols;
        }
        const Extent win{extent.col_begin + ac, extent.col_begin + ac + size, extent.row_begin + ar,
                         extent.row_begin + ar + size};
        patches.push_back({image.window(win), mask.window(win),
                           {static_cast<std::int64_t>(win.col_begin), static_cast<std::int64_t>(win.row_begin)}});
    }
    return patches;
}

AugmentDraw draw_augmentation(Rng& rng, double probability) {
    AugmentDraw d;
    d.rot90 = rng.bernoulli(probability);
    d.rot225 = rng.bernoulli(probability);
    d.hflip = rng.bernoulli(probability);
    d.vflip = rng.bernoulli(probability);
    return d;
}

namespace {

void require_square(const Patch& p) {
    if (p.mask.width() != p.mask.height() || !(p.image.grid() == p.mask.grid()))
        throw ValidationError("augmentation requires square, co-registered patches");
}

// dst(c, r) = src(map(c, r)) or 0 when map returns an out-of-range pixel.
template <typename Map>
Patch remap_pixels(const Patch& p, Map&& map) {
    const std::size_t s = p.mask.width();
    Patch out{BandRaster(p.image.grid(), p.image.bands()), MaskRaster(p.mask.grid()), p.anchor};
    out.image.nodata = p.image.nodata;
    for (std::size_t r = 0; r < s; ++r) {
        for (std::size_t c = 0; c < s; ++c) {
            const auto [sc, sr] = map(static_cast<std::int64_t>(c), static_cast<std::int64_t>(r));
            if (sc < 0 || sr < 0 || sc >= static_cast<std::int64_t>(s) || sr >= static_cast<std::int64_t>(s)) continue;
            const auto uc = static_cast<std::size_t>(sc), ur = static_cast<std::size_t>(sr);
            out.mask.at(c, r) = p.mask.at(uc, ur);
            for (std::size_t b = 0; b < p.image.bands(); ++b) out.image.at(b, c, r) = p.image.at(b, uc, ur);
        }
    }
    return out;
}

// Exact values at multiples of 90 degrees.
double snapped(double v) {
    for (double e : {-1.0, 0.0, 1.0})
        if (std::abs(v - e) < 1e-12) return e;
    return v;
}

}  // namespace

Patch rotate_patch(const Patch& patch, double degrees) {
    require_square(patch);
    const double rad = degrees * std::numbers::pi / 180.0;
    const double cs = snapped(std::cos(rad));
    const double sn = snapped(std::sin(rad));
    const double centre = (static_cast<double>(patch.mask.width()) - 1.0) / 2.0;
    // Counter-clockwise as displayed (rows grow downwards): inverse-map each
    // destination offset (u, v) to the source offset.
    return remap_pixels(patch, [&](std::int64_t c, std::int64_t r) {
        const double u = static_cast<double>(c) - centre;
        const double v = static_cast<double>(r) - centre;
        const double us = u * cs - v * sn;
        const double vs = u * sn + v * cs;
        return std::pair{static_cast<std::int64_t>(std::floor(us + centre + 0.5)),
                         static_cast<std::int64_t>(std::floor(vs + centre + 0.5))};
    });
}

Patch apply_augmentation(const Patch& patch, const AugmentDraw& draw) {
    require_square(patch);
    const auto last = static_cast<std::int64_t>(patch.mask.width()) - 1;
    Patch p = patch;
    if (draw.rot90) p = rotate_patch(p, 90.0);
    if (draw.rot225) p = rotate_patch(p, 225.0);
    if (draw.hflip) p = remap_pixels(p, [&](std::int64_t c, std::int64_t r) { return std::pair{last - c, r}; });
    if (draw.vflip) p = remap_pixels(p, [&](std::int64_t c, std::int64_t r) { return std::pair{c, last - r}; });
    return p;
}

Patch augment(const Patch& patch, Rng& rng) { return apply_augmentation(patch, draw_augmentation(rng)); }

WeightStrategy weight_strategy_from_string(std::string_view s) {
    if (iequals(s, "inverse_frequency")) return WeightStrategy::InverseFrequency;
    if (iequals(s, "uniform")) return WeightStrategy::Uniform;
    throw ValidationError("unknown class-weight strategy '" + std::string(s) + "'");
}

std::string_view to_string(WeightStrategy s) {
    return s == WeightStrategy::Uniform ? "uniform" : "inverse_frequency";
}

ClassWeights class_weights(const MaskRaster& mask, const ClassScheme& scheme, WeightStrategy strategy,
                           const Extent* extent) {
    const Extent ext = extent ? *extent : Extent::full(mask.grid());
    validate_extent(mask.grid(), ext);
    std::vector<std::uint64_t> counts(scheme.size(), 0);
    for (std::size_t r = ext.row_begin; r < ext.row_end; ++r) {
        for (std::size_t c = ext.col_begin; c < ext.col_end; ++c) {
            const ClassIndex v = mask.at(c, r);
            if (v >= scheme.size()) {
                std::ostringstream os;
                os << "pixel (col " << c << ", row " << r << ") has value " << int(v) << " outside scheme '"
                   << scheme.name() << "'";
                throw ValidationError(os.str());
            }
            ++counts[v];
        }
    }
    std::uint64_t total = 0;
    std::size_t present = 0;
    for (std::size_t k = 1; k < counts.size(); ++k) {
        total += counts[k];
        present += counts[k] > 0;
    }
    if (total == 0) throw ValidationError("class weights need at least one labeled pixel");

    ClassWeights w{std::vector<double>(scheme.size(), 1.0)};
    w.weight[0] = 0.0;
    if (strategy == WeightStrategy::InverseFrequency) {
        for (std::size_t k = 1; k < counts.size(); ++k)
            if (counts[k] > 0)
                w.weight[k] = static_cast<double>(total) /
                              (static_cast<double>(present) * static_cast<double>(counts[k]));
    }
    return w;
}

}  // namespace lulc
