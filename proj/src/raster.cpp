#include "lulc/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/parallel.hpp"

namespace lulc {

BandRaster::BandRaster(Grid grid, std::size_t bands, float fill)
    : grid_(grid), bands_(bands), values_(bands * grid.size(), fill) {
    grid_.validate();
    if (bands == 0) throw ValidationError("band raster needs at least one band");
}

BandRaster::BandRaster(Grid grid, std::size_t bands, std::vector<float> values)
    : grid_(grid), bands_(bands), values_(std::move(values)) {
    grid_.validate();
    if (bands == 0) throw ValidationError("band raster needs at least one band");
    if (values_.size() != bands * grid_.size()) {
        std::ostringstream os;
        os << "band raster expects " << bands * grid_.size() << " values, got " << values_.size();
        throw ValidationError(os.str());
    }
}

BandRaster BandRaster::window(const Extent& extent) const {
    BandRaster out(subgrid(grid_, extent), bands_);
    out.nodata = nodata;
    for (std::size_t b = 0; b < bands_; ++b)
        for (std::size_t r = 0; r < extent.height(); ++r)
            for (std::size_t c = 0; c < extent.width(); ++c)
                out.at(b, c, r) = at(b, extent.col_begin + c, extent.row_begin + r);
    return out;
}

MaskRaster::MaskRaster(Grid grid, ClassIndex fill) : grid_(grid), values_(grid.size(), fill) {
    grid_.validate();
}

MaskRaster::MaskRaster(Grid grid, std::vector<ClassIndex> values)
    : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.size()) {
        std::ostringstream os;
        os << "mask expects " << grid_.size() << " values, got " << values_.size();
        throw ValidationError(os.str());
    }
}

MaskRaster MaskRaster::window(const Extent& extent) const {
    MaskRaster out(subgrid(grid_, extent));
    for (std::size_t r = 0; r < extent.height(); ++r)
        for (std::size_t c = 0; c < extent.width(); ++c)
            out.at(c, r) = at(extent.col_begin + c, extent.row_begin + r);
    return out;
}

ClassIndex MaskRaster::max_value() const {
    return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

ProbRaster::ProbRaster(Grid grid, std::size_t classes)
    : grid_(grid), classes_(classes), values_(classes * grid.size(), 0.0f) {
    grid_.validate();
    if (classes == 0) throw ValidationError("probability raster needs at least one class");
}

MaskRaster ProbRaster::argmax(double min_confidence) const {
    MaskRaster out(grid_);
    const std::size_t n = grid_.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        float best_p = values_[i];
        for (std::size_t k = 1; k < classes_; ++k) {
            const float p = values_[k * n + i];
            if (p > best_p) {
                best_p = p;
                best = k;
            }
        }
        out.values()[i] = best_p >= min_confidence ? class_of_plane(best) : 0;
    }
    return out;
}

MaskRaster resample_nearest(const MaskRaster& src, const Grid& target) {
    target.validate();
    MaskRaster out(target);
    const Grid& sg = src.grid();
    if (sg == target) return src;
    parallel::for_chunks(target.height, 64, [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            const double y = target.center_y(static_cast<std::int64_t>(r));
            for (std::size_t c = 0; c < target.width; ++c) {
                const auto px = world_to_pixel(sg, target.center_x(static_cast<std::int64_t>(c)), y);
                if (px) out.at(c, r) = src.at(static_cast<std::size_t>(px->col), static_cast<std::size_t>(px->row));
            }
        }
    });
    return out;
}

MaskRaster downsample_majority(const MaskRaster& src, std::size_t factor, double min_coverage) {
    if (factor == 0) throw ValidationError("downsample factor must be at least 1");
    if (!(min_coverage >= 0.0 && min_coverage <= 1.0))
        throw ValidationError("min_coverage must lie in [0, 1]");
    const Grid& sg = src.grid();
    const std::size_t ow = sg.width / factor;
    const std::size_t oh = sg.height / factor;
    if (ow == 0 || oh == 0) {
        std::ostringstream os;
        os << "downsample factor " << factor << " exceeds mask size " << sg.width << "x" << sg.height;
        throw ValidationError(os.str());
    }
    const Grid og{sg.origin_x, sg.origin_y, sg.res * static_cast<double>(factor), ow, oh};
    MaskRaster out(og);
    const std::size_t block = factor * factor;
    parallel::for_chunks(oh, 16, [&](std::size_t r0, std::size_t r1) {
        std::array<std::size_t, 256> counts{};
        for (std::size_t orow = r0; orow < r1; ++orow) {
            for (std::size_t ocol = 0; ocol < ow; ++ocol) {
                counts.fill(0);
                std::size_t labeled = 0;
                for (std::size_t dr = 0; dr < factor; ++dr) {
                    for (std::size_t dc = 0; dc < factor; ++dc) {
                        const ClassIndex v = src.at(ocol * factor + dc, orow * factor + dr);
                        if (v != 0) {
                            ++counts[v];
                            ++labeled;
                        }
                    }
                }
                if (labeled == 0 ||
                    static_cast<double>(labeled) < min_coverage * static_cast<double>(block)) {
                    continue;
                }
                std::size_t best = 1;
                for (std::size_t k = 2; k < counts.size(); ++k)
                    if (counts[k] > counts[best]) best = k;
                out.at(ocol, orow) = static_cast<ClassIndex>(best);
            }
        }
    });
    return out;
}

BandRaster downsample_mean(const BandRaster& src, std::size_t factor) {
    if (factor == 0) throw ValidationError("downsample factor must be at least 1");
    const Grid& sg = src.grid();
    const std::size_t ow = sg.width / factor;
    const std::size_t oh = sg.height / factor;
    if (ow == 0 || oh == 0) throw ValidationError("downsample factor exceeds raster size");
    BandRaster out({sg.origin_x, sg.origin_y, sg.res * static_cast<double>(factor), ow, oh},
                   src.bands());
    out.nodata = src.nodata;
    const double inv = 1.0 / static_cast<double>(factor * factor);
    for (std::size_t b = 0; b < src.bands(); ++b) {
        for (std::size_t orow = 0; orow < oh; ++orow) {
            for (std::size_t ocol = 0; ocol < ow; ++ocol) {
                double sum = 0.0;
                for (std::size_t dr = 0; dr < factor; ++dr)
                    for (std::size_t dc = 0; dc < factor; ++dc)
                        sum += src.at(b, ocol * factor + dc, orow * factor + dr);
                out.at(b, ocol, orow) = static_cast<float>(sum * inv);
            }
        }
    }
    return out;
}

}  // namespace lulc
