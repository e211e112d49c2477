#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lulc/grid.hpp"

namespace lulc {

using ClassIndex = std::uint8_t;

/// Multi-band image, stored band-sequential: value(b, col, row) lives at
/// b * width * height + row * width + col.
class BandRaster {
public:
    BandRaster() = default;
    BandRaster(Grid grid, std::size_t bands, float fill = 0.0f);
    BandRaster(Grid grid, std::size_t bands, std::vector<float> values);

    const Grid& grid() const { return grid_; }
    std::size_t bands() const { return bands_; }
    std::size_t width() const { return grid_.width; }
    std::size_t height() const { return grid_.height; }

    float at(std::size_t band, std::size_t col, std::size_t row) const {
        return values_[band * grid_.size() + row * grid_.width + col];
    }
    float& at(std::size_t band, std::size_t col, std::size_t row) {
        return values_[band * grid_.size() + row * grid_.width + col];
    }
    std::span<const float> band(std::size_t b) const {
        return {values_.data() + b * grid_.size(), grid_.size()};
    }
    std::span<float> band(std::size_t b) { return {values_.data() + b * grid_.size(), grid_.size()}; }

    const std::vector<float>& values() const { return values_; }
    std::vector<float>& values() { return values_; }

    std::optional<double> nodata;

    /// Copy of a pixel window; the result's grid is the matching sub-grid.
    BandRaster window(const Extent& extent) const;

    bool operator==(const BandRaster&) const = default;

private:
    Grid grid_{};
    std::size_t bands_ = 0;
    std::vector<float> values_;
};

/// Single-band class-index raster; 0 means unlabeled.
class MaskRaster {
public:
    MaskRaster() = default;
    explicit MaskRaster(Grid grid, ClassIndex fill = 0);
    MaskRaster(Grid grid, std::vector<ClassIndex> values);

    const Grid& grid() const { return grid_; }
    std::size_t width() const { return grid_.width; }
    std::size_t height() const { return grid_.height; }
    std::size_t size() const { return values_.size(); }

    ClassIndex at(std::size_t col, std::size_t row) const { return values_[row * grid_.width + col]; }
    ClassIndex& at(std::size_t col, std::size_t row) { return values_[row * grid_.width + col]; }

    const std::vector<ClassIndex>& values() const { return values_; }
    std::vector<ClassIndex>& values() { return values_; }

    MaskRaster window(const Extent& extent) const;

    /// Largest value present (0 for an empty or all-unlabeled mask).
    ClassIndex max_value() const;

    bool operator==(const MaskRaster&) const = default;

private:
    Grid grid_{};
    std::vector<ClassIndex> values_;
};

/// Per-pixel class probabilities. Plane p holds the probability of class
/// index p + 1; the unlabeled index 0 never receives probability mass.
class ProbRaster {
public:
    ProbRaster() = default;
    ProbRaster(Grid grid, std::size_t classes);

    const Grid& grid() const { return grid_; }
    std::size_t classes() const { return classes_; }

    static constexpr ClassIndex class_of_plane(std::size_t plane) {
        return static_cast<ClassIndex>(plane + 1);
    }

    float at(std::size_t plane, std::size_t col, std::size_t row) const {
        return values_[plane * grid_.size() + row * grid_.width + col];
    }
    float& at(std::size_t plane, std::size_t col, std::size_t row) {
        return values_[plane * grid_.size() + row * grid_.width + col];
    }

    const std::vector<float>& values() const { return values_; }
    std::vector<float>& values() { return values_; }

    /// Argmax class per pixel (lowest class index wins ties), optionally
    /// zeroed where the winning probability is below min_confidence.
    MaskRaster argmax(double min_confidence = 0.0) const;

    bool operator==(const ProbRaster&) const = default;

private:
    Grid grid_{};
    std::size_t classes_ = 0;
    std::vector<float> values_;
};

/// Nearest-neighbour resample: every target pixel takes the class of the
/// source pixel containing its centre, 0 when the centre falls outside.
MaskRaster resample_nearest(const MaskRaster& src, const Grid& target);

inline constexpr double kDefaultMinCoverage = 0.5;

/// Block-majority reduction by an integer factor. Each output pixel takes the
/// most frequent nonzero class of its factor x factor block (lowest index on
/// ties) when nonzero pixels cover at least min_coverage of the block, else 0.
/// Trailing partial blocks are dropped.
MaskRaster downsample_majority(const MaskRaster& src, std::size_t factor,
                               double min_coverage = kDefaultMinCoverage);

/// Block mean of every band; trailing partial blocks are dropped.
BandRaster downsample_mean(const BandRaster& src, std::size_t factor);

}  // namespace lulc
