#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace lulc {

/// Paper-scale resolutions of the two imagery sources (m/pixel).
inline constexpr double kTeacherResolution = 0.331;
inline constexpr double kStudentResolution = 10.0;

struct PixelIndex {
    std::int64_t col = 0;
    std::int64_t row = 0;
    bool operator==(const PixelIndex&) const = default;
};

/// North-up grid with square pixels. Pixel (0,0) covers
/// [origin_x, origin_x + res) x (origin_y - res, origin_y].
struct Grid {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double res = 1.0;
    std::size_t width = 0;
    std::size_t height = 0;

    /// Throws ValidationError unless res > 0 and both dimensions are positive.
    void validate() const;

    std::size_t size() const { return width * height; }
    double area() const { return static_cast<double>(width) * static_cast<double>(height) * res * res; }
    double max_x() const { return origin_x + static_cast<double>(width) * res; }
    double min_y() const { return origin_y - static_cast<double>(height) * res; }

    double center_x(std::int64_t col) const { return origin_x + (static_cast<double>(col) + 0.5) * res; }
    double center_y(std::int64_t row) const { return origin_y - (static_cast<double>(row) + 0.5) * res; }

    bool contains(std::int64_t col, std::int64_t row) const {
        return col >= 0 && row >= 0 && col < static_cast<std::int64_t>(width) &&
               row < static_cast<std::int64_t>(height);
    }

    bool operator==(const Grid&) const = default;
};

/// Unbounded lattice index of the cell containing (x, y).
PixelIndex lattice_index(const Grid& grid, double x, double y);

/// Pixel containing (x, y), or nullopt when the point lies outside the grid.
std::optional<PixelIndex> world_to_pixel(const Grid& grid, double x, double y);

/// Half-open pixel window [col_begin, col_end) x [row_begin, row_end).
struct Extent {
    std::size_t col_begin = 0;
    std::size_t col_end = 0;
    std::size_t row_begin = 0;
    std::size_t row_end = 0;

    static Extent full(const Grid& g) { return {0, g.width, 0, g.height}; }

    std::size_t width() const { return col_end - col_begin; }
    std::size_t height() const { return row_end - row_begin; }
    std::size_t size() const { return width() * height(); }
    bool empty() const { return col_end <= col_begin || row_end <= row_begin; }
    bool contains(std::size_t col, std::size_t row) const {
        return col >= col_begin && col < col_end && row >= row_begin && row < row_end;
    }
    bool operator==(const Extent&) const = default;
};

/// Throws ValidationError if the extent is empty or exceeds the grid.
void validate_extent(const Grid& grid, const Extent& extent);

/// Sub-grid covering the given window of a parent grid.
Grid subgrid(const Grid& grid, const Extent& extent);

}  // namespace lulc
