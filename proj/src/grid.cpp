#include "lulc/grid.hpp"

#include <cmath>
#include <sstream>

#include "lulc/error.hpp"

namespace lulc {

void Grid::validate() const {
    if (!(res > 0.0) || !std::isfinite(res)) {
        std::ostringstream os;
        os << "grid resolution must be positive, got " << res;
        throw ValidationError(os.str());
    }
    if (width == 0 || height == 0) {
        std::ostringstream os;
        os << "grid dimensions must be positive, got " << width << "x" << height;
        throw ValidationError(os.str());
    }
    if (!std::isfinite(origin_x) || !std::isfinite(origin_y)) {
        throw ValidationError("grid origin must be finite");
    }
}

PixelIndex lattice_index(const Grid& grid, double x, double y) {
    return {static_cast<std::int64_t>(std::floor((x - grid.origin_x) / grid.res)),
            static_cast<std::int64_t>(std::floor((grid.origin_y - y) / grid.res))};
}

std::optional<PixelIndex> world_to_pixel(const Grid& grid, double x, double y) {
    const double fc = std::floor((x - grid.origin_x) / grid.res);
    const double fr = std::floor((grid.origin_y - y) / grid.res);
    if (!(fc >= 0.0) || !(fr >= 0.0) || fc >= static_cast<double>(grid.width) ||
        fr >= static_cast<double>(grid.height)) {
        return std::nullopt;
    }
    return PixelIndex{static_cast<std::int64_t>(fc), static_cast<std::int64_t>(fr)};
}

void validate_extent(const Grid& grid, const Extent& extent) {
    if (extent.empty() || extent.col_end > grid.width || extent.row_end > grid.height) {
        std::ostringstream os;
        os << "extent cols [" << extent.col_begin << "," << extent.col_end << ") rows ["
           << extent.row_begin << "," << extent.row_end << ") does not fit grid " << grid.width
           << "x" << grid.height;
        throw ValidationError(os.str());
    }
}

Grid subgrid(const Grid& grid, const Extent& extent) {
    validate_extent(grid, extent);
    return {grid.origin_x + static_cast<double>(extent.col_begin) * grid.res,
            grid.origin_y - static_cast<double>(extent.row_begin) * grid.res, grid.res,
            extent.width(), extent.height()};
}

}  // namespace lulc
