#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lulc/grid.hpp"

namespace lulc::detail {

enum class SampleType { UInt8, Float32 };

/// Format-neutral raster payload used by the native and GeoTIFF codecs.
struct RasterFile {
    Grid grid;
    std::size_t bands = 1;
    SampleType type = SampleType::UInt8;
    std::vector<std::uint8_t> u8;  ///< used when type == UInt8
    std::vector<float> f32;        ///< used when type == Float32
    std::optional<double> nodata;
    nlohmann::json meta = nlohmann::json::object();
};

std::string encode_geotiff(const RasterFile& file);
RasterFile decode_geotiff(const std::string& bytes);

bool looks_like_tiff(const std::string& bytes);

}  // namespace lulc::detail
