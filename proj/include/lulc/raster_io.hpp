#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "lulc/raster.hpp"

namespace lulc {

/// Raster file formats. Both carry a north-up geotransform and a JSON metadata
/// header (kind, scheme name, first class index of probability planes).
///
/// Native container (any extension other than .tif/.tiff), little-endian:
///   bytes 0..7    magic "LULCRAS1"
///   bytes 8..11   uint32 header length H
///   bytes 12..    H bytes of UTF-8 JSON header
///   then          payload, band-sequential, each band row-major;
///                 uint8 for masks, float32 for images and probabilities.
///
/// GeoTIFF (.tif/.tiff): baseline uncompressed strips with ModelPixelScale and
/// ModelTiepoint tags; the JSON header is stored in ImageDescription.
enum class RasterFormat { Native, GeoTiff };

RasterFormat format_for_path(const std::filesystem::path& path);

struct MaskFile {
    MaskRaster mask;
    std::string scheme;  ///< empty when the file does not name one
};

struct ProbFile {
    ProbRaster probs;
    std::string scheme;
};

void write_mask(const std::filesystem::path& path, const MaskRaster& mask,
                const std::string& scheme = {});
MaskFile read_mask(const std::filesystem::path& path);

void write_image(const std::filesystem::path& path, const BandRaster& image);
BandRaster read_image(const std::filesystem::path& path);

void write_probs(const std::filesystem::path& path, const ProbRaster& probs,
                 const std::string& scheme = {});
ProbFile read_probs(const std::filesystem::path& path);

/// Grid of any raster file, read from its header only.
Grid read_grid(const std::filesystem::path& path);

/// In-memory encodings, byte-identical to what the writers put on disk.
std::string encode_mask(const MaskRaster& mask, const std::string& scheme, RasterFormat format);
std::string encode_image(const BandRaster& image, RasterFormat format);
std::string encode_probs(const ProbRaster& probs, const std::string& scheme, RasterFormat format);
MaskFile decode_mask(const std::string& bytes);
BandRaster decode_image(const std::string& bytes);
ProbFile decode_probs(const std::string& bytes);

/// Whole-file helpers shared by the other serializers.
std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::string& bytes);

}  // namespace lulc
