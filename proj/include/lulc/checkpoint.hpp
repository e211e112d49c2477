#pragma once

#include <filesystem>
#include <string>

#include "lulc/model.hpp"
#include "lulc/scheme.hpp"

namespace lulc {

/// Checkpoint container, little-endian:
///   bytes 0..7   magic "LULCCKP1"
///   bytes 8..11  uint32 header length H
///   bytes 12..   H bytes of JSON: format_version, spec {radius, hidden,
///                classes, bands, seed}, scheme, standardizer {mean, stddev},
///                parameter_count
///   then         parameter_count float32 values in parameters() order
struct Checkpoint {
    PixelClassifier model;
    ClassScheme scheme;
};

std::string encode_checkpoint(const PixelClassifier& model, const ClassScheme& scheme);
Checkpoint decode_checkpoint(const std::string& bytes);

void save_checkpoint(const std::filesystem::path& path, const PixelClassifier& model, const ClassScheme& scheme);
/// Throws ValidationError for a malformed or truncated file.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace lulc
