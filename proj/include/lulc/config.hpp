#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lulc/model.hpp"

namespace lulc {

/// Settings shared by the command-line subcommands. Loaded from an INI file
/// with sections [paths] [scheme] [split] [train] [distill] [eval] [run];
/// command-line flags override file values.
struct PipelineConfig {
    // [paths]
    std::filesystem::path image, labels, mask, truth, extent, checkpoint, output_dir;
    // [scheme]
    std::string scheme = "teacher";
    // [split]
    double train_fraction = 0.7;
    // [train]
    TrainConfig train;
    std::size_t radius = 2;
    std::vector<std::size_t> hidden{64};
    std::size_t tile = 0;
    // [distill]
    std::size_t factor = 30;
    double min_coverage = 0.5;
    std::string distill_remap;
    int priority_manual = 3;
    int priority_osm = 2;
    int priority_pseudo = 1;
    // [eval]
    std::string set = "whole";
    std::string remap_pred;
    std::string remap_truth;
    // [run]
    std::uint64_t seed = 0;
    unsigned threads = 1;

    /// ModelSpec from radius/hidden/seed with the given class and band counts.
    ModelSpec model_spec(std::size_t classes, std::size_t bands) const;

    /// Fractions in (0, 1), thresholds in range, set one of whole|test|external,
    /// and every non-empty input path must exist. Throws ValidationError.
    void validate() const;
};

struct ConfigKey {
    std::string key;          ///< "section.name"
    std::string description;
};

/// Every recognised key, in section order.
const std::vector<ConfigKey>& config_keys();

/// Assigns one key from its text value; throws ValidationError for unknown
/// keys or unparsable values.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value);

/// Reads INI text; keys outside a known section or unknown to it are rejected.
void apply_ini(PipelineConfig& cfg, std::istream& in, const std::string& source = "config");
PipelineConfig load_config(const std::filesystem::path& path);

/// "key = value" lines for every key, grouped by section (round-trips through apply_ini).
std::string to_ini(const PipelineConfig& cfg);

}  // namespace lulc
