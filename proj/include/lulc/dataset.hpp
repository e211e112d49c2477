#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lulc/raster.hpp"
#include "lulc/rng.hpp"
#include "lulc/scheme.hpp"

namespace lulc {

inline constexpr double kDefaultTrainFraction = 0.7;

struct SplitExtents {
    Extent train;
    Extent test;
};

/// Column split at floor(train_fraction * width): train = [0, split),
/// test = [split, width), both over all rows. The split column is clamped to
/// [1, width - 1] so neither side is empty.
/// Throws ValidationError when width < 2 or the fraction is outside (0, 1).
SplitExtents vertical_split(const Grid& grid, double train_fraction);

nlohmann::json extent_to_json(const Extent& e);
Extent extent_from_json(const nlohmann::json& j);
void write_extent(const std::filesystem::path& path, const Extent& e);
Extent read_extent(const std::filesystem::path& path);

/// Co-anchored image and mask windows of size x size pixels.
struct Patch {
    BandRaster image;
    MaskRaster mask;
    PixelIndex anchor;  ///< top-left pixel in the parent grid
};

/// Draws `count` patches with anchors uniform over the valid positions inside
/// `extent`, rejecting windows without a labeled pixel. After `retry_cap`
/// consecutive rejections the sampler switches to uniform choice among the
/// enumerated valid anchors. Deterministic in `seed` (see Rng).
/// Throws ValidationError when the extent is smaller than the patch or holds
/// no labeled pixel.
std::vector<Patch> sample_patches(const BandRaster& image, const MaskRaster& mask, const Extent& extent,
                                  std::size_t size, std::size_t count, std::uint64_t seed,
                                  std::size_t retry_cap = 64);

/// Which transforms augment() applies; drawn in this order.
struct AugmentDraw {
    bool rot90 = false;
    bool rot225 = false;
    bool hflip = false;
    bool vflip = false;
};

inline constexpr double kAugmentProbability = 0.5;

/// Draws the four coin flips in fixed order (rot90, rot225, hflip, vflip).
AugmentDraw draw_augmentation(Rng& rng, double probability = kAugmentProbability);

/// Applies the drawn transforms in order: 90 degree counter-clockwise rotation,
/// 225 degree counter-clockwise rotation (nearest-neighbour about the patch
/// centre, out-of-support pixels become 0), horizontal flip (columns mirrored),
/// vertical flip (rows mirrored). Throws ValidationError for non-square patches.
Patch apply_augmentation(const Patch& patch, const AugmentDraw& draw);
Patch augment(const Patch& patch, Rng& rng);

/// Nearest-neighbour counter-clockwise rotation by `degrees` about the patch
/// centre. Right angles reduce to exact index permutations.
Patch rotate_patch(const Patch& patch, double degrees);

enum class WeightStrategy { InverseFrequency, Uniform };

WeightStrategy weight_strategy_from_string(std::string_view s);
std::string_view to_string(WeightStrategy s);

/// Per-class loss weights indexed by class; weight[0] is always 0.
struct ClassWeights {
    std::vector<double> weight;
    double operator[](ClassIndex c) const { return weight[c]; }
};

/// Inverse-frequency weights: total_labeled / (classes_present * count_c) for
/// present classes, 1 for absent ones, 0 for Unlabeled. Uniform gives 1 to
/// every labeled class. Throws ValidationError for an all-unlabeled mask.
ClassWeights class_weights(const MaskRaster& mask, const ClassScheme& scheme,
                           WeightStrategy strategy = WeightStrategy::InverseFrequency,
                           const Extent* extent = nullptr);

}  // namespace lulc
