#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lulc/dataset.hpp"
#include "lulc/raster.hpp"

namespace lulc {

/// Shape of the reference windowed pixel classifier: the (2r+1)^2 window of
/// every band feeds a ReLU multilayer perceptron with a softmax output over
/// `classes` labeled classes (output k is class index k + 1).
struct ModelSpec {
    std::size_t radius = 2;
    std::vector<std::size_t> hidden{64};
    std::size_t classes = 2;
    std::size_t bands = 1;
    std::uint64_t seed = 0;

    /// Throws ValidationError unless classes >= 2 and bands >= 1.
    void validate() const;
    std::size_t window() const { return 2 * radius + 1; }
    std::size_t input_size() const { return bands * window() * window(); }
    std::size_t parameter_count() const;

    bool operator==(const ModelSpec&) const = default;
};

/// Per-band standardization (x - mean) / stddev; stddev is 1 for constant bands.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    static Standardizer identity(std::size_t bands);
    static Standardizer fit(const BandRaster& image, const Extent& extent);

    bool operator==(const Standardizer&) const = default;
};

class PixelClassifier {
public:
    PixelClassifier() = default;
    /// All weights and biases zero (uniform output).
    explicit PixelClassifier(ModelSpec spec);
    /// He-normal weights and zero biases drawn from spec.seed.
    static PixelClassifier initialized(ModelSpec spec);

    const ModelSpec& spec() const { return spec_; }
    std::vector<double>& parameters() { return params_; }
    const std::vector<double>& parameters() const { return params_; }
    Standardizer& standardizer() { return standardizer_; }
    const Standardizer& standardizer() const { return standardizer_; }

    /// Row-major window of standardized band values around (col, row), each
    /// window cell contributing all bands in order; edges are clamped.
    void featurize(const BandRaster& image, std::size_t col, std::size_t row, std::span<double> out) const;
    std::vector<double> featurize(const BandRaster& image, std::size_t col, std::size_t row) const;

    /// Class probabilities for one feature vector. Throws ValidationError on a
    /// length mismatch.
    std::vector<double> forward(std::span<const double> features) const;

    /// Rounds every parameter to float precision (the checkpoint precision).
    void round_to_float();

    bool operator==(const PixelClassifier&) const = default;

private:
    friend struct ModelKernels;
    ModelSpec spec_{};
    Standardizer standardizer_{};
    std::vector<double> params_;
};

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

struct MaskedLoss {
    double value = 0.0;
    double weight_sum = 0.0;
    std::size_t labeled = 0;
    bool skipped = false;  ///< no labeled pixel: value is 0 and must not be used
};

/// Weighted cross-entropy over labeled pixels, normalized by summed weights:
/// sum(w_y * -log p_y) / sum(w_y). `probs` is pixel-major, `classes` entries
/// per pixel with entry k for class index k + 1. Pixels with mask 0 are ignored.
MaskedLoss masked_loss(std::span<const double> probs, std::span<const ClassIndex> mask,
                       const ClassWeights& weights, std::size_t classes);

/// Masked loss of the model over a batch of patches and its gradient with
/// respect to every parameter (same order as parameters()).
struct LossGradient {
    MaskedLoss loss;
    std::vector<double> gradient;
};

LossGradient loss_and_gradient(const PixelClassifier& model, std::span<const Patch> patches,
                               const ClassWeights& weights);

/// Training protocol; defaults are the published full-scale setup.
struct TrainConfig {
    double learning_rate = 0.0003;
    std::size_t batch_size = 32;
    std::size_t min_epochs = 100;
    std::size_t max_epochs = 300;
    std::size_t patch_size = 512;
    std::size_t rounds = 2;
    std::size_t patience = 10;
    /// Optimizer steps per epoch; 0 picks extent_pixels / (batch * patch^2), at least 1.
    std::size_t steps_per_epoch = 0;
    std::uint64_t seed = 0;
    WeightStrategy weights = WeightStrategy::InverseFrequency;
    bool augment = true;
    /// Minimum confidence for a pseudo-label in recursive rounds.
    double pseudo_label_threshold = 0.9;

    /// Throws ValidationError on inconsistent settings.
    void validate() const;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double mean_loss = 0.0;
    std::uint64_t labeled_pixels = 0;
};

struct TrainingLog {
    std::vector<EpochRecord> epochs;
    std::string stop_reason;
    /// CSV with header "epoch,mean_loss,labeled_pixel_count".
    std::string to_csv() const;
};

struct TrainResult {
    PixelClassifier model;
    TrainingLog log;
};

/// Mini-batch gradient descent on sampled, augmented patches of `extent`.
/// Stops at max_epochs, or once the epoch loss has not improved for `patience`
/// epochs after min_epochs. Final parameters are rounded to float precision.
/// Throws ProcessingError naming the epoch if the loss becomes non-finite.
TrainResult train(const BandRaster& image, const MaskRaster& mask, const Extent& extent, const ModelSpec& spec,
                  const TrainConfig& config);

/// Per-pixel probabilities for the whole image. `tile` > 0 evaluates in
/// tile x tile blocks; the result is bitwise identical for any tiling.
ProbRaster predict(const PixelClassifier& model, const BandRaster& image, std::size_t tile = 0);

/// Training mask for a pseudo-label round: manual labels where present,
/// otherwise the argmax class of `probs` if its probability reaches
/// `threshold`; pixels outside `extent` keep the manual mask.
MaskRaster pseudo_label_mask(const MaskRaster& manual, const ProbRaster& probs, const Extent& extent,
                             double threshold);

struct RecursiveResult {
    PixelClassifier model;
    std::vector<TrainingLog> logs;         ///< one per round
    std::vector<MaskRaster> round_masks;   ///< training mask used in each round
    std::vector<PixelClassifier> round_models;
};

/// Round 1 trains on `mask`; each later round retrains a freshly initialized
/// model on pseudo_label_mask(mask, predict(previous model)).
RecursiveResult recursive_train(const BandRaster& image, const MaskRaster& mask, const Extent& extent,
                                const ModelSpec& spec, const TrainConfig& config);

}  // namespace lulc
