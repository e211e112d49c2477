#include "lulc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/parallel.hpp"
#include "lulc/rng.hpp"

namespace lulc {

void ModelSpec::validate() const {
    if (classes < 2) throw ValidationError("model needs at least 2 classes");
    if (bands < 1) throw ValidationError("model needs at least 1 band");
    for (std::size_t h : hidden)
        if (h == 0) throw ValidationError("hidden layer widths must be positive");
}

std::size_t ModelSpec::parameter_count() const {
    std::size_t n = 0, in = input_size();
    for (std::size_t h : hidden) {
        n += h * in + h;
        in = h;
    }
    return n + classes * in + classes;
}

Standardizer Standardizer::identity(std::size_t bands) {
    return {std::vector<double>(bands, 0.0), std::vector<double>(bands, 1.0)};
}

Standardizer Standardizer::fit(const BandRaster& image, const Extent& extent) {
    validate_extent(image.grid(), extent);
    Standardizer s = identity(image.bands());
    const auto n = static_cast<double>(extent.size());
    for (std::size_t b = 0; b < image.bands(); ++b) {
        double sum = 0.0;
        for (std::size_t r = extent.row_begin; r < extent.row_end; ++r)
            for (std::size_t c = extent.col_begin; c < extent.col_end; ++c) sum += image.at(b, c, r);
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t r = extent.row_begin; r < extent.row_end; ++r)
            for (std::size_t c = extent.col_begin; c < extent.col_end; ++c) {
                const double d = image.at(b, c, r) - mean;
                ss += d * d;
            }
        const double sd = std::sqrt(ss / n);
        s.mean[b] = mean;
        s.stddev[b] = sd > 1e-12 ? sd : 1.0;
    }
    return s;
}

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> p(logits.begin(), logits.end());
    const double mx = *std::max_element(p.begin(), p.end());
    double sum = 0.0;
    for (double& v : p) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
}

// Forward/backward passes over the flat parameter vector. Layer l stores its
// weight matrix (out x in, row-major) followed by its bias vector.
struct ModelKernels {
    struct Layer {
        std::size_t in, out, w_offset, b_offset;
    };

    static std::vector<Layer> layers(const ModelSpec& spec) {
        std::vector<Layer> ls;
        std::size_t in = spec.input_size(), off = 0;
        auto add = [&](std::size_t out) {
            ls.push_back({in, out, off, off + out * in});
            off += out * in + out;
            in = out;
        };
        for (std::size_t h : spec.hidden) add(h);
        add(spec.classes);
        return ls;
    }

    /// Scratch space reused across pixels.
    struct Workspace {
        std::vector<std::vector<double>> pre;   // pre-activations per layer
        std::vector<std::vector<double>> act;   // act[0] = input, act[l+1] = relu(pre[l])
        std::vector<double> delta, delta_prev;
        std::vector<double> features;

        explicit Workspace(const std::vector<Layer>& ls) {
            act.emplace_back(ls.front().in);
            for (const Layer& l : ls) {
                pre.emplace_back(l.out);
                act.emplace_back(l.out);
            }
            features.resize(ls.front().in);
        }
    };

    /// Fills ws.pre/act from ws.act[0]; returns log-sum-exp of the logits.
    static double forward(const std::vector<double>& params, const std::vector<Layer>& ls, Workspace& ws) {
        for (std::size_t li = 0; li < ls.size(); ++li) {
            const Layer& l = ls[li];
            const std::vector<double>& x = ws.act[li];
            std::vector<double>& z = ws.pre[li];
            for (std::size_t o = 0; o < l.out; ++o) {
                const double* w = params.data() + l.w_offset + o * l.in;
                double s = params[l.b_offset + o];
                for (std::size_t i = 0; i < l.in; ++i) s += w[i] * x[i];
                z[o] = s;
            }
            std::vector<double>& a = ws.act[li + 1];
            const bool last = li + 1 == ls.size();
            for (std::size_t o = 0; o < l.out; ++o) a[o] = last ? z[o] : std::max(0.0, z[o]);
        }
        const std::vector<double>& logits = ws.pre.back();
        const double mx = *std::max_element(logits.begin(), logits.end());
        double sum = 0.0;
        for (double v : logits) sum += std::exp(v - mx);
        return mx + std::log(sum);
    }

    /// Accumulates d(weight * nll)/d(params) into grad for target output k.
    static void backward(const std::vector<double>& params, const std::vector<Layer>& ls, Workspace& ws,
                         double lse, std::size_t target, double weight, std::vector<double>& grad) {
        const std::vector<double>& logits = ws.pre.back();
        ws.delta.assign(logits.size(), 0.0);
        for (std::size_t k = 0; k < logits.size(); ++k)
            ws.delta[k] = weight * (std::exp(logits[k] - lse) - (k == target ? 1.0 : 0.0));
        for (std::size_t li = ls.size(); li-- > 0;) {
            const Layer& l = ls[li];
            const std::vector<double>& x = ws.act[li];
            for (std::size_t o = 0; o < l.out; ++o) {
                const double d = ws.delta[o];
                if (d == 0.0) continue;
                double* g = grad.data() + l.w_offset + o * l.in;
                for (std::size_t i = 0; i < l.in; ++i) g[i] += d * x[i];
                grad[l.b_offset + o] += d;
            }
            if (li == 0) break;
            ws.delta_prev.assign(l.in, 0.0);
            for (std::size_t o = 0; o < l.out; ++o) {
                const double d = ws.delta[o];
                if (d == 0.0) continue;
                const double* w = params.data() + l.w_offset + o * l.in;
                for (std::size_t i = 0; i < l.in; ++i) ws.delta_prev[i] += d * w[i];
            }
            const std::vector<double>& zprev = ws.pre[li - 1];
            for (std::size_t i = 0; i < l.in; ++i)
                if (zprev[i] <= 0.0) ws.delta_prev[i] = 0.0;
            std::swap(ws.delta, ws.delta_prev);
        }
    }

    struct PatchSums {
        double numerator = 0.0;
        double weight_sum = 0.0;
        std::size_t labeled = 0;
        std::vector<double> grad;
    };

    static PatchSums patch_sums(const PixelClassifier& model, const std::vector<Layer>& ls, const Patch& patch,
                                const ClassWeights& weights, bool with_grad) {
        PatchSums s;
        if (with_grad) s.grad.assign(model.params_.size(), 0.0);
        Workspace ws(ls);
        const MaskRaster& mask = patch.mask;
        const std::size_t classes = model.spec_.classes;
        for (std::size_t r = 0; r < mask.height(); ++r) {
            for (std::size_t c = 0; c < mask.width(); ++c) {
                const ClassIndex y = mask.at(c, r);
                if (y == 0) continue;
                if (y > classes) {
                    std::ostringstream os;
                    os << "label " << int(y) << " exceeds model class count " << classes;
                    throw ValidationError(os.str());
                }
                const double w = weights[y];
                model.featurize(patch.image, c, r, ws.act[0]);
                const double lse = forward(model.params_, ls, ws);
                const std::size_t target = y - 1u;
                s.numerator += w * (lse - ws.pre.back()[target]);
                s.weight_sum += w;
                ++s.labeled;
                if (with_grad && w != 0.0) backward(model.params_, ls, ws, lse, target, w, s.grad);
            }
        }
        return s;
    }
};

PixelClassifier::PixelClassifier(ModelSpec spec)
    : spec_(std::move(spec)), standardizer_(Standardizer::identity(spec_.bands)) {
    spec_.validate();
    params_.assign(spec_.parameter_count(), 0.0);
}

PixelClassifier PixelClassifier::initialized(ModelSpec spec) {
    PixelClassifier m(std::move(spec));
    Rng rng(derive_seed(m.spec_.seed, {0x1417}));
    for (const auto& l : ModelKernels::layers(m.spec_)) {
        const double sd = std::sqrt(2.0 / static_cast<double>(l.in));
        for (std::size_t i = 0; i < l.out * l.in; ++i) m.params_[l.w_offset + i] = sd * rng.normal();
    }
    return m;
}

void PixelClassifier::featurize(const BandRaster& image, std::size_t col, std::size_t row,
                                std::span<double> out) const {
    if (image.bands() != spec_.bands || out.size() != spec_.input_size())
        throw ValidationError("featurize: band count or output length does not match the model");
    const auto r = static_cast<std::int64_t>(spec_.radius);
    const auto w = static_cast<std::int64_t>(image.width());
    const auto h = static_cast<std::int64_t>(image.height());
    std::size_t k = 0;
    for (std::int64_t dr = -r; dr <= r; ++dr) {
        const auto rr = static_cast<std::size_t>(std::clamp<std::int64_t>(static_cast<std::int64_t>(row) + dr, 0, h - 1));
        for (std::int64_t dc = -r; dc <= r; ++dc) {
            const auto cc = static_cast<std::size_t>(std::clamp<std::int64_t>(static_cast<std::int64_t>(col) + dc, 0, w - 1));
            for (std::size_t b = 0; b < spec_.bands; ++b)
                out[k++] = (image.at(b, cc, rr) - standardizer_.mean[b]) / standardizer_.stddev[b];
        }
    }
}

std::vector<double> PixelClassifier::featurize(const BandRaster& image, std::size_t col, std::size_t row) const {
    std::vector<double> out(spec_.input_size());
    featurize(image, col, row, out);
    return out;
}

std::vector<double> PixelClassifier::forward(std::span<const double> features) const {
    if (features.size() != spec_.input_size()) {
        std::ostringstream os;
        os << "forward: expected " << spec_.input_size() << " features, got " << features.size();
        throw ValidationError(os.str());
    }
    const auto ls = ModelKernels::layers(spec_);
    ModelKernels::Workspace ws(ls);
    std::copy(features.begin(), features.end(), ws.act[0].begin());
    const double lse = ModelKernels::forward(params_, ls, ws);
    std::vector<double> p(spec_.classes);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::exp(ws.pre.back()[k] - lse);
    return p;
}

void PixelClassifier::round_to_float() {
    for (double& p : params_) p = static_cast<double>(static_cast<float>(p));
}

MaskedLoss masked_loss(std::span<const double> probs, std::span<const ClassIndex> mask, const ClassWeights& weights,
                       std::size_t classes) {
    if (probs.size() != mask.size() * classes) throw ValidationError("masked_loss: probability/mask shape mismatch");
    MaskedLoss out;
    double numerator = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const ClassIndex y = mask[i];
        if (y == 0) continue;
        if (y > classes) throw ValidationError("masked_loss: label exceeds class count");
        const double w = weights[y];
        numerator += w * -std::log(probs[i * classes + (y - 1u)]);
        out.weight_sum += w;
        ++out.labeled;
    }
    if (out.labeled == 0 || out.weight_sum == 0.0) {
        out.skipped = true;
        return out;
    }
    out.value = numerator / out.weight_sum;
    return out;
}

LossGradient loss_and_gradient(const PixelClassifier& model, std::span<const Patch> patches,
                               const ClassWeights& weights) {
    const auto ls = ModelKernels::layers(model.spec());
    std::vector<ModelKernels::PatchSums> sums(patches.size());
    parallel::for_chunks(patches.size(), 1, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) sums[i] = ModelKernels::patch_sums(model, ls, patches[i], weights, true);
    });
    LossGradient out;
    out.gradient.assign(model.parameters().size(), 0.0);
    double numerator = 0.0;
    for (const auto& s : sums) {  // fixed order: identical for any thread count
        numerator += s.numerator;
        out.loss.weight_sum += s.weight_sum;
        out.loss.labeled += s.labeled;
        for (std::size_t k = 0; k < s.grad.size(); ++k) out.gradient[k] += s.grad[k];
    }
    if (out.loss.labeled == 0 || out.loss.weight_sum == 0.0) {
        out.loss.skipped = true;
        std::fill(out.gradient.begin(), out.gradient.end(), 0.0);
        return out;
    }
    out.loss.value = numerator / out.loss.weight_sum;
    for (double& g : out.gradient) g /= out.loss.weight_sum;
    return out;
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ValidationError("learning_rate must be > 0");
    if (batch_size == 0) throw ValidationError("batch_size must be positive");
    if (patch_size == 0) throw ValidationError("patch_size must be positive");
    if (max_epochs == 0) throw ValidationError("max_epochs must be positive");
    if (min_epochs > max_epochs) throw ValidationError("min_epochs must not exceed max_epochs");
    if (rounds < 1) throw ValidationError("rounds must be at least 1");
    if (!(pseudo_label_threshold >= 0.0)) throw ValidationError("pseudo_label_threshold must be >= 0");
}

std::string TrainingLog::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "epoch,mean_loss,labeled_pixel_count\n";
    for (const auto& e : epochs) os << e.epoch << ',' << e.mean_loss << ',' << e.labeled_pixels << '\n';
    return os.str();
}

TrainResult train(const BandRaster& image, const MaskRaster& mask, const Extent& extent, const ModelSpec& spec,
                  const TrainConfig& config) {
    config.validate();
    spec.validate();
    if (!(image.grid() == mask.grid())) throw ValidationError("train: image and mask grids differ");
    if (image.bands() != spec.bands) throw ValidationError("train: image band count does not match the model");
    validate_extent(mask.grid(), extent);
    if (mask.max_value() > spec.classes) throw ValidationError("train: mask holds classes beyond the model");

    ClassScheme weight_scheme("model", [&] {
        std::vector<std::string> names;
        for (std::size_t k = 1; k <= spec.classes; ++k) names.push_back("c" + std::to_string(k));
        return names;
    }());
    const ClassWeights weights = class_weights(mask, weight_scheme, config.weights, &extent);

    TrainResult result{PixelClassifier::initialized(spec), {}};
    PixelClassifier& model = result.model;
    model.standardizer() = Standardizer::fit(image, extent);

    const std::size_t patch = std::min({config.patch_size, extent.width(), extent.height()});
    const std::size_t steps =
        config.steps_per_epoch > 0
            ? config.steps_per_epoch
            : std::max<std::size_t>(1, extent.size() / (config.batch_size * patch * patch));

    double best = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;
    result.log.stop_reason = "max_epochs";
    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        double loss_sum = 0.0;
        std::size_t batches = 0;
        std::uint64_t labeled = 0;
        for (std::size_t step = 0; step < steps; ++step) {
            const std::uint64_t step_seed = derive_seed(config.seed, {epoch, step});
            std::vector<Patch> patches =
                sample_patches(image, mask, extent, patch, config.batch_size, step_seed);
            if (config.augment) {
                for (std::size_t i = 0; i < patches.size(); ++i) {
                    Rng rng(derive_seed(step_seed, {i + 1}));
                    patches[i] = augment(patches[i], rng);
                }
            }
            const LossGradient lg = loss_and_gradient(model, patches, weights);
            if (lg.loss.skipped) continue;
            if (!std::isfinite(lg.loss.value)) {
                std::ostringstream os;
                os << "training diverged at epoch " << epoch << " (loss " << lg.loss.value << ")";
                throw ProcessingError(os.str());
            }
            auto& params = model.parameters();
            for (std::size_t k = 0; k < params.size(); ++k) params[k] -= config.learning_rate * lg.gradient[k];
            loss_sum += lg.loss.value;
            labeled += lg.loss.labeled;
            ++batches;
        }
        const double mean = batches ? loss_sum / static_cast<double>(batches)
                                    : std::numeric_limits<double>::quiet_NaN();
        if (!std::isfinite(mean)) {
            std::ostringstream os;
            os << "training diverged at epoch " << epoch << " (mean loss " << mean << ")";
            throw ProcessingError(os.str());
        }
        result.log.epochs.push_back({epoch, mean, labeled});
        if (mean < best) {
            best = mean;
            since_best = 0;
        } else {
            ++since_best;
        }
        if (epoch >= config.min_epochs && config.patience > 0 && since_best >= config.patience) {
            result.log.stop_reason = "plateau";
            break;
        }
    }
    model.round_to_float();
    return result;
}

ProbRaster predict(const PixelClassifier& model, const BandRaster& image, std::size_t tile) {
    if (image.bands() != model.spec().bands) {
        std::ostringstream os;
        os << "predict: image has " << image.bands() << " bands, model expects " << model.spec().bands;
        throw ValidationError(os.str());
    }
    const Grid& g = image.grid();
    const std::size_t classes = model.spec().classes;
    ProbRaster out(g, classes);
    const auto ls = ModelKernels::layers(model.spec());

    auto run_block = [&](std::size_t c0, std::size_t c1, std::size_t r0, std::size_t r1) {
        ModelKernels::Workspace ws(ls);
        for (std::size_t r = r0; r < r1; ++r) {
            for (std::size_t c = c0; c < c1; ++c) {
                model.featurize(image, c, r, ws.act[0]);
                const double lse = ModelKernels::forward(model.parameters(), ls, ws);
                for (std::size_t k = 0; k < classes; ++k)
                    out.at(k, c, r) = static_cast<float>(std::exp(ws.pre.back()[k] - lse));
            }
        }
    };

    if (tile == 0) {
        parallel::for_chunks(g.height, 16, [&](std::size_t r0, std::size_t r1) { run_block(0, g.width, r0, r1); });
    } else {
        const std::size_t tiles_x = (g.width + tile - 1) / tile;
        const std::size_t tiles_y = (g.height + tile - 1) / tile;
        parallel::for_chunks(tiles_x * tiles_y, 1, [&](std::size_t b, std::size_t e) {
            for (std::size_t t = b; t < e; ++t) {
                const std::size_t tx = t % tiles_x, ty = t / tiles_x;
                run_block(tx * tile, std::min(g.width, (tx + 1) * tile), ty * tile,
                          std::min(g.height, (ty + 1) * tile));
            }
        });
    }
    return out;
}

MaskRaster pseudo_label_mask(const MaskRaster& manual, const ProbRaster& probs, const Extent& extent,
                             double threshold) {
    if (!(manual.grid() == probs.grid())) throw ValidationError("pseudo-labels: grids differ");
    validate_extent(manual.grid(), extent);
    const MaskRaster pseudo = probs.argmax(threshold);
    MaskRaster out = manual;
    for (std::size_t r = extent.row_begin; r < extent.row_end; ++r)
        for (std::size_t c = extent.col_begin; c < extent.col_end; ++c)
            if (out.at(c, r) == 0) out.at(c, r) = pseudo.at(c, r);
    return out;
}

RecursiveResult recursive_train(const BandRaster& image, const MaskRaster& mask, const Extent& extent,
                                const ModelSpec& spec, const TrainConfig& config) {
    config.validate();
    RecursiveResult result;
    MaskRaster round_mask = mask;
    for (std::size_t round = 1; round <= config.rounds; ++round) {
        if (round > 1) {
            const ProbRaster probs = predict(result.model, image);
            round_mask = pseudo_label_mask(mask, probs, extent, config.pseudo_label_threshold);
        }
        TrainResult tr = train(image, round_mask, extent, spec, config);
        result.model = tr.model;
        result.round_models.push_back(std::move(tr.model));
        result.logs.push_back(std::move(tr.log));
        result.round_masks.push_back(round_mask);
    }
    return result;
}

}  // namespace lulc
