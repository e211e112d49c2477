// Command-line driver for the land-cover pipeline.
//
// Exit codes: 0 success, 1 validation or configuration error, 2 runtime failure.
// Diagnostics go to stderr; machine outputs are written to files only.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "lulc/checkpoint.hpp"
#include "lulc/config.hpp"
#include "lulc/dataset.hpp"
#include "lulc/distill.hpp"
#include "lulc/error.hpp"
#include "lulc/eval.hpp"
#include "lulc/geojson.hpp"
#include "lulc/labels.hpp"
#include "lulc/model.hpp"
#include "lulc/parallel.hpp"
#include "lulc/raster_io.hpp"
#include "lulc/report.hpp"
#include "lulc/synth.hpp"

namespace fs = std::filesystem;
using namespace lulc;

namespace {

/// Options shared by every subcommand plus the flag -> config key bindings.
struct Invocation {
    std::string config_file;
    std::vector<std::string> sets;
    std::map<std::string, std::string> overrides;  // config key -> value from a flag
    std::vector<std::string> keys_read;
};

void write_text(const fs::path& path, const std::string& text) { write_file_bytes(path, text); }

std::string describe_keys(const std::vector<std::string>& keys) {
    std::ostringstream os;
    os << "Config keys read (INI section.key; flags override the file):\n";
    std::size_t width = 0;
    for (const auto& k : keys) width = std::max(width, k.size());
    for (const auto& k : keys) {
        for (const auto& d : config_keys()) {
            if (d.key != k) continue;
            os << "  " << k << std::string(width - k.size() + 2, ' ') << d.description << '\n';
        }
    }
    return os.str();
}

class Command {
public:
    Command(CLI::App& parent, const std::string& name, const std::string& desc, std::vector<std::string> keys)
        : app_(parent.add_subcommand(name, desc)) {
        inv_.keys_read = std::move(keys);
        inv_.keys_read.push_back("run.threads");
        app_->add_option("--config", inv_.config_file, "INI configuration file")->check(CLI::ExistingFile);
        app_->add_option("--param", inv_.sets, "override a config key: section.key=value (repeatable)");
        bind("--threads", "run.threads", "worker thread cap");
        app_->footer(describe_keys(inv_.keys_read));
    }

    /// Flag whose value overrides config key `key`.
    CLI::Option* bind(const std::string& flag, const std::string& key, const std::string& desc) {
        return app_->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { inv_.overrides[key] = v; }, desc + " [" + key + "]");
    }

    CLI::App* app() { return app_; }

    PipelineConfig config() const {
        PipelineConfig cfg = inv_.config_file.empty() ? PipelineConfig{} : load_config(inv_.config_file);
        for (const auto& s : inv_.sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ValidationError("--param expects section.key=value, got '" + s + "'");
            apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto& [k, v] : inv_.overrides) apply_setting(cfg, k, v);
        if (cfg.output_dir.empty()) {
            const char* env = std::getenv("LULC_OUTPUT_DIR");
            cfg.output_dir = env && *env ? fs::path(env) : fs::path(".");
        }
        cfg.validate();
        parallel::set_max_threads(cfg.threads);
        return cfg;
    }

private:
    CLI::App* app_;
    Invocation inv_;
};

fs::path or_default(const std::string& given, const PipelineConfig& cfg, const std::string& name) {
    return given.empty() ? cfg.output_dir / name : fs::path(given);
}

void require(const fs::path& p, const std::string& what) {
    if (p.empty()) throw ValidationError("missing " + what);
}

void report_skipped(const std::vector<SkippedPolygon>& skipped, const std::string& what) {
    for (const auto& s : skipped) std::cerr << "warning: skipped " << what << ' ' << s.index << ": " << s.reason << '\n';
}

ClassScheme scheme_for(const std::string& from_file, const PipelineConfig& cfg) {
    return load_scheme(from_file.empty() ? cfg.scheme : from_file);
}

std::string scheme_ref(const ClassScheme& s) {
    // Built-in schemes are referenced by name; others are embedded as JSON.
    for (const auto& n : builtin_scheme_names())
        if (builtin_scheme(n) == s) return n;
    return s.name();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Land-use / land-cover mapping pipeline: rasterize labels, train, predict, distill, evaluate."};
    app.require_subcommand(1);

    // rasterize
    Command rasterize_cmd(app, "rasterize", "burn label polygons onto the grid of a reference raster",
                          {"paths.labels", "paths.image", "scheme.name", "paths.output_dir"});
    bool negatives = false;
    std::string rasterize_out;
    rasterize_cmd.bind("--labels", "paths.labels", "GeoJSON label polygons");
    rasterize_cmd.bind("--grid", "paths.image", "raster whose grid the mask uses");
    rasterize_cmd.bind("--scheme", "scheme.name", "class scheme");
    rasterize_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    rasterize_cmd.app()->add_flag("--negatives", negatives,
                                  "add hard-negative rings: 3 m around Building, 5 m around Road");
    rasterize_cmd.app()->add_option("--out", rasterize_out, "mask file (default <out-dir>/mask.lulc)");

    // split
    Command split_cmd(app, "split", "vertical train/test split of a grid into two extent files",
                      {"paths.image", "split.train_fraction", "paths.output_dir"});
    std::string train_out, test_out;
    split_cmd.bind("--grid", "paths.image", "raster whose grid is split");
    split_cmd.bind("--fraction", "split.train_fraction", "training share of columns");
    split_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    split_cmd.app()->add_option("--train-out", train_out, "train extent (default <out-dir>/train_extent.json)");
    split_cmd.app()->add_option("--test-out", test_out, "test extent (default <out-dir>/test_extent.json)");

    // train
    Command train_cmd(app, "train", "train the pixel classifier on a label mask",
                      {"paths.image", "paths.mask", "paths.extent", "paths.output_dir", "scheme.name",
                       "train.learning_rate", "train.batch_size", "train.min_epochs", "train.max_epochs",
                       "train.patch_size", "train.rounds", "train.patience", "train.steps_per_epoch", "train.weights",
                       "train.augment", "train.pseudo_label_threshold", "train.radius", "train.hidden", "run.seed"});
    std::string ckpt_out, log_out;
    train_cmd.bind("--image", "paths.image", "input image");
    train_cmd.bind("--mask", "paths.mask", "label mask (0 = unlabeled)");
    train_cmd.bind("--extent", "paths.extent", "training extent file (default: whole grid)");
    train_cmd.bind("--scheme", "scheme.name", "class scheme when the mask does not name one");
    train_cmd.bind("--rounds", "train.rounds", "training rounds; rounds > 1 add pseudo-labels");
    train_cmd.bind("--seed", "run.seed", "random seed");
    train_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    train_cmd.app()->add_option("--out", ckpt_out, "checkpoint (default <out-dir>/model.ckpt)");
    train_cmd.app()->add_option("--log", log_out, "training log CSV (default <out-dir>/train_log.csv)");

    // predict
    Command predict_cmd(app, "predict", "class probabilities and class map from a checkpoint",
                        {"paths.checkpoint", "paths.image", "train.tile", "paths.output_dir"});
    std::string probs_out, pred_out;
    predict_cmd.bind("--checkpoint", "paths.checkpoint", "model checkpoint");
    predict_cmd.bind("--image", "paths.image", "input image");
    predict_cmd.bind("--tile", "train.tile", "tile size (0 = rows)");
    predict_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    predict_cmd.app()->add_option("--out-probs", probs_out, "probabilities (default <out-dir>/probs.lulc)");
    predict_cmd.app()->add_option("--out-mask", pred_out,
                                  "class map; Negative wins are relabeled (default <out-dir>/pred.lulc)");

    // distill
    Command distill_cmd(app, "distill", "teacher class map to student-resolution weak labels",
                        {"paths.mask", "paths.image", "distill.factor", "distill.min_coverage", "distill.remap",
                         "paths.output_dir"});
    std::string distill_out;
    distill_cmd.bind("--teacher", "paths.mask", "teacher class map");
    distill_cmd.bind("--grid", "paths.image", "raster on the student grid");
    distill_cmd.bind("--factor", "distill.factor", "integer resolution ratio");
    distill_cmd.bind("--min-coverage", "distill.min_coverage", "labeled share needed per block");
    distill_cmd.bind("--remap", "distill.remap", "teacher-to-student remap table");
    distill_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    distill_cmd.app()->add_option("--out", distill_out, "student mask (default <out-dir>/distilled.lulc)");

    // fuse
    Command fuse_cmd(app, "fuse", "priority fusion of label masks listed in a manifest",
                     {"distill.priority_manual", "distill.priority_osm", "distill.priority_pseudo",
                      "paths.output_dir"});
    std::string manifest, fuse_out;
    fuse_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    fuse_cmd.app()->add_option("--manifest", manifest, "JSON manifest of sources")->required();
    fuse_cmd.app()->add_option("--out", fuse_out, "fused mask (default <out-dir>/fused.lulc)");

    // evaluate
    Command eval_cmd(app, "evaluate", "confusion matrix and one-vs-all metrics of a class map",
                     {"paths.truth", "paths.extent", "scheme.name", "eval.set", "eval.remap_pred",
                      "eval.remap_truth", "paths.output_dir"});
    std::string pred_in;
    eval_cmd.app()->add_option("--pred", pred_in, "predicted class map")->required()->check(CLI::ExistingFile);
    eval_cmd.bind("--truth", "paths.truth", "reference mask");
    eval_cmd.bind("--extent", "paths.extent", "evaluation extent (required for --set test)");
    eval_cmd.bind("--set", "eval.set", "whole | test | external");
    eval_cmd.bind("--scheme", "scheme.name", "scheme when the rasters do not name one");
    eval_cmd.bind("--remap-pred", "eval.remap_pred", "remap table for the prediction");
    eval_cmd.bind("--remap-truth", "eval.remap_truth", "remap table for the reference");
    eval_cmd.bind("--out-dir", "paths.output_dir", "output directory");

    // compare
    Command compare_cmd(app, "compare", "agreement matrix and area tables of several maps", {"paths.output_dir"});
    std::vector<std::string> maps, remaps, names;
    compare_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    compare_cmd.app()->add_option("--map", maps, "class map (repeat)")->required()->check(CLI::ExistingFile);
    compare_cmd.app()->add_option("--remap", remaps, "harmonization table per map, same order (repeat)")->required();
    compare_cmd.app()->add_option("--name", names, "display name per map (default: file stem)");

    // synth
    Command synth_cmd(app, "synth", "write a synthetic scene (image, truth, sparse labels)",
                      {"run.seed", "paths.output_dir"});
    std::size_t width = 256, height = 256, bands = 4, factor = 0;
    double res = 2.5, separability = 0.9, sparse = 0.05, origin_x = 0.0, origin_y = 0.0;
    std::string synth_scheme = "synthetic", format = "native";
    synth_cmd.bind("--seed", "run.seed", "random seed");
    synth_cmd.bind("--out-dir", "paths.output_dir", "output directory");
    auto* sa = synth_cmd.app();
    sa->add_option("--width", width, "pixels")->capture_default_str();
    sa->add_option("--height", height, "pixels")->capture_default_str();
    sa->add_option("--res", res, "metres per pixel")->capture_default_str();
    sa->add_option("--origin-x", origin_x, "world x of the top-left corner")->capture_default_str();
    sa->add_option("--origin-y", origin_y, "world y of the top-left corner")->capture_default_str();
    sa->add_option("--bands", bands, "image bands")->capture_default_str();
    sa->add_option("--scheme", synth_scheme, "class scheme of the scene")->capture_default_str();
    sa->add_option("--separability", separability, "class separability in (0, 1]")->capture_default_str();
    sa->add_option("--sparse-fraction", sparse, "share of pixels covered by label polygons")->capture_default_str();
    sa->add_option("--factor", factor, "also write a low-resolution pair at this factor (0 = no)")
        ->capture_default_str();
    sa->add_option("--format", format, "raster format: native | tif")
        ->check(CLI::IsMember({"native", "tif"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rasterize_cmd.app()->parsed()) {
            const PipelineConfig cfg = rasterize_cmd.config();
            require(cfg.labels, "--labels");
            require(cfg.image, "--grid");
            const ClassScheme scheme = load_scheme(cfg.scheme);
            const Grid grid = read_grid(cfg.image);
            PolygonSet set = read_label_polygons(cfg.labels, scheme);
            report_skipped(set.skipped, "feature");
            std::vector<LabelPolygon> polys = set.polygons;
            std::size_t rings = 0;
            if (negatives) {
                const auto neg = scheme.negative_index();
                if (!neg) throw ValidationError("--negatives needs a scheme with a Negative class");
                NegativesResult nr = make_negatives(set.polygons, default_negative_distances(scheme), *neg, grid);
                report_skipped(nr.skipped, "buffer of polygon");
                rings = nr.polygons.size();
                polys.insert(polys.end(), nr.polygons.begin(), nr.polygons.end());
            }
            std::vector<SkippedPolygon> skipped;
            const MaskRaster mask = rasterize(polys, grid, scheme, &skipped);
            report_skipped(skipped, "polygon");
            const fs::path out = or_default(rasterize_out, cfg, "mask.lulc");
            write_mask(out, mask, scheme_ref(scheme));
            std::cout << "polygons " << set.polygons.size() << ", negative rings " << rings << ", labeled "
                      << sparsity(mask) * 100.0 << "% -> " << out.string() << '\n';
        } else if (split_cmd.app()->parsed()) {
            const PipelineConfig cfg = split_cmd.config();
            require(cfg.image, "--grid");
            const SplitExtents s = vertical_split(read_grid(cfg.image), cfg.train_fraction);
            const fs::path tr = or_default(train_out, cfg, "train_extent.json");
            const fs::path te = or_default(test_out, cfg, "test_extent.json");
            write_extent(tr, s.train);
            write_extent(te, s.test);
            std::cout << "train columns [" << s.train.col_begin << ", " << s.train.col_end << "), test columns ["
                      << s.test.col_begin << ", " << s.test.col_end << ")\n";
        } else if (train_cmd.app()->parsed()) {
            const PipelineConfig cfg = train_cmd.config();
            require(cfg.image, "--image");
            require(cfg.mask, "--mask");
            const BandRaster image = read_image(cfg.image);
            const MaskFile mf = read_mask(cfg.mask);
            const ClassScheme scheme = scheme_for(mf.scheme, cfg);
            check_mask_in_scheme(mf.mask, scheme);
            const Extent extent = cfg.extent.empty() ? Extent::full(mf.mask.grid()) : read_extent(cfg.extent);
            const ModelSpec spec = cfg.model_spec(scheme.class_count(), image.bands());
            TrainConfig tc = cfg.train;
            tc.seed = cfg.seed;
            const RecursiveResult rr = recursive_train(image, mf.mask, extent, spec, tc);
            const fs::path ck = or_default(ckpt_out, cfg, "model.ckpt");
            const fs::path lg = or_default(log_out, cfg, "train_log.csv");
            save_checkpoint(ck, rr.model, scheme);
            write_text(lg, rr.logs.back().to_csv());
            if (rr.logs.size() > 1) {
                for (std::size_t k = 0; k < rr.logs.size(); ++k) {
                    const std::string tag = ".round" + std::to_string(k + 1);
                    save_checkpoint(fs::path(ck).replace_extension(tag + ck.extension().string()),
                                    rr.round_models[k], scheme);
                    write_text(fs::path(lg).replace_extension(tag + lg.extension().string()), rr.logs[k].to_csv());
                    write_mask(cfg.output_dir / ("train_mask" + tag + ".lulc"), rr.round_masks[k], scheme_ref(scheme));
                }
            }
            for (std::size_t k = 0; k < rr.logs.size(); ++k) {
                const auto& log = rr.logs[k];
                std::cout << "round " << k + 1 << ": " << log.epochs.size() << " epochs, final loss "
                          << log.epochs.back().mean_loss << " (" << log.stop_reason << ")\n";
            }
            std::cout << "checkpoint -> " << ck.string() << '\n';
        } else if (predict_cmd.app()->parsed()) {
            const PipelineConfig cfg = predict_cmd.config();
            require(cfg.checkpoint, "--checkpoint");
            require(cfg.image, "--image");
            const Checkpoint ck = load_checkpoint(cfg.checkpoint);
            const BandRaster image = read_image(cfg.image);
            const ProbRaster probs = predict(ck.model, image, cfg.tile);
            const MaskRaster cls = ck.scheme.negative_index() ? relabel_negative(probs, ck.scheme) : probs.argmax();
            const std::string ref = scheme_ref(ck.scheme);
            write_probs(or_default(probs_out, cfg, "probs.lulc"), probs, ref);
            write_mask(or_default(pred_out, cfg, "pred.lulc"), cls, ref);
            std::cout << "predicted " << image.width() << "x" << image.height() << " pixels, " << ck.scheme.class_count()
                      << " classes\n";
        } else if (distill_cmd.app()->parsed()) {
            const PipelineConfig cfg = distill_cmd.config();
            require(cfg.mask, "--teacher");
            require(cfg.image, "--grid");
            const MaskFile teacher = read_mask(cfg.mask);
            const Grid student = read_grid(cfg.image);
            std::string table_name = cfg.distill_remap;
            if (table_name.empty()) {
                if (teacher.scheme.empty()) throw ValidationError("teacher map names no scheme; pass --remap");
                table_name = teacher.scheme + "_to_student";
            }
            const RemapTable table = load_remap(table_name);
            OverlapReport ov;
            const MaskRaster weak = teacher_to_student(teacher.mask, student, cfg.factor, cfg.min_coverage, table, &ov);
            const fs::path out = or_default(distill_out, cfg, "distilled.lulc");
            write_mask(out, weak, scheme_ref(table.target()));
            std::cout << ov.describe() << "\nweak labels cover " << sparsity(weak) * 100.0 << "% -> " << out.string()
                      << '\n';
        } else if (fuse_cmd.app()->parsed()) {
            const PipelineConfig cfg = fuse_cmd.config();
            const auto entries = read_fusion_manifest(manifest);
            std::vector<LabelSource> sources;
            std::string scheme;
            nlohmann::json raw = nlohmann::json::parse(read_file_bytes(manifest));
            for (std::size_t i = 0; i < entries.size(); ++i) {
                MaskFile mf = read_mask(entries[i].path);
                if (!mf.scheme.empty()) {
                    if (!scheme.empty() && scheme != mf.scheme)
                        throw ValidationError("fusion sources use different schemes: " + scheme + " and " + mf.scheme);
                    scheme = mf.scheme;
                }
                int priority = entries[i].priority;
                if (!raw["sources"][i].contains("priority")) {
                    switch (entries[i].provenance) {
                        case Provenance::Manual: priority = cfg.priority_manual; break;
                        case Provenance::Osm: priority = cfg.priority_osm; break;
                        case Provenance::Pseudo: priority = cfg.priority_pseudo; break;
                    }
                }
                sources.push_back({std::move(mf.mask), priority});
            }
            const MaskRaster fused = fuse_labels(sources);
            const fs::path out = or_default(fuse_out, cfg, "fused.lulc");
            write_mask(out, fused, scheme);
            std::cout << "fused " << sources.size() << " sources, labeled " << sparsity(fused) * 100.0 << "% -> "
                      << out.string() << '\n';
        } else if (eval_cmd.app()->parsed()) {
            const PipelineConfig cfg = eval_cmd.config();
            require(cfg.truth, "--truth");
            MaskFile pred = read_mask(pred_in);
            MaskFile truth = read_mask(cfg.truth);
            ClassScheme scheme;
            if (!cfg.remap_pred.empty() || !cfg.remap_truth.empty()) {
                if (cfg.remap_pred.empty() || cfg.remap_truth.empty())
                    throw ValidationError("--remap-pred and --remap-truth must be given together");
                const RemapTable rp = load_remap(cfg.remap_pred), rt = load_remap(cfg.remap_truth);
                if (rp.target().names() != rt.target().names())
                    throw ValidationError("remap tables target different schemes");
                pred.mask = remap(pred.mask, rp);
                truth.mask = remap(truth.mask, rt);
                scheme = rp.target();
            } else {
                scheme = scheme_for(!pred.scheme.empty() ? pred.scheme : truth.scheme, cfg);
            }
            Extent extent = Extent::full(truth.mask.grid());
            if (cfg.set == "test") {
                if (cfg.extent.empty()) throw ValidationError("--set test needs --extent");
                extent = read_extent(cfg.extent);
            } else if (!cfg.extent.empty()) {
                extent = read_extent(cfg.extent);
            }
            const ConfusionMatrix cm = confusion(pred.mask, truth.mask, scheme, &extent);
            const MetricsReport rep = metrics(cm, cfg.set);
            write_text(cfg.output_dir / "metrics.json", to_json(rep).dump(2) + "\n");
            write_text(cfg.output_dir / "metrics.csv", to_csv(rep));
            write_text(cfg.output_dir / "confusion.json", to_json(cm).dump(2) + "\n");
            write_text(cfg.output_dir / "confusion.csv", to_csv(cm));
            std::cout << to_text(rep) << '\n' << to_text(cm);
        } else if (compare_cmd.app()->parsed()) {
            const PipelineConfig cfg = compare_cmd.config();
            if (remaps.size() != maps.size()) throw ValidationError("give exactly one --remap per --map");
            if (!names.empty() && names.size() != maps.size())
                throw ValidationError("give either no --name or one per --map");
            if (names.empty())
                for (const auto& m : maps) names.push_back(fs::path(m).stem().string());
            std::vector<MaskRaster> rasters;
            std::vector<RemapTable> tables;
            for (std::size_t i = 0; i < maps.size(); ++i) {
                rasters.push_back(read_mask(maps[i]).mask);
                tables.push_back(load_remap(remaps[i]));
            }
            const AgreementMatrix am = agreement_matrix(rasters, tables, names);
            write_text(cfg.output_dir / "agreement.json", to_json(am).dump(2) + "\n");
            write_text(cfg.output_dir / "agreement.csv", to_csv(am));
            nlohmann::json areas = nlohmann::json::object();
            std::cout << to_text(am);
            for (std::size_t i = 0; i < rasters.size(); ++i) {
                const AreaTable t = area_coverage(remap(rasters[i], tables[i]), tables[i].target());
                areas[names[i]] = to_json(t);
                write_text(cfg.output_dir / ("area_" + names[i] + ".csv"), to_csv(t));
                std::cout << '\n' << names[i] << '\n' << to_text(t);
            }
            write_text(cfg.output_dir / "areas.json", areas.dump(2) + "\n");
        } else if (synth_cmd.app()->parsed()) {
            const PipelineConfig cfg = synth_cmd.config();
            const ClassScheme scheme = load_scheme(synth_scheme);
            const std::string ext = format == "tif" ? ".tif" : ".lulc";
            const Grid grid{origin_x, origin_y, res, width, height};
            SceneOptions opt;
            opt.sparse_fraction = sparse;
            const fs::path dir = cfg.output_dir;
            const std::string ref = scheme_ref(scheme);
            nlohmann::json meta = {{"seed", cfg.seed}, {"scheme", ref}, {"separability", separability},
                                   {"bands", bands}};
            Scene scene;
            if (factor > 0) {
                ScenePair p = gen_pair(cfg.seed, grid, factor, bands, scheme, separability, opt);
                write_image(dir / ("lo_image" + ext), p.lo_image);
                write_mask(dir / ("lo_truth" + ext), p.lo_truth, ref);
                meta["factor"] = factor;
                scene = std::move(p.hi);
            } else {
                scene = gen_scene(cfg.seed, grid, bands, scheme, separability, opt);
            }
            write_image(dir / ("image" + ext), scene.image);
            write_mask(dir / ("truth" + ext), scene.truth, ref);
            write_label_polygons(dir / "labels.geojson", scene.polygons, scheme);
            write_text(dir / "scene.json", meta.dump(2) + "\n");
            std::cout << "scene " << scene.truth.width() << "x" << scene.truth.height() << ", "
                      << scene.polygons.size() << " label polygons -> " << dir.string() << '\n';
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
