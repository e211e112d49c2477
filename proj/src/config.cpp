#include "lulc/config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lulc/error.hpp"

namespace lulc {
namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    const char* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end || text.empty())
        throw ValidationError("config key " + key + ": cannot parse '" + text + "' as a number");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ValidationError("config key " + key + ": expected true/false, got '" + text + "'");
}

std::vector<std::size_t> parse_list(const std::string& key, const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
        if (b == std::string::npos) continue;
        out.push_back(parse_number<std::size_t>(key, item.substr(b, e - b + 1)));
    }
    return out;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct KeyDef {
    ConfigKey doc;
    std::function<void(PipelineConfig&, const std::string&)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

const std::vector<KeyDef>& key_defs() {
    using C = PipelineConfig;
    auto path_key = [](std::string key, std::string desc, std::filesystem::path C::*m) {
        return KeyDef{{key, desc},
                      [m](C& c, const std::string& v) { c.*m = v; },
                      [m](const C& c) { return (c.*m).string(); }};
    };
    auto size_key = [](std::string key, std::string desc, auto getter) {
        return KeyDef{{key, desc},
                      [key, getter](C& c, const std::string& v) { getter(c) = parse_number<std::size_t>(key, v); },
                      [getter](const C& c) { return std::to_string(getter(const_cast<C&>(c))); }};
    };
    auto real_key = [](std::string key, std::string desc, auto getter) {
        return KeyDef{{key, desc},
                      [key, getter](C& c, const std::string& v) { getter(c) = parse_number<double>(key, v); },
                      [getter](const C& c) { return num(getter(const_cast<C&>(c))); }};
    };
    auto int_key = [](std::string key, std::string desc, int C::*m) {
        return KeyDef{{key, desc},
                      [key, m](C& c, const std::string& v) { c.*m = parse_number<int>(key, v); },
                      [m](const C& c) { return std::to_string(c.*m); }};
    };
    auto str_key = [](std::string key, std::string desc, std::string C::*m) {
        return KeyDef{{key, desc},
                      [m](C& c, const std::string& v) { c.*m = v; },
                      [m](const C& c) { return c.*m; }};
    };
    static const std::vector<KeyDef> defs = {
        path_key("paths.image", "input image raster", &C::image),
        path_key("paths.labels", "label polygons (GeoJSON)", &C::labels),
        path_key("paths.mask", "training label mask raster", &C::mask),
        path_key("paths.truth", "reference mask for evaluation", &C::truth),
        path_key("paths.extent", "pixel extent file (JSON) for training or test evaluation", &C::extent),
        path_key("paths.checkpoint", "model checkpoint", &C::checkpoint),
        path_key("paths.output_dir", "directory for outputs (default: $LULC_OUTPUT_DIR or .)", &C::output_dir),
        str_key("scheme.name", "class scheme: built-in name or JSON file", &C::scheme),
        real_key("split.train_fraction", "share of columns in the training split, (0,1)",
                 [](C& c) -> double& { return c.train_fraction; }),
        real_key("train.learning_rate", "SGD step size", [](C& c) -> double& { return c.train.learning_rate; }),
        size_key("train.batch_size", "patches per step", [](C& c) -> std::size_t& { return c.train.batch_size; }),
        size_key("train.min_epochs", "epochs before early stopping may trigger",
                 [](C& c) -> std::size_t& { return c.train.min_epochs; }),
        size_key("train.max_epochs", "epoch cap", [](C& c) -> std::size_t& { return c.train.max_epochs; }),
        size_key("train.patch_size", "patch side in pixels (clamped to the extent)",
                 [](C& c) -> std::size_t& { return c.train.patch_size; }),
        size_key("train.rounds", "training rounds; later rounds add pseudo-labels",
                 [](C& c) -> std::size_t& { return c.train.rounds; }),
        size_key("train.patience", "epochs without improvement before stopping",
                 [](C& c) -> std::size_t& { return c.train.patience; }),
        size_key("train.steps_per_epoch", "optimizer steps per epoch, 0 = automatic",
                 [](C& c) -> std::size_t& { return c.train.steps_per_epoch; }),
        KeyDef{{"train.weights", "class weighting: inverse_frequency | uniform"},
               [](C& c, const std::string& v) { c.train.weights = weight_strategy_from_string(v); },
               [](const C& c) { return std::string(to_string(c.train.weights)); }},
        KeyDef{{"train.augment", "random rotations and flips (true|false)"},
               [](C& c, const std::string& v) { c.train.augment = parse_bool("train.augment", v); },
               [](const C& c) { return std::string(c.train.augment ? "true" : "false"); }},
        real_key("train.pseudo_label_threshold", "minimum confidence of a pseudo-label",
                 [](C& c) -> double& { return c.train.pseudo_label_threshold; }),
        size_key("train.radius", "window radius of the pixel classifier", [](C& c) -> std::size_t& { return c.radius; }),
        KeyDef{{"train.hidden", "hidden layer widths, comma separated"},
               [](C& c, const std::string& v) { c.hidden = parse_list("train.hidden", v); },
               [](const C& c) { return join(c.hidden); }},
        size_key("train.tile", "prediction tile size, 0 = whole rows", [](C& c) -> std::size_t& { return c.tile; }),
        size_key("distill.factor", "student/teacher resolution ratio after resampling",
                 [](C& c) -> std::size_t& { return c.factor; }),
        real_key("distill.min_coverage", "labeled share a block needs to get a label, [0,1]",
                 [](C& c) -> double& { return c.min_coverage; }),
        str_key("distill.remap", "teacher-to-student remap table (built-in name or JSON file)", &C::distill_remap),
        int_key("distill.priority_manual", "fusion priority of manual labels", &C::priority_manual),
        int_key("distill.priority_osm", "fusion priority of OSM labels", &C::priority_osm),
        int_key("distill.priority_pseudo", "fusion priority of pseudo-labels", &C::priority_pseudo),
        str_key("eval.set", "validation set tag: whole | test | external", &C::set),
        str_key("eval.remap_pred", "remap table applied to predictions (built-in name or JSON file)", &C::remap_pred),
        str_key("eval.remap_truth", "remap table applied to the reference mask", &C::remap_truth),
        KeyDef{{"run.seed", "seed for every random draw"},
               [](C& c, const std::string& v) { c.seed = parse_number<std::uint64_t>("run.seed", v); },
               [](const C& c) { return std::to_string(c.seed); }},
        KeyDef{{"run.threads", "worker thread cap"},
               [](C& c, const std::string& v) { c.threads = parse_number<unsigned>("run.threads", v); },
               [](const C& c) { return std::to_string(c.threads); }},
    };
    return defs;
}

const KeyDef* find_key(const std::string& key) {
    for (const auto& d : key_defs())
        if (d.doc.key == key) return &d;
    return nullptr;
}

}  // namespace

ModelSpec PipelineConfig::model_spec(std::size_t classes, std::size_t bands) const {
    ModelSpec s;
    s.radius = radius;
    s.hidden = hidden;
    s.classes = classes;
    s.bands = bands;
    s.seed = seed;
    return s;
}

void PipelineConfig::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ValidationError("split.train_fraction must lie in (0, 1)");
    if (!(min_coverage >= 0.0 && min_coverage <= 1.0)) throw ValidationError("distill.min_coverage must lie in [0, 1]");
    if (factor < 1) throw ValidationError("distill.factor must be at least 1");
    if (set != "whole" && set != "test" && set != "external")
        throw ValidationError("eval.set must be whole, test or external (got '" + set + "')");
    if (threads < 1) throw ValidationError("run.threads must be at least 1");
    train.validate();
    for (const auto* p : {&image, &labels, &mask, &truth, &extent, &checkpoint})
        if (!p->empty() && !std::filesystem::exists(*p))
            throw ValidationError("input file '" + p->string() + "' does not exist");
}

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        for (const auto& d : key_defs()) k.push_back(d.doc);
        return k;
    }();
    return keys;
}

void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    const KeyDef* d = find_key(key);
    if (!d) throw ValidationError("unknown config key '" + key + "'");
    d->set(cfg, value);
}

void apply_ini(PipelineConfig& cfg, std::istream& in, const std::string& source) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_config(in);
    } catch (const CLI::Error& e) {
        throw ValidationError(source + ": " + e.what());
    }
    for (const auto& it : items) {
        if (it.name == "++" || it.name == "--") continue;
        std::string key;
        for (const auto& p : it.parents) key += p + ".";
        key += it.name;
        if (it.parents.empty() || it.parents.front() == "default")
            throw ValidationError(source + ": key '" + it.name + "' is outside a section");
        if (!find_key(key)) throw ValidationError(source + ": unknown config key '" + key + "'");
        std::string value;
        const char* sep = key == "train.hidden" ? "," : " ";
        for (std::size_t i = 0; i < it.inputs.size(); ++i) value += (i ? sep : "") + it.inputs[i];
        apply_setting(cfg, key, value);
    }
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
    PipelineConfig cfg;
    apply_ini(cfg, in, path.string());
    return cfg;
}

std::string to_ini(const PipelineConfig& cfg) {
    std::ostringstream os;
    std::string section;
    for (const auto& d : key_defs()) {
        const auto dot = d.doc.key.find('.');
        const std::string s = d.doc.key.substr(0, dot);
        if (s != section) {
            os << (section.empty() ? "" : "\n") << '[' << s << "]\n";
            section = s;
        }
        const std::string v = d.get(cfg);
        const bool quote = v.find_first_of(" ;#") != std::string::npos || v.empty();
        os << d.doc.key.substr(dot + 1) << " = " << (quote ? "\"" + v + "\"" : v) << '\n';
    }
    return os.str();
}

}  // namespace lulc
