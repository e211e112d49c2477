#include "lulc/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/parallel.hpp"

namespace lulc {

using nlohmann::json;

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

std::string_view to_string(SchemeSource s) {
    switch (s) {
        case SchemeSource::Teacher: return "teacher";
        case SchemeSource::Student: return "student";
        case SchemeSource::Gdw: return "gdw";
        case SchemeSource::Esa: return "esa";
        case SchemeSource::Esri: return "esri";
        case SchemeSource::External: return "external";
    }
    return "external";
}

SchemeSource scheme_source_from_string(std::string_view s) {
    for (auto v : {SchemeSource::Teacher, SchemeSource::Student, SchemeSource::Gdw, SchemeSource::Esa,
                   SchemeSource::Esri, SchemeSource::External})
        if (iequals(s, to_string(v))) return v;
    throw ValidationError("unknown scheme source '" + std::string(s) + "'");
}

ClassScheme::ClassScheme(std::string name, const std::vector<std::string>& classes,
                         std::optional<std::string> negative_class, SchemeSource source)
    : name_(std::move(name)), source_(source) {
    names_.reserve(classes.size() + 1);
    names_.emplace_back(kUnlabeledName);
    for (const auto& c : classes) {
        if (c.empty()) throw ValidationError("class names must be non-empty");
        if (find(c)) throw ValidationError("duplicate class name '" + c + "' in scheme '" + name_ + "'");
        names_.push_back(c);
    }
    if (names_.size() > 256) throw ValidationError("a scheme holds at most 255 labeled classes");
    if (negative_class) {
        negative_ = find(*negative_class);
        if (!negative_ || *negative_ == 0)
            throw ValidationError("negative class '" + *negative_class + "' is not a class of scheme '" + name_ + "'");
    }
}

std::optional<ClassIndex> ClassScheme::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (iequals(names_[i], name)) return static_cast<ClassIndex>(i);
    return std::nullopt;
}

ClassIndex ClassScheme::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw ValidationError("class '" + std::string(name) + "' is not defined in scheme '" + name_ + "'");
}

json ClassScheme::to_json() const {
    json j;
    j["name"] = name_;
    j["source"] = std::string(to_string(source_));
    j["classes"] = std::vector<std::string>(names_.begin() + 1, names_.end());
    if (negative_) j["negative"] = names_[*negative_];
    return j;
}

ClassScheme ClassScheme::from_json(const json& j) {
    try {
        std::optional<std::string> negative;
        if (j.contains("negative") && !j["negative"].is_null()) negative = j["negative"].get<std::string>();
        const auto source = j.contains("source") ? scheme_source_from_string(j["source"].get<std::string>())
                                                 : SchemeSource::External;
        auto classes = j.at("classes").get<std::vector<std::string>>();
        if (!classes.empty() && iequals(classes.front(), kUnlabeledName)) classes.erase(classes.begin());
        return ClassScheme(j.at("name").get<std::string>(), classes, negative, source);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed scheme JSON: ") + e.what());
    }
}

ClassScheme teacher_scheme() {
    return ClassScheme("teacher",
                       {"Bare Ground", "Building", "Road", "Crop", "Flooded Vegetation", "Grass", "Shrub & Scrub",
                        "Trees", "Water", "Negative"},
                       std::string(kNegativeName), SchemeSource::Teacher);
}

ClassScheme student_scheme() {
    return ClassScheme("student",
                       {"Bare Ground", "Built-up", "Crop", "Grass", "Road", "Shrub & Scrub", "Trees", "Water"},
                       std::nullopt, SchemeSource::Student);
}

ClassScheme evaluation_scheme() {
    return ClassScheme("evaluation",
                       {"Bare Ground", "Built-up", "Crop", "Grass", "Shrub & Scrub", "Trees", "Water", "Others"},
                       std::nullopt, SchemeSource::External);
}

ClassScheme gdw_scheme() {
    return ClassScheme("gdw",
                       {"Water", "Trees", "Grass", "Flooded Vegetation", "Crops", "Shrub & Scrub", "Built Area",
                        "Bare Ground", "Snow & Ice"},
                       std::nullopt, SchemeSource::Gdw);
}

ClassScheme esa_scheme() {
    return ClassScheme("esa",
                       {"Tree cover", "Shrubland", "Grassland", "Cropland", "Built-up", "Bare / sparse vegetation",
                        "Snow and ice", "Permanent water bodies", "Herbaceous wetland", "Mangroves",
                        "Moss and lichen"},
                       std::nullopt, SchemeSource::Esa);
}

ClassScheme esri_scheme() {
    return ClassScheme("esri",
                       {"Water", "Trees", "Grass", "Flooded Vegetation", "Crops", "Scrub/Shrub", "Built Area",
                        "Bare Ground", "Snow/Ice", "Clouds", "Herbaceous Wetland", "Mangroves", "Moss and Lichen",
                        "Shadow"},
                       std::nullopt, SchemeSource::Esri);
}

ClassScheme synthetic_scheme() {
    return ClassScheme("synthetic", {"Building", "Road", "Crop", "Grass", "Trees", "Water", "Negative"},
                       std::string(kNegativeName), SchemeSource::External);
}

std::vector<std::string> builtin_scheme_names() {
    return {"teacher", "student", "evaluation", "gdw", "esa", "esri", "synthetic"};
}

ClassScheme builtin_scheme(std::string_view name) {
    if (iequals(name, "teacher")) return teacher_scheme();
    if (iequals(name, "student")) return student_scheme();
    if (iequals(name, "evaluation")) return evaluation_scheme();
    if (iequals(name, "gdw")) return gdw_scheme();
    if (iequals(name, "esa")) return esa_scheme();
    if (iequals(name, "esri")) return esri_scheme();
    if (iequals(name, "synthetic")) return synthetic_scheme();
    throw ValidationError("unknown class scheme '" + std::string(name) + "'");
}

namespace {
json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

bool is_builtin_scheme(std::string_view name) {
    const auto names = builtin_scheme_names();
    return std::any_of(names.begin(), names.end(), [&](const std::string& n) { return iequals(n, name); });
}
}  // namespace

ClassScheme load_scheme(const std::string& name_or_path) {
    if (is_builtin_scheme(name_or_path)) return builtin_scheme(name_or_path);
    if (std::filesystem::exists(name_or_path)) return ClassScheme::from_json(read_json_file(name_or_path));
    throw ValidationError("'" + name_or_path + "' is neither a built-in scheme nor a scheme file");
}

// ---------------------------------------------------------------- RemapTable

RemapTable::RemapTable(ClassScheme source, ClassScheme target, std::vector<ClassIndex> mapping,
                       std::optional<ClassIndex> others)
    : source_(std::move(source)), target_(std::move(target)), mapping_(std::move(mapping)), others_(others) {
    if (mapping_.size() != source_.size()) throw ValidationError("remap table must cover every source class");
    if (mapping_[0] != 0) throw ValidationError("remap table must map Unlabeled to Unlabeled");
    for (std::size_t i = 0; i < mapping_.size(); ++i)
        if (mapping_[i] >= target_.size())
            throw ValidationError("remap target index out of range for class '" + source_.names()[i] + "'");
    if (others_ && (*others_ == 0 || *others_ >= target_.size()))
        throw ValidationError("remap Others target out of range");
}

RemapTable RemapTable::from_names(const ClassScheme& source, const ClassScheme& target,
                                  const std::vector<std::pair<std::string, std::string>>& pairs,
                                  std::optional<std::string> others) {
    std::vector<std::optional<ClassIndex>> resolved(source.size());
    resolved[0] = 0;
    for (const auto& [from, to] : pairs) {
        const ClassIndex s = source.index_of(from);
        if (s == 0) throw ValidationError("Unlabeled cannot be remapped");
        const ClassIndex t = iequals(to, kUnlabeledName) ? ClassIndex{0} : target.index_of(to);
        if (resolved[s] && *resolved[s] != t)
            throw ValidationError("class '" + from + "' is mapped twice in remap table");
        resolved[s] = t;
    }
    std::vector<ClassIndex> mapping(source.size(), 0);
    for (std::size_t i = 1; i < source.size(); ++i) {
        if (!resolved[i]) {
            if (auto same = target.find(source.names()[i])) resolved[i] = *same;
            else
                throw ValidationError("remap " + source.name() + "->" + target.name() + " has no target for class '" +
                                      source.names()[i] + "'");
        }
        mapping[i] = *resolved[i];
    }
    std::optional<ClassIndex> others_index;
    if (others) others_index = target.index_of(*others);
    else others_index = target.find(kOthersName);
    return RemapTable(source, target, std::move(mapping), others_index);
}

RemapTable RemapTable::identity(const ClassScheme& scheme) {
    std::vector<ClassIndex> mapping(scheme.size());
    for (std::size_t i = 0; i < mapping.size(); ++i) mapping[i] = static_cast<ClassIndex>(i);
    return RemapTable(scheme, scheme, std::move(mapping), scheme.find(kOthersName));
}

RemapTable RemapTable::from_json(const json& j) {
    try {
        const auto scheme_of = [&](const char* key) {
            const auto& v = j.at(key);
            return v.is_object() ? ClassScheme::from_json(v) : load_scheme(v.get<std::string>());
        };
        const ClassScheme source = scheme_of("source");
        const ClassScheme target = scheme_of("target");
        std::vector<std::pair<std::string, std::string>> pairs;
        if (j.contains("map"))
            for (const auto& [k, v] : j.at("map").items()) pairs.emplace_back(k, v.get<std::string>());
        std::optional<std::string> others;
        if (j.contains("others") && !j["others"].is_null()) others = j["others"].get<std::string>();
        return from_names(source, target, pairs, others);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed remap table: ") + e.what());
    }
}

json RemapTable::to_json() const {
    json j;
    j["source"] = source_.name();
    j["target"] = target_.name();
    json map = json::object();
    for (std::size_t i = 1; i < mapping_.size(); ++i) map[source_.names()[i]] = target_.names()[mapping_[i]];
    j["map"] = map;
    if (others_) j["others"] = target_.names()[*others_];
    return j;
}

RemapTable RemapTable::load(const std::filesystem::path& path) { return from_json(read_json_file(path)); }

RemapTable teacher_to_evaluation() {
    return RemapTable::from_names(teacher_scheme(), evaluation_scheme(),
                                  {{"Building", "Built-up"},
                                   {"Road", "Built-up"},
                                   {"Flooded Vegetation", "Others"},
                                   {"Negative", "Others"}});
}

RemapTable student_to_evaluation() {
    return RemapTable::from_names(student_scheme(), evaluation_scheme(), {{"Road", "Built-up"}});
}

RemapTable teacher_to_student() {
    return RemapTable::from_names(teacher_scheme(), student_scheme(),
                                  {{"Building", "Built-up"},
                                   {"Flooded Vegetation", "Unlabeled"},
                                   {"Negative", "Unlabeled"}});
}

RemapTable gdw_to_evaluation() {
    return RemapTable::from_names(gdw_scheme(), evaluation_scheme(),
                                  {{"Flooded Vegetation", "Others"},
                                   {"Crops", "Crop"},
                                   {"Built Area", "Built-up"},
                                   {"Snow & Ice", "Others"}});
}

RemapTable esa_to_evaluation() {
    return RemapTable::from_names(esa_scheme(), evaluation_scheme(),
                                  {{"Tree cover", "Trees"},
                                   {"Shrubland", "Shrub & Scrub"},
                                   {"Grassland", "Grass"},
                                   {"Cropland", "Crop"},
                                   {"Bare / sparse vegetation", "Bare Ground"},
                                   {"Snow and ice", "Others"},
                                   {"Permanent water bodies", "Water"},
                                   {"Herbaceous wetland", "Others"},
                                   {"Mangroves", "Others"},
                                   {"Moss and lichen", "Others"}});
}

RemapTable esri_to_evaluation() {
    return RemapTable::from_names(esri_scheme(), evaluation_scheme(),
                                  {{"Flooded Vegetation", "Others"},
                                   {"Crops", "Crop"},
                                   {"Scrub/Shrub", "Shrub & Scrub"},
                                   {"Built Area", "Built-up"},
                                   {"Snow/Ice", "Others"},
                                   {"Clouds", "Others"},
                                   {"Herbaceous Wetland", "Others"},
                                   {"Mangroves", "Others"},
                                   {"Moss and Lichen", "Others"},
                                   {"Shadow", "Others"}});
}

std::vector<std::string> builtin_remap_names() {
    return {"teacher_to_evaluation", "student_to_evaluation", "teacher_to_student",
            "gdw_to_evaluation",     "esa_to_evaluation",     "esri_to_evaluation"};
}

RemapTable builtin_remap(std::string_view name) {
    if (iequals(name, "teacher_to_evaluation")) return teacher_to_evaluation();
    if (iequals(name, "student_to_evaluation")) return student_to_evaluation();
    if (iequals(name, "teacher_to_student")) return teacher_to_student();
    if (iequals(name, "gdw_to_evaluation")) return gdw_to_evaluation();
    if (iequals(name, "esa_to_evaluation")) return esa_to_evaluation();
    if (iequals(name, "esri_to_evaluation")) return esri_to_evaluation();
    if (name.starts_with("identity:")) return RemapTable::identity(load_scheme(std::string(name.substr(9))));
    throw ValidationError("unknown remap table '" + std::string(name) + "'");
}

RemapTable load_remap(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) return RemapTable::load(name_or_path);
    return builtin_remap(name_or_path);
}

namespace {
[[noreturn]] void throw_bad_pixel(const MaskRaster& mask, std::size_t idx, const ClassScheme& scheme) {
    std::ostringstream os;
    os << "pixel (col " << idx % mask.width() << ", row " << idx / mask.width() << ") has value "
       << static_cast<int>(mask.values()[idx]) << " outside scheme '" << scheme.name() << "' (" << scheme.size()
       << " classes)";
    throw ValidationError(os.str());
}
}  // namespace

void check_mask_in_scheme(const MaskRaster& mask, const ClassScheme& scheme) {
    const auto& v = mask.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] >= scheme.size()) throw_bad_pixel(mask, i, scheme);
}

MaskRaster remap(const MaskRaster& mask, const RemapTable& table) {
    check_mask_in_scheme(mask, table.source());
    MaskRaster out(mask.grid());
    const auto& src = mask.values();
    auto& dst = out.values();
    const auto& m = table.mapping();
    parallel::for_chunks(src.size(), 1 << 16, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) dst[i] = m[src[i]];
    });
    return out;
}

}  // namespace lulc
