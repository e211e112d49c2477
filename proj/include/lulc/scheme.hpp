#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lulc/raster.hpp"

namespace lulc {

/// Where a class scheme comes from.
enum class SchemeSource { Teacher, Student, Gdw, Esa, Esri, External };

std::string_view to_string(SchemeSource s);
SchemeSource scheme_source_from_string(std::string_view s);

inline constexpr std::string_view kUnlabeledName = "Unlabeled";
inline constexpr std::string_view kNegativeName = "Negative";
inline constexpr std::string_view kOthersName = "Others";

/// Ordered LULC class list. Index 0 is always "Unlabeled"; class names are
/// unique under case-insensitive comparison.
class ClassScheme {
public:
    ClassScheme() = default;
    /// `classes` lists the labeled classes only; "Unlabeled" is prepended.
    ClassScheme(std::string name, const std::vector<std::string>& classes,
                std::optional<std::string> negative_class = std::nullopt,
                SchemeSource source = SchemeSource::External);

    const std::string& name() const { return name_; }
    SchemeSource source() const { return source_; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    /// Labeled classes (size() - 1).
    std::size_t class_count() const { return names_.size() - 1; }
    const std::string& name_of(ClassIndex i) const { return names_.at(i); }
    std::optional<ClassIndex> negative_index() const { return negative_; }
    bool is_negative(ClassIndex i) const { return negative_ && *negative_ == i; }

    /// Case-insensitive lookup.
    std::optional<ClassIndex> find(std::string_view name) const;
    /// Lookup that throws ValidationError naming the scheme.
    ClassIndex index_of(std::string_view name) const;

    nlohmann::json to_json() const;
    static ClassScheme from_json(const nlohmann::json& j);

    bool operator==(const ClassScheme&) const = default;

private:
    std::string name_;
    std::vector<std::string> names_;
    std::optional<ClassIndex> negative_;
    SchemeSource source_ = SchemeSource::External;
};

bool iequals(std::string_view a, std::string_view b);

/// Teacher classes: Built-up split into Building and Road, plus the Negative class.
ClassScheme teacher_scheme();
/// Student classes, as listed for the student model (Built-up and Road).
ClassScheme student_scheme();
/// Common comparison scheme: seven LULC classes plus Others.
ClassScheme evaluation_scheme();
ClassScheme gdw_scheme();
ClassScheme esa_scheme();
ClassScheme esri_scheme();
/// Classes rendered by the synthetic scene generator, plus Negative.
ClassScheme synthetic_scheme();

/// Names accepted by builtin_scheme().
std::vector<std::string> builtin_scheme_names();
/// Throws ValidationError for unknown names.
ClassScheme builtin_scheme(std::string_view name);
/// Built-in name, or a path to a JSON scheme file.
ClassScheme load_scheme(const std::string& name_or_path);

/// Total mapping from every source class to one target class.
class RemapTable {
public:
    RemapTable() = default;
    RemapTable(ClassScheme source, ClassScheme target, std::vector<ClassIndex> mapping,
               std::optional<ClassIndex> others = std::nullopt);

    /// Builds a table from name pairs. Source classes without an entry map to the
    /// same-named target class; a source class with neither is an error.
    /// `others` defaults to the target class named "Others" when present.
    static RemapTable from_names(const ClassScheme& source, const ClassScheme& target,
                                 const std::vector<std::pair<std::string, std::string>>& pairs,
                                 std::optional<std::string> others = std::nullopt);
    static RemapTable identity(const ClassScheme& scheme);

    /// JSON form {source, target, map: {name: name}, others?}. Scheme names are
    /// resolved with load_scheme unless overridden.
    static RemapTable from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static RemapTable load(const std::filesystem::path& path);

    const ClassScheme& source() const { return source_; }
    const ClassScheme& target() const { return target_; }
    const std::vector<ClassIndex>& mapping() const { return mapping_; }
    std::optional<ClassIndex> others() const { return others_; }
    ClassIndex operator()(ClassIndex source_class) const { return mapping_.at(source_class); }

private:
    ClassScheme source_;
    ClassScheme target_;
    std::vector<ClassIndex> mapping_;
    std::optional<ClassIndex> others_;
};

/// Building and Road merge into Built-up; Flooded Vegetation and Negative become Others.
RemapTable teacher_to_evaluation();
RemapTable student_to_evaluation();
RemapTable teacher_to_student();
RemapTable gdw_to_evaluation();
RemapTable esa_to_evaluation();
RemapTable esri_to_evaluation();

/// Built-in table by "<source>_to_<target>" name, or "identity:<scheme>".
RemapTable builtin_remap(std::string_view name);
std::vector<std::string> builtin_remap_names();
/// Built-in table name, or path to a JSON table file.
RemapTable load_remap(const std::string& name_or_path);

/// Applies a remap table. Throws ValidationError naming the first pixel whose
/// value lies outside the source scheme.
MaskRaster remap(const MaskRaster& mask, const RemapTable& table);

/// Throws ValidationError naming the first pixel whose value is >= scheme size.
void check_mask_in_scheme(const MaskRaster& mask, const ClassScheme& scheme);

}  // namespace lulc
