#include "lulc/checkpoint.hpp"

#include <bit>
#include <cstring>

#include <json.hpp>

#include "lulc/error.hpp"
#include "lulc/raster_io.hpp"

namespace lulc {
namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'L', 'U', 'L', 'C', 'C', 'K', 'P', '1'};

static_assert(std::endian::native == std::endian::little, "checkpoint codec assumes little-endian");

}  // namespace

std::string encode_checkpoint(const PixelClassifier& model, const ClassScheme& scheme) {
    const ModelSpec& spec = model.spec();
    if (scheme.class_count() != spec.classes)
        throw ValidationError("checkpoint scheme '" + scheme.name() + "' does not match the model class count");
    json header;
    header["format_version"] = 1;
    header["spec"] = {{"radius", spec.radius},
                      {"hidden", spec.hidden},
                      {"classes", spec.classes},
                      {"bands", spec.bands},
                      {"seed", spec.seed}};
    header["scheme"] = scheme.to_json();
    header["standardizer"] = {{"mean", model.standardizer().mean}, {"stddev", model.standardizer().stddev}};
    header["parameter_count"] = model.parameters().size();
    const std::string text = header.dump();

    std::string out(kMagic, sizeof kMagic);
    const auto len = static_cast<std::uint32_t>(text.size());
    out.append(reinterpret_cast<const char*>(&len), 4);
    out += text;
    for (double p : model.parameters()) {
        const auto f = static_cast<float>(p);
        out.append(reinterpret_cast<const char*>(&f), 4);
    }
    return out;
}

Checkpoint decode_checkpoint(const std::string& bytes) {
    if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw ValidationError("not a model checkpoint (bad magic)");
    std::uint32_t len = 0;
    std::memcpy(&len, bytes.data() + 8, 4);
    if (bytes.size() < 12 + static_cast<std::size_t>(len)) throw ValidationError("truncated checkpoint header");
    try {
        const json header = json::parse(bytes.substr(12, len));
        if (header.at("format_version").get<int>() != 1) throw ValidationError("unsupported checkpoint version");
        const json& js = header.at("spec");
        ModelSpec spec;
        spec.radius = js.at("radius").get<std::size_t>();
        spec.hidden = js.at("hidden").get<std::vector<std::size_t>>();
        spec.classes = js.at("classes").get<std::size_t>();
        spec.bands = js.at("bands").get<std::size_t>();
        spec.seed = js.at("seed").get<std::uint64_t>();

        Checkpoint ck{PixelClassifier(spec), ClassScheme::from_json(header.at("scheme"))};
        if (ck.scheme.class_count() != spec.classes)
            throw ValidationError("checkpoint scheme does not match the model class count");
        auto& st = ck.model.standardizer();
        st.mean = header.at("standardizer").at("mean").get<std::vector<double>>();
        st.stddev = header.at("standardizer").at("stddev").get<std::vector<double>>();
        if (st.mean.size() != spec.bands || st.stddev.size() != spec.bands)
            throw ValidationError("checkpoint standardizer does not match the band count");

        const auto count = header.at("parameter_count").get<std::size_t>();
        auto& params = ck.model.parameters();
        if (count != params.size()) throw ValidationError("checkpoint parameter count does not match its spec");
        const std::size_t offset = 12 + len;
        if (bytes.size() != offset + 4 * count) throw ValidationError("checkpoint parameter block has the wrong size");
        for (std::size_t i = 0; i < count; ++i) {
            float f;
            std::memcpy(&f, bytes.data() + offset + 4 * i, 4);
            params[i] = f;
        }
        return ck;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed checkpoint header: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path& path, const PixelClassifier& model, const ClassScheme& scheme) {
    write_file_bytes(path, encode_checkpoint(model, scheme));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) { return decode_checkpoint(read_file_bytes(path)); }

}  // namespace lulc
