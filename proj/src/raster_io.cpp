#include "lulc/raster_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lulc/error.hpp"
#include "raster_file.hpp"

namespace lulc {
namespace {

using detail::RasterFile;
using detail::SampleType;
using nlohmann::json;

constexpr char kMagic[8] = {'L', 'U', 'L', 'C', 'R', 'A', 'S', '1'};

static_assert(std::endian::native == std::endian::little, "native raster codec assumes little-endian");

std::string encode_native(const RasterFile& f) {
    json header = f.meta;
    header["format_version"] = 1;
    header["origin_x"] = f.grid.origin_x;
    header["origin_y"] = f.grid.origin_y;
    header["res"] = f.grid.res;
    header["width"] = f.grid.width;
    header["height"] = f.grid.height;
    header["bands"] = f.bands;
    header["dtype"] = f.type == SampleType::UInt8 ? "uint8" : "float32";
    if (f.nodata) header["nodata"] = *f.nodata;
    const std::string text = header.dump();

    std::string out(kMagic, sizeof kMagic);
    const auto len = static_cast<std::uint32_t>(text.size());
    out.append(reinterpret_cast<const char*>(&len), 4);
    out += text;
    if (f.type == SampleType::UInt8) {
        out.append(reinterpret_cast<const char*>(f.u8.data()), f.u8.size());
    } else {
        out.append(reinterpret_cast<const char*>(f.f32.data()), f.f32.size() * sizeof(float));
    }
    return out;
}

RasterFile decode_native(const std::string& bytes) {
    if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw ValidationError("not a native raster container (bad magic)");
    std::uint32_t len = 0;
    std::memcpy(&len, bytes.data() + 8, 4);
    if (bytes.size() < 12 + static_cast<std::size_t>(len)) throw ValidationError("truncated raster header");
    json header;
    try {
        header = json::parse(bytes.substr(12, len));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed raster header: ") + e.what());
    }

    RasterFile f;
    try {
        f.grid = {header.at("origin_x").get<double>(), header.at("origin_y").get<double>(),
                  header.at("res").get<double>(), header.at("width").get<std::size_t>(),
                  header.at("height").get<std::size_t>()};
        f.bands = header.at("bands").get<std::size_t>();
        const std::string dtype = header.at("dtype").get<std::string>();
        if (dtype == "uint8") f.type = SampleType::UInt8;
        else if (dtype == "float32") f.type = SampleType::Float32;
        else throw ValidationError("unsupported raster dtype '" + dtype + "'");
        if (header.contains("nodata")) f.nodata = header.at("nodata").get<double>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("raster header field error: ") + e.what());
    }
    f.grid.validate();
    for (const char* k : {"format_version", "origin_x", "origin_y", "res", "width", "height", "bands", "dtype", "nodata"})
        header.erase(k);
    f.meta = header;

    const std::size_t count = f.bands * f.grid.size();
    const std::size_t payload = 12 + static_cast<std::size_t>(len);
    const std::size_t need = count * (f.type == SampleType::UInt8 ? 1 : 4);
    if (bytes.size() - payload != need) {
        std::ostringstream os;
        os << "raster payload has " << bytes.size() - payload << " bytes, header implies " << need;
        throw ValidationError(os.str());
    }
    if (f.type == SampleType::UInt8) {
        f.u8.assign(bytes.begin() + static_cast<std::ptrdiff_t>(payload), bytes.end());
    } else {
        f.f32.resize(count);
        std::memcpy(f.f32.data(), bytes.data() + payload, need);
    }
    return f;
}

std::string encode(const RasterFile& f, RasterFormat format) {
    return format == RasterFormat::GeoTiff ? detail::encode_geotiff(f) : encode_native(f);
}

RasterFile decode(const std::string& bytes) {
    return detail::looks_like_tiff(bytes) ? detail::decode_geotiff(bytes) : decode_native(bytes);
}

std::string kind_of(const RasterFile& f) {
    return f.meta.contains("kind") && f.meta["kind"].is_string() ? f.meta["kind"].get<std::string>() : "";
}

std::string scheme_of(const RasterFile& f) {
    return f.meta.contains("scheme") && f.meta["scheme"].is_string() ? f.meta["scheme"].get<std::string>() : "";
}

RasterFile mask_file(const MaskRaster& mask, const std::string& scheme) {
    RasterFile f;
    f.grid = mask.grid();
    f.bands = 1;
    f.type = SampleType::UInt8;
    f.u8 = mask.values();
    f.meta["kind"] = "mask";
    if (!scheme.empty()) f.meta["scheme"] = scheme;
    return f;
}

RasterFile image_file(const BandRaster& image) {
    RasterFile f;
    f.grid = image.grid();
    f.bands = image.bands();
    f.type = SampleType::Float32;
    f.f32 = image.values();
    f.nodata = image.nodata;
    f.meta["kind"] = "image";
    return f;
}

RasterFile prob_file(const ProbRaster& probs, const std::string& scheme) {
    RasterFile f;
    f.grid = probs.grid();
    f.bands = probs.classes();
    f.type = SampleType::Float32;
    f.f32 = probs.values();
    f.meta["kind"] = "probabilities";
    f.meta["first_class"] = 1;
    if (!scheme.empty()) f.meta["scheme"] = scheme;
    return f;
}

}  // namespace

RasterFormat format_for_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".tif" || ext == ".tiff" ? RasterFormat::GeoTiff : RasterFormat::Native;
}

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_bytes(const std::filesystem::path& path, const std::string& bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ProcessingError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ProcessingError("write to '" + path.string() + "' failed");
}

std::string encode_mask(const MaskRaster& mask, const std::string& scheme, RasterFormat format) {
    return encode(mask_file(mask, scheme), format);
}

std::string encode_image(const BandRaster& image, RasterFormat format) {
    return encode(image_file(image), format);
}

std::string encode_probs(const ProbRaster& probs, const std::string& scheme, RasterFormat format) {
    return encode(prob_file(probs, scheme), format);
}

MaskFile decode_mask(const std::string& bytes) {
    RasterFile f = decode(bytes);
    if (f.bands != 1 || f.type != SampleType::UInt8)
        throw ValidationError("mask rasters must be single-band uint8");
    return {MaskRaster(f.grid, std::move(f.u8)), scheme_of(f)};
}

BandRaster decode_image(const std::string& bytes) {
    RasterFile f = decode(bytes);
    std::vector<float> values;
    if (f.type == SampleType::UInt8) values.assign(f.u8.begin(), f.u8.end());
    else values = std::move(f.f32);
    BandRaster image(f.grid, f.bands, std::move(values));
    image.nodata = f.nodata;
    return image;
}

ProbFile decode_probs(const std::string& bytes) {
    RasterFile f = decode(bytes);
    if (f.type != SampleType::Float32) throw ValidationError("probability rasters must be float32");
    if (const std::string kind = kind_of(f); !kind.empty() && kind != "probabilities")
        throw ValidationError("raster kind '" + kind + "' is not a probability raster");
    ProbRaster probs(f.grid, f.bands);
    probs.values() = std::move(f.f32);
    return {std::move(probs), scheme_of(f)};
}

void write_mask(const std::filesystem::path& path, const MaskRaster& mask, const std::string& scheme) {
    write_file_bytes(path, encode_mask(mask, scheme, format_for_path(path)));
}

MaskFile read_mask(const std::filesystem::path& path) { return decode_mask(read_file_bytes(path)); }

void write_image(const std::filesystem::path& path, const BandRaster& image) {
    write_file_bytes(path, encode_image(image, format_for_path(path)));
}

BandRaster read_image(const std::filesystem::path& path) { return decode_image(read_file_bytes(path)); }

void write_probs(const std::filesystem::path& path, const ProbRaster& probs, const std::string& scheme) {
    write_file_bytes(path, encode_probs(probs, scheme, format_for_path(path)));
}

ProbFile read_probs(const std::filesystem::path& path) { return decode_probs(read_file_bytes(path)); }

Grid read_grid(const std::filesystem::path& path) { return decode(read_file_bytes(path)).grid; }

}  // namespace lulc
