// Minimal GeoTIFF codec: uncompressed strips, north-up georeferencing only.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

#include "lulc/error.hpp"
#include "raster_file.hpp"

namespace lulc::detail {
namespace {

enum Tag : std::uint16_t {
    kImageWidth = 256,
    kImageLength = 257,
    kBitsPerSample = 258,
    kCompression = 259,
    kPhotometric = 262,
    kImageDescription = 270,
    kStripOffsets = 273,
    kSamplesPerPixel = 277,
    kRowsPerStrip = 278,
    kStripByteCounts = 279,
    kPlanarConfig = 284,
    kTileWidth = 322,
    kSampleFormat = 339,
    kModelPixelScale = 33550,
    kModelTiepoint = 33922,
    kModelTransformation = 34264,
    kGeoKeyDirectory = 34735,
    kGdalNodata = 42113,
};

enum FieldType : std::uint16_t {
    kByte = 1,
    kAscii = 2,
    kShort = 3,
    kLong = 4,
    kRational = 5,
    kSByte = 6,
    kUndefined = 7,
    kSShort = 8,
    kSLong = 9,
    kSRational = 10,
    kFloat = 11,
    kDouble = 12,
};

std::size_t type_size(std::uint16_t type) {
    switch (type) {
        case kByte: case kAscii: case kSByte: case kUndefined: return 1;
        case kShort: case kSShort: return 2;
        case kLong: case kSLong: case kFloat: return 4;
        case kRational: case kSRational: case kDouble: return 8;
        default: return 0;
    }
}

// ---------------------------------------------------------------- writing

class LeWriter {
public:
    void u16(std::uint16_t v) { raw(&v, 2); }
    void u32(std::uint32_t v) { raw(&v, 4); }
    void f64(double v) { raw(&v, 8); }
    void bytes(const void* p, std::size_t n) {
        const auto* c = static_cast<const char*>(p);
        out_.append(c, n);
    }
    void pad_to_even() {
        if (out_.size() % 2) out_.push_back('\0');
    }
    std::size_t size() const { return out_.size(); }
    std::string& str() { return out_; }
    void patch_u32(std::size_t at, std::uint32_t v) {
        static_assert(std::endian::native == std::endian::little);
        std::memcpy(out_.data() + at, &v, 4);
    }

private:
    void raw(const void* p, std::size_t n) {
        static_assert(std::endian::native == std::endian::little,
                      "codec assumes a little-endian host");
        bytes(p, n);
    }
    std::string out_;
};

struct OutEntry {
    std::uint16_t tag;
    std::uint16_t type;
    std::uint32_t count;
    std::string data;  // already little-endian encoded
};

template <typename T>
std::string pack(const std::vector<T>& v) {
    std::string s(v.size() * sizeof(T), '\0');
    if (!v.empty()) std::memcpy(s.data(), v.data(), s.size());
    return s;
}

OutEntry short_entry(std::uint16_t tag, std::vector<std::uint16_t> v) {
    return {tag, kShort, static_cast<std::uint32_t>(v.size()), pack(v)};
}
OutEntry long_entry(std::uint16_t tag, std::vector<std::uint32_t> v) {
    return {tag, kLong, static_cast<std::uint32_t>(v.size()), pack(v)};
}
OutEntry double_entry(std::uint16_t tag, std::vector<double> v) {
    return {tag, kDouble, static_cast<std::uint32_t>(v.size()), pack(v)};
}
OutEntry ascii_entry(std::uint16_t tag, const std::string& s) {
    std::string data = s;
    data.push_back('\0');
    return {tag, kAscii, static_cast<std::uint32_t>(data.size()), data};
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- reading

class Reader {
public:
    explicit Reader(const std::string& bytes) : b_(bytes) {
        if (bytes.size() < 8) throw ValidationError("TIFF stream too short");
        if (bytes[0] == 'I' && bytes[1] == 'I') big_ = false;
        else if (bytes[0] == 'M' && bytes[1] == 'M') big_ = true;
        else throw ValidationError("not a TIFF stream");
        if (u16(2) != 42) throw ValidationError("unsupported TIFF variant (BigTIFF?)");
    }

    bool big_endian() const { return big_; }

    void need(std::size_t off, std::size_t n) const {
        if (off > b_.size() || n > b_.size() - off) throw ValidationError("truncated TIFF stream");
    }
    std::uint64_t uint(std::size_t off, std::size_t n) const {
        need(off, n);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto byte = static_cast<std::uint8_t>(b_[off + (big_ ? i : n - 1 - i)]);
            v = (v << 8) | byte;
        }
        return v;
    }
    std::uint16_t u16(std::size_t off) const { return static_cast<std::uint16_t>(uint(off, 2)); }
    std::uint32_t u32(std::size_t off) const { return static_cast<std::uint32_t>(uint(off, 4)); }
    float f32(std::size_t off) const { return std::bit_cast<float>(u32(off)); }
    double f64(std::size_t off) const { return std::bit_cast<double>(uint(off, 8)); }
    const std::string& bytes() const { return b_; }

private:
    const std::string& b_;
    bool big_ = false;
};

struct InEntry {
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::size_t offset = 0;  // where the values live
};

using Directory = std::map<std::uint16_t, InEntry>;

std::vector<double> numbers(const Reader& r, const InEntry& e) {
    std::vector<double> out;
    out.reserve(e.count);
    const std::size_t sz = type_size(e.type);
    for (std::uint32_t i = 0; i < e.count; ++i) {
        const std::size_t off = e.offset + i * sz;
        switch (e.type) {
            case kByte: case kUndefined: out.push_back(static_cast<double>(r.uint(off, 1))); break;
            case kSByte: out.push_back(static_cast<std::int8_t>(r.uint(off, 1))); break;
            case kShort: out.push_back(r.u16(off)); break;
            case kSShort: out.push_back(static_cast<std::int16_t>(r.u16(off))); break;
            case kLong: out.push_back(r.u32(off)); break;
            case kSLong: out.push_back(static_cast<std::int32_t>(r.u32(off))); break;
            case kFloat: out.push_back(r.f32(off)); break;
            case kDouble: out.push_back(r.f64(off)); break;
            case kRational:
                out.push_back(static_cast<double>(r.u32(off)) / std::max<std::uint32_t>(1, r.u32(off + 4)));
                break;
            default: throw ValidationError("unsupported TIFF field type");
        }
    }
    return out;
}

std::string ascii(const Reader& r, const InEntry& e) {
    r.need(e.offset, e.count);
    std::string s = r.bytes().substr(e.offset, e.count);
    while (!s.empty() && s.back() == '\0') s.pop_back();
    return s;
}

const InEntry& require(const Directory& d, std::uint16_t tag, const char* name) {
    auto it = d.find(tag);
    if (it == d.end()) throw ValidationError(std::string("TIFF is missing required tag ") + name);
    return it->second;
}

std::vector<double> optional_numbers(const Reader& r, const Directory& d, std::uint16_t tag) {
    auto it = d.find(tag);
    return it == d.end() ? std::vector<double>{} : numbers(r, it->second);
}

}  // namespace

bool looks_like_tiff(const std::string& bytes) {
    return bytes.size() >= 4 && ((bytes[0] == 'I' && bytes[1] == 'I' && bytes[2] == 42 && bytes[3] == 0) ||
                                 (bytes[0] == 'M' && bytes[1] == 'M' && bytes[2] == 0 && bytes[3] == 42));
}

std::string encode_geotiff(const RasterFile& file) {
    const Grid& g = file.grid;
    const std::size_t sample_bytes = file.type == SampleType::UInt8 ? 1 : 4;
    const std::size_t plane_bytes = g.size() * sample_bytes;
    const auto bands16 = static_cast<std::uint16_t>(file.bands);

    LeWriter w;
    w.bytes("II", 2);
    w.u16(42);
    w.u32(0);  // IFD offset, patched below

    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> counts;
    for (std::size_t b = 0; b < file.bands; ++b) {
        w.pad_to_even();
        offsets.push_back(static_cast<std::uint32_t>(w.size()));
        counts.push_back(static_cast<std::uint32_t>(plane_bytes));
        if (file.type == SampleType::UInt8) w.bytes(file.u8.data() + b * g.size(), plane_bytes);
        else w.bytes(file.f32.data() + b * g.size(), plane_bytes);
    }

    std::vector<OutEntry> entries;
    entries.push_back(long_entry(kImageWidth, {static_cast<std::uint32_t>(g.width)}));
    entries.push_back(long_entry(kImageLength, {static_cast<std::uint32_t>(g.height)}));
    entries.push_back(short_entry(kBitsPerSample,
                                  std::vector<std::uint16_t>(file.bands, static_cast<std::uint16_t>(sample_bytes * 8))));
    entries.push_back(short_entry(kCompression, {1}));
    entries.push_back(short_entry(kPhotometric, {1}));
    entries.push_back(ascii_entry(kImageDescription, file.meta.dump()));
    entries.push_back(long_entry(kStripOffsets, offsets));
    entries.push_back(short_entry(kSamplesPerPixel, {bands16}));
    entries.push_back(long_entry(kRowsPerStrip, {static_cast<std::uint32_t>(g.height)}));
    entries.push_back(long_entry(kStripByteCounts, counts));
    entries.push_back(short_entry(kPlanarConfig, {static_cast<std::uint16_t>(file.bands > 1 ? 2 : 1)}));
    entries.push_back(short_entry(kSampleFormat,
                                  std::vector<std::uint16_t>(file.bands, file.type == SampleType::UInt8 ? 1 : 3)));
    entries.push_back(double_entry(kModelPixelScale, {g.res, g.res, 0.0}));
    entries.push_back(double_entry(kModelTiepoint, {0.0, 0.0, 0.0, g.origin_x, g.origin_y, 0.0}));
    // GTModelType = projected, GTRasterType = PixelIsArea.
    entries.push_back(short_entry(kGeoKeyDirectory, {1, 1, 0, 2, 1024, 0, 1, 1, 1025, 0, 1, 1}));
    if (file.nodata) entries.push_back(ascii_entry(kGdalNodata, format_double(*file.nodata)));

    // Out-of-line values first, then the IFD.
    std::vector<std::uint32_t> value_offsets(entries.size(), 0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].data.size() > 4) {
            w.pad_to_even();
            value_offsets[i] = static_cast<std::uint32_t>(w.size());
            w.bytes(entries[i].data.data(), entries[i].data.size());
        }
    }
    w.pad_to_even();
    const auto ifd = static_cast<std::uint32_t>(w.size());
    w.u16(static_cast<std::uint16_t>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const OutEntry& e = entries[i];
        w.u16(e.tag);
        w.u16(e.type);
        w.u32(e.count);
        if (e.data.size() > 4) {
            w.u32(value_offsets[i]);
        } else {
            std::string inl = e.data;
            inl.resize(4, '\0');
            w.bytes(inl.data(), 4);
        }
    }
    w.u32(0);
    w.patch_u32(4, ifd);
    return std::move(w.str());
}

RasterFile decode_geotiff(const std::string& bytes) {
    Reader r(bytes);
    const std::size_t ifd = r.u32(4);
    const std::uint16_t n = r.u16(ifd);
    Directory dir;
    for (std::uint16_t i = 0; i < n; ++i) {
        const std::size_t at = ifd + 2 + 12 * static_cast<std::size_t>(i);
        InEntry e;
        const std::uint16_t tag = r.u16(at);
        e.type = r.u16(at + 2);
        e.count = r.u32(at + 4);
        const std::size_t sz = type_size(e.type);
        if (sz == 0) continue;
        e.offset = sz * e.count <= 4 ? at + 8 : r.u32(at + 8);
        r.need(e.offset, sz * e.count);
        dir[tag] = e;
    }

    if (dir.count(kTileWidth)) throw ValidationError("tiled TIFF layout is not supported");
    const auto compression = optional_numbers(r, dir, kCompression);
    if (!compression.empty() && compression[0] != 1)
        throw ValidationError("compressed TIFF is not supported (only Compression=1)");

    RasterFile out;
    const auto width = static_cast<std::size_t>(numbers(r, require(dir, kImageWidth, "ImageWidth"))[0]);
    const auto height = static_cast<std::size_t>(numbers(r, require(dir, kImageLength, "ImageLength"))[0]);
    const auto spp_v = optional_numbers(r, dir, kSamplesPerPixel);
    out.bands = spp_v.empty() ? 1 : static_cast<std::size_t>(spp_v[0]);
    const auto bps_v = optional_numbers(r, dir, kBitsPerSample);
    const std::size_t bits = bps_v.empty() ? 1 : static_cast<std::size_t>(bps_v[0]);
    for (double b : bps_v)
        if (static_cast<std::size_t>(b) != bits) throw ValidationError("mixed bit depths are not supported");
    const auto fmt_v = optional_numbers(r, dir, kSampleFormat);
    const int sample_format = fmt_v.empty() ? 1 : static_cast<int>(fmt_v[0]);
    const auto planar_v = optional_numbers(r, dir, kPlanarConfig);
    const bool planar = !planar_v.empty() && planar_v[0] == 2;
    const auto rps_v = optional_numbers(r, dir, kRowsPerStrip);
    const std::size_t rows_per_strip = rps_v.empty() ? height : std::min(height, static_cast<std::size_t>(rps_v[0]));
    const auto strip_offsets = numbers(r, require(dir, kStripOffsets, "StripOffsets"));

    if (bits != 8 && bits != 16 && bits != 32 && bits != 64)
        throw ValidationError("unsupported TIFF bit depth " + std::to_string(bits));
    if (sample_format == 3 && bits != 32 && bits != 64)
        throw ValidationError("unsupported floating-point TIFF bit depth");
    const std::size_t bytes_per_sample = bits / 8;

    // Georeferencing.
    const auto transform = optional_numbers(r, dir, kModelTransformation);
    if (!transform.empty()) {
        if (transform.size() < 16) throw ValidationError("malformed ModelTransformation tag");
        if (transform[1] != 0.0 || transform[4] != 0.0)
            throw ValidationError("rotated or sheared geotransform is not supported");
        if (transform[0] <= 0.0 || transform[5] != -transform[0])
            throw ValidationError("only north-up square-pixel grids are supported");
        out.grid = {transform[3], transform[7], transform[0], width, height};
    } else {
        const auto scale = optional_numbers(r, dir, kModelPixelScale);
        const auto tie = optional_numbers(r, dir, kModelTiepoint);
        if (scale.size() < 2 || tie.size() < 6)
            throw ValidationError("TIFF carries no georeferencing (ModelPixelScale/ModelTiepoint)");
        if (scale[0] != scale[1]) throw ValidationError("non-square pixels are not supported");
        out.grid = {tie[3] - tie[0] * scale[0], tie[4] + tie[1] * scale[1], scale[0], width, height};
    }
    out.grid.validate();

    if (auto it = dir.find(kImageDescription); it != dir.end()) {
        const std::string desc = ascii(r, it->second);
        auto parsed = nlohmann::json::parse(desc, nullptr, false);
        if (!parsed.is_discarded() && parsed.is_object()) out.meta = parsed;
    }
    if (auto it = dir.find(kGdalNodata); it != dir.end()) {
        const std::string s = ascii(r, it->second);
        try {
            out.nodata = std::stod(s);
        } catch (const std::exception&) {
            // Unparseable nodata strings are ignored.
        }
    }

    const bool integer = sample_format == 1 || sample_format == 2;
    out.type = (integer && bits == 8) ? SampleType::UInt8 : SampleType::Float32;
    const std::size_t npix = width * height;
    if (out.type == SampleType::UInt8) out.u8.resize(out.bands * npix);
    else out.f32.resize(out.bands * npix);

    auto sample_value = [&](std::size_t off) -> double {
        if (sample_format == 3) return bits == 32 ? static_cast<double>(r.f32(off)) : r.f64(off);
        const std::uint64_t raw = r.uint(off, bytes_per_sample);
        if (sample_format == 2) {
            const std::uint64_t sign = std::uint64_t{1} << (bits - 1);
            return static_cast<double>(static_cast<std::int64_t>(raw ^ sign) - static_cast<std::int64_t>(sign));
        }
        return static_cast<double>(raw);
    };
    auto store = [&](std::size_t band, std::size_t row, std::size_t col, std::size_t off) {
        const std::size_t idx = band * npix + row * width + col;
        if (out.type == SampleType::UInt8) out.u8[idx] = static_cast<std::uint8_t>(r.uint(off, 1));
        else out.f32[idx] = static_cast<float>(sample_value(off));
    };

    const std::size_t strips_per_plane = (height + rows_per_strip - 1) / rows_per_strip;
    const std::size_t planes = planar ? out.bands : 1;
    if (strip_offsets.size() < strips_per_plane * planes) throw ValidationError("TIFF strip table too short");
    for (std::size_t p = 0; p < planes; ++p) {
        for (std::size_t s = 0; s < strips_per_plane; ++s) {
            std::size_t off = static_cast<std::size_t>(strip_offsets[p * strips_per_plane + s]);
            const std::size_t row0 = s * rows_per_strip;
            const std::size_t row1 = std::min(height, row0 + rows_per_strip);
            for (std::size_t row = row0; row < row1; ++row) {
                for (std::size_t col = 0; col < width; ++col) {
                    if (planar) {
                        store(p, row, col, off);
                        off += bytes_per_sample;
                    } else {
                        for (std::size_t b = 0; b < out.bands; ++b) {
                            store(b, row, col, off);
                            off += bytes_per_sample;
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace lulc::detail
