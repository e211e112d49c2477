#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "lulc/error.hpp"
#include "lulc/raster_io.hpp"
#include "oracles.hpp"

using namespace lulc;

namespace {

/// Minimal TIFF writer for test fixtures, independent of the library codec.
class TiffBuilder {
public:
    explicit TiffBuilder(bool big_endian) : be_(big_endian) {}

    struct Entry {
        std::uint16_t tag, type;
        std::uint32_t count;
        std::string data;  // already encoded
    };

    void u16(std::string& s, std::uint16_t v) const {
        if (be_) s += {char(v >> 8), char(v & 0xff)};
        else s += {char(v & 0xff), char(v >> 8)};
    }
    void u32(std::string& s, std::uint32_t v) const {
        for (int i = 0; i < 4; ++i) {
            const int shift = be_ ? 8 * (3 - i) : 8 * i;
            s += char((v >> shift) & 0xff);
        }
    }
    void f64(std::string& s, double d) const {
        std::uint64_t v;
        std::memcpy(&v, &d, 8);
        for (int i = 0; i < 8; ++i) {
            const int shift = be_ ? 8 * (7 - i) : 8 * i;
            s += char((v >> shift) & 0xff);
        }
    }

    void short_tag(std::uint16_t tag, std::vector<std::uint16_t> vals) {
        std::string d;
        for (auto v : vals) u16(d, v);
        entries_.push_back({tag, 3, std::uint32_t(vals.size()), d});
    }
    void long_tag(std::uint16_t tag, std::vector<std::uint32_t> vals) {
        std::string d;
        for (auto v : vals) u32(d, v);
        entries_.push_back({tag, 4, std::uint32_t(vals.size()), d});
    }
    void double_tag(std::uint16_t tag, std::vector<double> vals) {
        std::string d;
        for (auto v : vals) f64(d, v);
        entries_.push_back({tag, 12, std::uint32_t(vals.size()), d});
    }

    /// Layout: header, pixel strips, IFD, out-of-line tag data.
    std::string build(const std::vector<std::string>& strips) {
        std::string out = be_ ? "MM" : "II";
        u16(out, 42);
        std::uint32_t pos = 8;
        std::vector<std::uint32_t> offsets, counts;
        for (const auto& s : strips) {
            offsets.push_back(pos);
            counts.push_back(std::uint32_t(s.size()));
            pos += std::uint32_t(s.size());
        }
        long_tag(273, offsets);
        long_tag(279, counts);
        std::sort(entries_.begin(), entries_.end(), [](auto& a, auto& b) { return a.tag < b.tag; });
        u32(out, pos);
        for (const auto& s : strips) out += s;
        std::uint32_t extra = pos + 2 + 12 * std::uint32_t(entries_.size()) + 4;
        std::string ifd, tail;
        u16(ifd, std::uint16_t(entries_.size()));
        for (const auto& e : entries_) {
            u16(ifd, e.tag);
            u16(ifd, e.type);
            u32(ifd, e.count);
            if (e.data.size() <= 4) {
                std::string d = e.data;
                d.resize(4, '\0');
                ifd += d;
            } else {
                u32(ifd, extra + std::uint32_t(tail.size()));
                tail += e.data;
            }
        }
        u32(ifd, 0);
        return out + ifd + tail;
    }

private:
    bool be_;
    std::vector<Entry> entries_;
};

}  // namespace

TEST_CASE("native container round-trips every raster kind") {
    const Grid g{500000.0, 9000000.0, 0.331, 5, 3};
    Rng rng(3);
    MaskRaster m = oracle::random_mask(rng, 5, 3, 9);
    m = MaskRaster(g, m.values());
    const MaskFile mf = decode_mask(encode_mask(m, "teacher", RasterFormat::Native));
    CHECK(mf.mask == m);
    CHECK(mf.scheme == "teacher");

    BandRaster img(g, 3);
    for (auto& v : img.values()) v = static_cast<float>(rng.normal());
    img.nodata = -9999.0;
    const BandRaster back = decode_image(encode_image(img, RasterFormat::Native));
    CHECK(back == img);

    ProbRaster p(g, 4);
    for (auto& v : p.values()) v = static_cast<float>(rng.uniform01());
    const ProbFile pf = decode_probs(encode_probs(p, "student", RasterFormat::Native));
    CHECK(pf.probs == p);
    CHECK(pf.scheme == "student");
}

TEST_CASE("native header layout: magic, length, JSON, payload") {
    const MaskRaster m(Grid{0, 2, 1, 2, 2}, {1, 2, 3, 4});
    const std::string bytes = encode_mask(m, "", RasterFormat::Native);
    CHECK(bytes.substr(0, 8) == "LULCRAS1");
    std::uint32_t len;
    std::memcpy(&len, bytes.data() + 8, 4);
    CHECK(bytes.size() == 12 + len + 4);
    CHECK(bytes.substr(12 + len) == std::string("\x01\x02\x03\x04", 4));
    const auto header = nlohmann::json::parse(bytes.substr(12, len));
    CHECK(header["dtype"] == "uint8");
    CHECK(header["width"] == 2);
}

TEST_CASE("GeoTIFF round-trips masks, multi-band images and probabilities") {
    const Grid g{-20.0, 40.0, 2.5, 7, 4};
    Rng rng(8);
    const MaskRaster m(g, oracle::random_mask(rng, 7, 4, 6).values());
    const std::string tif = encode_mask(m, "synthetic", RasterFormat::GeoTiff);
    CHECK(tif.substr(0, 4) == std::string("II*\0", 4));
    const MaskFile mf = decode_mask(tif);
    CHECK(mf.mask == m);
    CHECK(mf.scheme == "synthetic");

    BandRaster img(g, 4);
    for (auto& v : img.values()) v = static_cast<float>(rng.uniform(-5, 5));
    CHECK(decode_image(encode_image(img, RasterFormat::GeoTiff)) == img);

    ProbRaster p(g, 3);
    for (auto& v : p.values()) v = static_cast<float>(rng.uniform01());
    CHECK(decode_probs(encode_probs(p, "", RasterFormat::GeoTiff)).probs == p);
}

TEST_CASE("hand-built big-endian chunky uint16 TIFF decodes") {
    TiffBuilder b(true);
    b.short_tag(256, {3});        // width
    b.short_tag(257, {2});        // height
    b.short_tag(258, {16, 16});   // bits
    b.short_tag(259, {1});        // no compression
    b.short_tag(262, {1});
    b.short_tag(277, {2});        // samples per pixel
    b.short_tag(278, {1});        // one row per strip
    b.short_tag(284, {1});        // chunky
    b.double_tag(33550, {10.0, 10.0, 0.0});
    b.double_tag(33922, {0.0, 0.0, 0.0, 1000.0, 2000.0, 0.0});
    std::vector<std::string> strips(2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c)
            for (int band = 0; band < 2; ++band) b.u16(strips[r], std::uint16_t(1000 * band + 10 * r + c));
    const BandRaster img = decode_image(b.build(strips));
    CHECK(img.grid() == Grid{1000.0, 2000.0, 10.0, 3, 2});
    CHECK(img.bands() == 2);
    for (int band = 0; band < 2; ++band)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) CHECK(img.at(band, c, r) == float(1000 * band + 10 * r + c));
}

TEST_CASE("GeoTIFF features outside the supported subset are rejected") {
    auto base = [](TiffBuilder& b) {
        b.short_tag(256, {2});
        b.short_tag(257, {1});
        b.short_tag(258, {8});
        b.short_tag(262, {1});
        b.short_tag(277, {1});
        b.short_tag(278, {1});
    };
    SUBCASE("compression") {
        TiffBuilder b(false);
        base(b);
        b.short_tag(259, {5});
        b.double_tag(33550, {1.0, 1.0, 0.0});
        b.double_tag(33922, {0, 0, 0, 0, 0, 0});
        CHECK_THROWS_AS(decode_mask(b.build({std::string("\x01\x02", 2)})), ValidationError);
    }
    SUBCASE("rotation") {
        TiffBuilder b(false);
        base(b);
        b.short_tag(259, {1});
        b.double_tag(34264, {1, 0.5, 0, 0, 0.5, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
        CHECK_THROWS_AS(decode_mask(b.build({std::string("\x01\x02", 2)})), ValidationError);
    }
    SUBCASE("non-square pixels") {
        TiffBuilder b(false);
        base(b);
        b.short_tag(259, {1});
        b.double_tag(33550, {1.0, 2.0, 0.0});
        b.double_tag(33922, {0, 0, 0, 0, 0, 0});
        CHECK_THROWS_AS(decode_mask(b.build({std::string("\x01\x02", 2)})), ValidationError);
    }
    SUBCASE("no georeferencing") {
        TiffBuilder b(false);
        base(b);
        b.short_tag(259, {1});
        CHECK_THROWS_AS(decode_mask(b.build({std::string("\x01\x02", 2)})), ValidationError);
    }
}

TEST_CASE("corrupt native containers are rejected") {
    const MaskRaster m(Grid{0, 2, 1, 2, 2}, {1, 2, 3, 4});
    std::string bytes = encode_mask(m, "", RasterFormat::Native);
    CHECK_THROWS_AS(decode_mask(bytes.substr(0, bytes.size() - 1)), ValidationError);
    CHECK_THROWS_AS(decode_mask("LULCRAS1"), ValidationError);
    CHECK_THROWS_AS(decode_mask("garbage bytes"), ValidationError);
    CHECK_THROWS_AS(decode_mask(encode_image(BandRaster(m.grid(), 1), RasterFormat::Native)), ValidationError);
}

TEST_CASE("files: extension selects the format and read_grid reads headers") {
    const auto dir = std::filesystem::temp_directory_path() / "lulc_io_test";
    std::filesystem::remove_all(dir);
    const MaskRaster m(Grid{5, 10, 0.5, 3, 2}, {0, 1, 2, 3, 4, 5});
    write_mask(dir / "a.tif", m, "teacher");
    write_mask(dir / "sub" / "a.lulc", m);
    CHECK(read_file_bytes(dir / "a.tif").substr(0, 2) == "II");
    CHECK(read_file_bytes(dir / "sub" / "a.lulc").substr(0, 8) == "LULCRAS1");
    CHECK(read_mask(dir / "a.tif").mask == m);
    CHECK(read_grid(dir / "sub" / "a.lulc") == m.grid());
    CHECK_THROWS_AS(read_mask(dir / "missing.lulc"), ValidationError);
    std::filesystem::remove_all(dir);
}
