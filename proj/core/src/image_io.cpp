#include "focusfuse/image_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace ff {

namespace {

// Decoded raster prior to gray/RGB conversion: interleaved [0,1] samples.
struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 or 3
    std::vector<double> samples;
};

[[noreturn]] void fail_unreadable(const std::string& path, const std::string& why) {
    throw std::runtime_error("unreadable file: " + path + " (" + why + ")");
}

std::vector<uint8_t> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_unreadable(path, "cannot open");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.empty()) fail_unreadable(path, "empty file");
    return bytes;
}

// ---------------------------------------------------------------- PGM (P5)

// Skips whitespace and '#' comments, then parses a nonnegative decimal token.
bool pgm_next_int(const std::vector<uint8_t>& b, size_t& pos, long& out) {
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    if (pos >= b.size() || !std::isdigit(b[pos])) return false;
    long v = 0;
    while (pos < b.size() && std::isdigit(b[pos])) {
        v = v * 10 + (b[pos] - '0');
        if (v > 1 << 30) return false;
        ++pos;
    }
    out = v;
    return true;
}

RawImage decode_pgm(const std::vector<uint8_t>& bytes, const std::string& path) {
    size_t pos = 2;  // past "P5"
    long w = 0, h = 0, maxval = 0;
    if (!pgm_next_int(bytes, pos, w) || !pgm_next_int(bytes, pos, h) ||
        !pgm_next_int(bytes, pos, maxval))
        fail_unreadable(path, "bad PGM header");
    if (w <= 0 || h <= 0) fail_unreadable(path, "zero-sized image");
    if (maxval <= 0 || maxval > 65535)
        throw std::runtime_error("unsupported bit depth in " + path + ": maxval " + std::to_string(maxval));
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) fail_unreadable(path, "bad PGM header");
    ++pos;  // single whitespace byte separates header and raster

    const int bpp = maxval > 255 ? 2 : 1;
    const size_t need = static_cast<size_t>(w) * h * bpp;
    if (bytes.size() - pos < need) fail_unreadable(path, "truncated pixel data");

    RawImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.channels = 1;
    img.samples.resize(static_cast<size_t>(w) * h);
    const double inv = 1.0 / static_cast<double>(maxval);
    for (size_t i = 0; i < img.samples.size(); ++i) {
        unsigned v = bpp == 1 ? bytes[pos + i]
                              : (static_cast<unsigned>(bytes[pos + 2 * i]) << 8) | bytes[pos + 2 * i + 1];
        img.samples[i] = v * inv;
    }
    return img;
}

// --------------------------------------------------------------------- PNG

constexpr uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

uint32_t be32(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

std::vector<uint8_t> zlib_inflate(const uint8_t* src, size_t n, size_t expected, const std::string& path) {
    std::vector<uint8_t> out(expected);
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) fail_unreadable(path, "zlib init failed");
    zs.next_in = const_cast<uint8_t*>(src);
    zs.avail_in = static_cast<uInt>(n);
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.avail_out != 0) fail_unreadable(path, "truncated pixel data");
    return out;
}

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    return pb <= pc ? b : c;
}

RawImage decode_png(const std::vector<uint8_t>& bytes, const std::string& path) {
    if (bytes.size() < 8 + 25 || std::memcmp(bytes.data(), kPngSig, 8) != 0)
        fail_unreadable(path, "bad PNG signature");

    size_t pos = 8;
    long w = 0, h = 0;
    int bit_depth = 0, color_type = 0;
    std::vector<uint8_t> idat;
    bool saw_ihdr = false, saw_iend = false;

    while (pos + 8 <= bytes.size()) {
        const uint32_t len = be32(&bytes[pos]);
        if (pos + 12 + static_cast<size_t>(len) > bytes.size()) fail_unreadable(path, "truncated chunk");
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const uint8_t* data = &bytes[pos + 8];
        const uint32_t crc_stored = be32(&bytes[pos + 8 + len]);
        uint32_t crc = crc32(0L, Z_NULL, 0);
        crc = crc32(crc, &bytes[pos + 4], len + 4);
        if (crc != crc_stored) fail_unreadable(path, "chunk CRC mismatch");

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) fail_unreadable(path, "bad IHDR");
            w = be32(data);
            h = be32(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            if (data[10] != 0 || data[11] != 0) fail_unreadable(path, "bad IHDR");
            if (data[12] != 0) throw std::runtime_error("unsupported PNG in " + path + ": interlaced");
            if (w <= 0 || h <= 0) fail_unreadable(path, "zero-sized image");
            if (bit_depth != 8 && bit_depth != 16)
                throw std::runtime_error("unsupported bit depth in " + path + ": " + std::to_string(bit_depth));
            if (color_type != 0 && color_type != 2)
                throw std::runtime_error("unsupported PNG color type in " + path + ": " + std::to_string(color_type));
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
            break;
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || !saw_iend || idat.empty()) fail_unreadable(path, "missing PNG chunks");

    const int channels = color_type == 2 ? 3 : 1;
    const int bpp = channels * bit_depth / 8;  // bytes per pixel
    const size_t stride = static_cast<size_t>(w) * bpp;
    std::vector<uint8_t> raw = zlib_inflate(idat.data(), idat.size(), (stride + 1) * h, path);

    // undo per-scanline filters in place
    std::vector<uint8_t> pix(stride * h);
    for (long y = 0; y < h; ++y) {
        const uint8_t filter = raw[(stride + 1) * y];
        const uint8_t* src = &raw[(stride + 1) * y + 1];
        uint8_t* dst = &pix[stride * y];
        const uint8_t* up = y > 0 ? &pix[stride * (y - 1)] : nullptr;
        for (size_t i = 0; i < stride; ++i) {
            const int a = i >= static_cast<size_t>(bpp) ? dst[i - bpp] : 0;
            const int b = up ? up[i] : 0;
            const int c = (up && i >= static_cast<size_t>(bpp)) ? up[i - bpp] : 0;
            int v = src[i];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default: fail_unreadable(path, "bad scanline filter");
            }
            dst[i] = static_cast<uint8_t>(v & 0xff);
        }
    }

    RawImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.channels = channels;
    img.samples.resize(static_cast<size_t>(w) * h * channels);
    if (bit_depth == 8) {
        for (size_t i = 0; i < img.samples.size(); ++i) img.samples[i] = pix[i] / 255.0;
    } else {
        for (size_t i = 0; i < img.samples.size(); ++i) {
            unsigned v = (static_cast<unsigned>(pix[2 * i]) << 8) | pix[2 * i + 1];
            img.samples[i] = v / 65535.0;
        }
    }
    return img;
}

RawImage decode_any(const std::string& path) {
    std::vector<uint8_t> bytes = read_all(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes, path);
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSig, 8) == 0) return decode_png(bytes, path);
    fail_unreadable(path, "not a P5 graymap or PNG");
}

std::string lower_ext(const std::string& path) {
    const size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

void write_all(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("unwritable path: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("unwritable path: " + path);
}

void append_be32(std::vector<uint8_t>& v, uint32_t x) {
    v.push_back(uint8_t(x >> 24));
    v.push_back(uint8_t(x >> 16));
    v.push_back(uint8_t(x >> 8));
    v.push_back(uint8_t(x));
}

void append_chunk(std::vector<uint8_t>& out, const char type[4], const std::vector<uint8_t>& data) {
    append_be32(out, static_cast<uint32_t>(data.size()));
    const size_t type_at = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    uint32_t crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, &out[type_at], static_cast<uInt>(4 + data.size()));
    append_be32(out, crc);
}

void encode_png(const std::string& path, int w, int h, int channels, const std::vector<uint8_t>& pix) {
    std::vector<uint8_t> out(kPngSig, kPngSig + 8);

    std::vector<uint8_t> ihdr;
    append_be32(ihdr, static_cast<uint32_t>(w));
    append_be32(ihdr, static_cast<uint32_t>(h));
    ihdr.push_back(8);                              // bit depth
    ihdr.push_back(channels == 3 ? 2 : 0);          // color type
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);                              // no interlace
    append_chunk(out, "IHDR", ihdr);

    const size_t stride = static_cast<size_t>(w) * channels;
    std::vector<uint8_t> raw((stride + 1) * h);
    for (int y = 0; y < h; ++y) {
        raw[(stride + 1) * y] = 0;  // filter: none
        std::memcpy(&raw[(stride + 1) * y + 1], &pix[stride * y], stride);
    }
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<uint8_t> comp(bound);
    if (compress2(comp.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
        throw std::runtime_error("PNG compression failed for " + path);
    comp.resize(bound);
    append_chunk(out, "IDAT", comp);
    append_chunk(out, "IEND", {});
    write_all(path, out);
}

}  // namespace

uint8_t quantize8(double v) {
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    return static_cast<uint8_t>(std::floor(v * 255.0 + 0.5));
}

GrayImage load_image(const std::string& path) {
    RawImage raw = decode_any(path);
    GrayImage img(raw.width, raw.height);
    if (raw.channels == 1) {
        img.data = std::move(raw.samples);
    } else {
        for (size_t i = 0; i < img.data.size(); ++i)
            img.data[i] = 0.299 * raw.samples[3 * i] + 0.587 * raw.samples[3 * i + 1] +
                          0.114 * raw.samples[3 * i + 2];
    }
    return img;
}

RgbImage load_rgb(const std::string& path) {
    RawImage raw = decode_any(path);
    RgbImage img;
    img.r = GrayImage(raw.width, raw.height);
    img.g = GrayImage(raw.width, raw.height);
    img.b = GrayImage(raw.width, raw.height);
    if (raw.channels == 1) {
        img.r.data = raw.samples;
        img.g.data = raw.samples;
        img.b.data = std::move(raw.samples);
    } else {
        for (size_t i = 0; i < img.r.data.size(); ++i) {
            img.r.data[i] = raw.samples[3 * i];
            img.g.data[i] = raw.samples[3 * i + 1];
            img.b.data[i] = raw.samples[3 * i + 2];
        }
    }
    return img;
}

bool image_is_rgb(const std::string& path) {
    return decode_any(path).channels == 3;
}

void save_image(const GrayImage& img, const std::string& path) {
    if (img.empty()) throw std::invalid_argument("save_image: empty image");
    std::vector<uint8_t> pix(img.pixel_count());
    for (size_t i = 0; i < pix.size(); ++i) pix[i] = quantize8(img.data[i]);

    const std::string ext = lower_ext(path);
    if (ext == ".pgm" || ext == ".pnm") {
        std::string header = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
        std::vector<uint8_t> out(header.begin(), header.end());
        out.insert(out.end(), pix.begin(), pix.end());
        write_all(path, out);
    } else if (ext == ".png") {
        encode_png(path, img.width, img.height, 1, pix);
    } else {
        throw std::runtime_error("unsupported output extension for " + path + " (use .pgm or .png)");
    }
}

void save_rgb(const RgbImage& img, const std::string& path) {
    if (!img.valid()) throw std::invalid_argument("save_rgb: invalid RGB image");
    if (lower_ext(path) != ".png")
        throw std::runtime_error("unsupported output extension for " + path + " (RGB output is PNG only)");
    std::vector<uint8_t> pix(static_cast<size_t>(img.width()) * img.height() * 3);
    for (size_t i = 0; i < img.r.data.size(); ++i) {
        pix[3 * i] = quantize8(img.r.data[i]);
        pix[3 * i + 1] = quantize8(img.g.data[i]);
        pix[3 * i + 2] = quantize8(img.b.data[i]);
    }
    encode_png(path, img.width(), img.height(), 3, pix);
}

}  // namespace ff
