#include "bavt/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "bavt/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "float-grid and checkpoint formats are little-endian");

namespace bavt {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open '" + path + "'");
    return f;
}

// Decodes an 8-bit grayscale PNG into raw bytes. 16-bit input is stripped
// to 8; palette/color/alpha inputs are rejected.
std::vector<uint8_t> read_png_gray8(const std::string& path, int& h, int& w) {
    FilePtr f = open_file(path, "rb");

    uint8_t sig[8];
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8))
        throw IoError("'" + path + "' is not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng init failed for '" + path + "'");
    }
    std::vector<uint8_t> data;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode PNG '" + path + "'");
    }
    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    if (color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("'" + path + "' is not grayscale; color inputs are rejected");
    }
    if (bit_depth == 16) png_set_strip_16(png);
    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);

    w = static_cast<int>(png_get_image_width(png, info));
    h = static_cast<int>(png_get_image_height(png, info));
    data.resize(static_cast<size_t>(h) * w);
    rows.resize(h);
    for (int r = 0; r < h; ++r) rows[r] = data.data() + static_cast<size_t>(r) * w;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return data;
}

void write_png_bytes(const std::string& path, const uint8_t* bytes, int h, int w,
                     int channels) {
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng init failed for '" + path + "'");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write PNG '" + path + "'");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, w, h, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(h);
    for (int r = 0; r < h; ++r)
        rows[r] = const_cast<png_bytep>(bytes + static_cast<size_t>(r) * w * channels);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

uint8_t to_byte(double v) {
    const double c = std::clamp(v, 0.0, 1.0);
    return static_cast<uint8_t>(std::lround(c * 255.0));
}

}  // namespace

Grid read_image(const std::string& path) {
    auto ends_with = [&](const char* suf) {
        const size_t n = std::strlen(suf);
        return path.size() >= n &&
               path.compare(path.size() - n, n, suf) == 0;
    };
    if (ends_with(".pgm")) return read_image_pgm(path);
    return read_image_png(path);
}

Grid read_image_png(const std::string& path) {
    int h = 0, w = 0;
    std::vector<uint8_t> bytes = read_png_gray8(path, h, w);
    Grid g(h, w);
    for (size_t i = 0; i < bytes.size(); ++i) g.v[i] = bytes[i] / 255.0;
    return g;
}

void write_image_png(const std::string& path, const Grid& img) {
    std::vector<uint8_t> bytes(img.size());
    for (size_t i = 0; i < img.size(); ++i) bytes[i] = to_byte(img.v[i]);
    write_png_bytes(path, bytes.data(), img.h, img.w, 1);
}

Grid read_image_pgm(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    char magic[3] = {0, 0, 0};
    if (std::fscanf(f.get(), "%2s", magic) != 1 || std::strcmp(magic, "P5") != 0)
        throw DataError("'" + path + "' is not a binary PGM (P5)");
    auto next_int = [&]() {
        int c;
        // skip whitespace and '#' comment lines
        while ((c = std::fgetc(f.get())) != EOF) {
            if (c == '#') {
                while ((c = std::fgetc(f.get())) != EOF && c != '\n') {}
            } else if (!std::isspace(c)) {
                std::ungetc(c, f.get());
                break;
            }
        }
        int value = 0;
        if (std::fscanf(f.get(), "%d", &value) != 1)
            throw DataError("malformed PGM header in '" + path + "'");
        return value;
    };
    const int w = next_int();
    const int h = next_int();
    const int maxval = next_int();
    if (w <= 0 || h <= 0 || maxval != 255)
        throw DataError("unsupported PGM header in '" + path + "' (need maxval 255)");
    std::fgetc(f.get());  // single whitespace after maxval
    std::vector<uint8_t> bytes(static_cast<size_t>(h) * w);
    if (std::fread(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw DataError("truncated PGM data in '" + path + "'");
    Grid g(h, w);
    for (size_t i = 0; i < bytes.size(); ++i) g.v[i] = bytes[i] / 255.0;
    return g;
}

void write_image_pgm(const std::string& path, const Grid& img) {
    FilePtr f = open_file(path, "wb");
    std::fprintf(f.get(), "P5\n%d %d\n255\n", img.w, img.h);
    std::vector<uint8_t> bytes(img.size());
    for (size_t i = 0; i < img.size(); ++i) bytes[i] = to_byte(img.v[i]);
    if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw IoError("short write to '" + path + "'");
}

Mask read_mask_png(const std::string& path) {
    int h = 0, w = 0;
    std::vector<uint8_t> bytes = read_png_gray8(path, h, w);
    Mask m(h, w);
    for (size_t i = 0; i < bytes.size(); ++i) {
        if (bytes[i] == 0) {
            m.v[i] = 0;
        } else if (bytes[i] == 255) {
            m.v[i] = 1;
        } else {
            throw DataError("mask '" + path + "' has value " +
                            std::to_string(int(bytes[i])) + "; expected only {0,255}");
        }
    }
    return m;
}

void write_mask_png(const std::string& path, const Mask& mask) {
    std::vector<uint8_t> bytes(mask.size());
    for (size_t i = 0; i < mask.size(); ++i) bytes[i] = mask.v[i] ? 255 : 0;
    write_png_bytes(path, bytes.data(), mask.h, mask.w, 1);
}

void write_rgb_png(const std::string& path, const Grid& r, const Grid& g,
                   const Grid& b) {
    require_same_shape(r, g, "write_rgb_png");
    require_same_shape(r, b, "write_rgb_png");
    std::vector<uint8_t> bytes(r.size() * 3);
    for (size_t i = 0; i < r.size(); ++i) {
        bytes[3 * i + 0] = to_byte(r.v[i]);
        bytes[3 * i + 1] = to_byte(g.v[i]);
        bytes[3 * i + 2] = to_byte(b.v[i]);
    }
    write_png_bytes(path, bytes.data(), r.h, r.w, 3);
}

void write_float_grid(const std::string& path, const Grid& g) {
    FilePtr f = open_file(path, "wb");
    std::fprintf(f.get(), "bavt-fgrid-1\n%d %d\n", g.h, g.w);
    if (std::fwrite(g.v.data(), sizeof(double), g.size(), f.get()) != g.size())
        throw IoError("short write to '" + path + "'");
}

Grid read_float_grid(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    char magic[32] = {0};
    if (!std::fgets(magic, sizeof(magic), f.get()) ||
        std::strcmp(magic, "bavt-fgrid-1\n") != 0)
        throw DataError("'" + path + "' is not a bavt float grid");
    int h = 0, w = 0;
    if (std::fscanf(f.get(), "%d %d", &h, &w) != 2 || h <= 0 || w <= 0)
        throw DataError("malformed float-grid dims in '" + path + "'");
    std::fgetc(f.get());  // newline
    Grid g(h, w);
    if (std::fread(g.v.data(), sizeof(double), g.size(), f.get()) != g.size())
        throw DataError("truncated float-grid data in '" + path + "'");
    return g;
}

}  // namespace bavt
