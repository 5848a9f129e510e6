#pragma once
// Minimal raster support for logo hashing: 8-bit grayscale images, PNG
// decode/encode via libpng, PGM/PPM for text fixtures, area-average resize.

#include <png.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbpd/util.hpp"

namespace rbpd {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;  // row-major, width*height

    uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    bool empty() const { return pixels.empty(); }
};

struct ImageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct PngReadCtx {
    const uint8_t* data;
    size_t size;
    size_t offset;
};

inline void png_read_fn(png_structp png, png_bytep out, png_size_t len) {
    auto* ctx = static_cast<PngReadCtx*>(png_get_io_ptr(png));
    if (ctx->offset + len > ctx->size) png_error(png, "truncated PNG");
    std::memcpy(out, ctx->data + ctx->offset, len);
    ctx->offset += len;
}

inline void png_write_fn(png_structp png, png_bytep data, png_size_t len) {
    auto* out = static_cast<std::string*>(png_get_io_ptr(png));
    out->append(reinterpret_cast<const char*>(data), len);
}

inline void png_flush_fn(png_structp) {}

inline void png_error_fn(png_structp png, png_const_charp) { png_longjmp(png, 1); }
inline void png_warn_fn(png_structp, png_const_charp) {}

}  // namespace detail

inline bool looks_like_png(std::string_view bytes) {
    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

inline bool looks_like_pnm(std::string_view bytes) {
    return bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '6';
}

// Decode a PNG to grayscale; alpha is composited over white.
inline GrayImage decode_png_gray(std::string_view bytes) {
    if (!looks_like_png(bytes)) throw ImageError("not a PNG");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, detail::png_error_fn, detail::png_warn_fn);
    if (!png) throw ImageError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw ImageError("png_create_info_struct failed");
    }
    detail::PngReadCtx ctx{reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size(), 0};
    std::vector<png_bytep> rows;
    std::vector<uint8_t> raw;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageError("PNG decode failed");
    }
    png_set_read_fn(png, &ctx, detail::png_read_fn);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_filler(png, 0xff, PNG_FILLER_AFTER);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    raw.resize(static_cast<size_t>(w) * h * 4);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = raw.data() + static_cast<size_t>(y) * w * 4;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.resize(static_cast<size_t>(w) * h);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        unsigned r = raw[i * 4], g = raw[i * 4 + 1], b = raw[i * 4 + 2], a = raw[i * 4 + 3];
        // Rec.601 luma over a white background.
        unsigned lum = (299 * r + 587 * g + 114 * b + 500) / 1000;
        img.pixels[i] = static_cast<uint8_t>((lum * a + 255u * (255u - a) + 127) / 255u);
    }
    return img;
}

inline std::string encode_png_gray(const GrayImage& img) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, detail::png_error_fn, detail::png_warn_fn);
    if (!png) throw ImageError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw ImageError("png_create_info_struct failed");
    }
    std::string out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ImageError("PNG encode failed");
    }
    png_set_write_fn(png, &out, detail::png_write_fn, detail::png_flush_fn);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = const_cast<png_bytep>(img.pixels.data() + static_cast<size_t>(y) * img.width);
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    return out;
}

// P2/P5 (gray) and P3/P6 (RGB) readers, maxval <= 255.
inline GrayImage decode_pnm_gray(std::string_view bytes) {
    if (!looks_like_pnm(bytes)) throw ImageError("not a PNM");
    size_t pos = 0;
    auto next_token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        return std::string(bytes.substr(start, pos - start));
    };
    std::string magic = next_token();
    int channels = (magic == "P3" || magic == "P6") ? 3 : 1;
    bool binary = (magic == "P5" || magic == "P6");
    if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6")
        throw ImageError("unsupported PNM magic " + magic);
    int w = std::stoi(next_token());
    int h = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) throw ImageError("bad PNM header");

    size_t count = static_cast<size_t>(w) * h * channels;
    std::vector<uint8_t> vals(count);
    if (binary) {
        ++pos;  // single whitespace after maxval
        if (bytes.size() - pos < count) throw ImageError("truncated PNM");
        std::memcpy(vals.data(), bytes.data() + pos, count);
    } else {
        for (size_t i = 0; i < count; ++i) vals[i] = static_cast<uint8_t>(std::stoi(next_token()));
    }
    GrayImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<size_t>(w) * h);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        if (channels == 1) {
            img.pixels[i] = vals[i];
        } else {
            unsigned r = vals[i * 3], g = vals[i * 3 + 1], b = vals[i * 3 + 2];
            img.pixels[i] = static_cast<uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
        }
    }
    return img;
}

inline GrayImage decode_image_gray(std::string_view bytes) {
    if (looks_like_png(bytes)) return decode_png_gray(bytes);
    if (looks_like_pnm(bytes)) return decode_pnm_gray(bytes);
    throw ImageError("unrecognized image format");
}

inline GrayImage load_image_gray(const std::filesystem::path& path) {
    return decode_image_gray(read_file(path));
}

// Area-average downscale/upscale to an exact target size.
inline GrayImage resize_gray(const GrayImage& src, int out_w, int out_h) {
    if (src.width == out_w && src.height == out_h) return src;
    if (src.empty() || out_w <= 0 || out_h <= 0) throw ImageError("bad resize");
    GrayImage dst;
    dst.width = out_w;
    dst.height = out_h;
    dst.pixels.resize(static_cast<size_t>(out_w) * out_h);
    for (int oy = 0; oy < out_h; ++oy) {
        int y0 = static_cast<int>(static_cast<int64_t>(oy) * src.height / out_h);
        int y1 = static_cast<int>((static_cast<int64_t>(oy) + 1) * src.height / out_h);
        if (y1 <= y0) y1 = y0 + 1;
        for (int ox = 0; ox < out_w; ++ox) {
            int x0 = static_cast<int>(static_cast<int64_t>(ox) * src.width / out_w);
            int x1 = static_cast<int>((static_cast<int64_t>(ox) + 1) * src.width / out_w);
            if (x1 <= x0) x1 = x0 + 1;
            uint64_t sum = 0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) sum += src.at(x, y);
            uint64_t n = static_cast<uint64_t>(y1 - y0) * (x1 - x0);
            dst.pixels[static_cast<size_t>(oy) * out_w + ox] = static_cast<uint8_t>((sum + n / 2) / n);
        }
    }
    return dst;
}

inline GrayImage crop_gray(const GrayImage& src, int x, int y, int w, int h) {
    int x0 = std::max(0, x), y0 = std::max(0, y);
    int x1 = std::min(src.width, x + w), y1 = std::min(src.height, y + h);
    if (x1 <= x0 || y1 <= y0) throw ImageError("empty crop");
    GrayImage dst;
    dst.width = x1 - x0;
    dst.height = y1 - y0;
    dst.pixels.resize(static_cast<size_t>(dst.width) * dst.height);
    for (int yy = y0; yy < y1; ++yy)
        std::memcpy(dst.pixels.data() + static_cast<size_t>(yy - y0) * dst.width,
                    src.pixels.data() + static_cast<size_t>(yy) * src.width + x0,
                    static_cast<size_t>(dst.width));
    return dst;
}

}  // namespace rbpd
