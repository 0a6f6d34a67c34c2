#include "vtext/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>

namespace vtext {

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
    pixels.assign(std::size_t(w) * h * 3, 0);
}

void RgbImage::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    std::size_t i = (std::size_t(y) * width + x) * 3;
    pixels[i] = r;
    pixels[i + 1] = g;
    pixels[i + 2] = b;
}

namespace {

const unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

bool looks_like_png(const std::vector<std::uint8_t>& bytes) {
    // A prefix of the signature counts: a truncated PNG is a decode error,
    // not an unknown format.
    std::size_t n = std::min<std::size_t>(bytes.size(), 8);
    return n > 0 && std::memcmp(bytes.data(), kPngMagic, n) == 0;
}

// --- PGM (P5, maxval 255) ---

int pgm_next_token(const std::vector<std::uint8_t>& b, std::size_t& pos) {
    // skip whitespace and '#' comments
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            pos++;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') pos++;
        } else {
            break;
        }
    }
    if (pos >= b.size() || !std::isdigit(b[pos]))
        throw DecodeError("pgm: expected integer in header");
    long v = 0;
    while (pos < b.size() && std::isdigit(b[pos])) {
        v = v * 10 + (b[pos] - '0');
        if (v > 1000000) throw DecodeError("pgm: header value out of range");
        pos++;
    }
    return int(v);
}

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 2; // past "P5"
    int w = pgm_next_token(bytes, pos);
    int h = pgm_next_token(bytes, pos);
    int maxval = pgm_next_token(bytes, pos);
    if (w < 1 || h < 1) throw DecodeError("pgm: bad dimensions");
    if (maxval != 255) throw DecodeError("pgm: only maxval 255 is supported");
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw DecodeError("pgm: missing separator after header");
    pos++; // exactly one whitespace byte before the raster
    if (bytes.size() - pos < std::size_t(w) * h)
        throw DecodeError("pgm: truncated raster");
    GrayImage img(w, h);
    std::memcpy(img.pixels.data(), bytes.data() + pos, std::size_t(w) * h);
    return img;
}

// --- PNG via libpng ---

struct PngReadState {
    const std::vector<std::uint8_t>* bytes;
    std::size_t pos;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->pos + count > st->bytes->size())
        png_error(png, "unexpected end of data");
    std::memcpy(out, st->bytes->data() + st->pos, count);
    st->pos += count;
}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DecodeError("png: allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DecodeError("png: allocation failed");
    }

    std::vector<std::uint8_t> rgb;
    png_uint_32 w = 0, h = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("png: malformed payload");
    }

    PngReadState st{&bytes, 0};
    png_set_read_fn(png, &st, png_read_from_memory);
    png_read_info(png, info);

    w = png_get_image_width(png, info);
    h = png_get_image_height(png, info);

    // normalize everything to 8-bit RGB
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    rgb.assign(std::size_t(w) * h * 3, 0);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; y++)
        rows[y] = rgb.data() + std::size_t(y) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img{int(w), int(h)};
    for (std::size_t i = 0; i < std::size_t(w) * h; i++)
        img.pixels[i] = to_grayscale(rgb[i * 3], rgb[i * 3 + 1], rgb[i * 3 + 2]);
    return img;
}

} // namespace

GrayImage decode_image(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        return decode_pgm(bytes);
    if (looks_like_png(bytes)) {
        if (bytes.size() < 8) throw DecodeError("png: truncated signature");
        return decode_png(bytes);
    }
    throw UnsupportedFormat("expected PNG or binary PGM (P5)");
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    std::string header = "P5\n" + std::to_string(img.width) + " " +
                         std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DecodeError("cannot open file: " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(f),
                                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DecodeError("cannot open file for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw DecodeError("write failed: " + path);
}

GrayImage load_image(const std::string& path) { return decode_image(read_file(path)); }

void save_pgm(const std::string& path, const GrayImage& img) {
    write_file(path, encode_pgm(img));
}

void save_png(const std::string& path, const RgbImage& img) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw DecodeError("cannot open file for writing: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(fp);
        throw DecodeError("png: write failed: " + path);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, png_uint_32(img.width), png_uint_32(img.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; y++)
        png_write_row(png, const_cast<png_bytep>(img.pixels.data() + std::size_t(y) * img.width * 3));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

} // namespace vtext
