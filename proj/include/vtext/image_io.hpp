#ifndef VTEXT_IMAGE_IO_HPP
#define VTEXT_IMAGE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vtext/image.hpp"

namespace vtext {

// Small RGB raster used for diagnostic overlay dumps.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 3 bytes per pixel, row-major

    RgbImage() = default;
    RgbImage(int w, int h);

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

// Decodes a PNG or binary PGM (P5) payload to grayscale. Color PNGs are
// converted through to_grayscale. Throws DecodeError on malformed data and
// UnsupportedFormat when the payload is neither format.
GrayImage decode_image(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

GrayImage load_image(const std::string& path);
void save_pgm(const std::string& path, const GrayImage& img);
void save_png(const std::string& path, const RgbImage& img);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

} // namespace vtext

#endif
