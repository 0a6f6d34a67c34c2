#ifndef VTEXT_IMAGE_HPP
#define VTEXT_IMAGE_HPP

#include <cstdint>
#include <vector>

#include "vtext/errors.hpp"

namespace vtext {

// Axis-aligned pixel rectangle; x1()/y1() are the inclusive far corners.
struct Rect {
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;

    int x1() const { return x0 + w - 1; }
    int y1() const { return y0 + h - 1; }
    bool operator==(const Rect&) const = default;
};

// Inclusive row interval [top, bottom]; empty when top > bottom.
struct RowSpan {
    int top = 0;
    int bottom = -1;

    bool empty() const { return top > bottom; }
    int rows() const { return empty() ? 0 : bottom - top + 1; }
    bool operator==(const RowSpan&) const = default;
};

// Inclusive column interval [first, last].
struct ColSpan {
    int first = 0;
    int last = -1;

    bool empty() const { return first > last; }
    int cols() const { return empty() ? 0 : last - first + 1; }
    bool operator==(const ColSpan&) const = default;
};

// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
    bool operator==(const GrayImage&) const = default;
};

// Foreground/background raster; nonzero means foreground (text).
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
    std::size_t foreground_count() const;
    bool operator==(const BinaryImage&) const = default;
};

// BT.601 luma, rounded and clamped.
std::uint8_t to_grayscale(int r, int g, int b);

bool rect_within(const Rect& r, int width, int height);

GrayImage crop(const GrayImage& img, const Rect& r);
BinaryImage crop(const BinaryImage& img, const Rect& r);

} // namespace vtext

#endif
