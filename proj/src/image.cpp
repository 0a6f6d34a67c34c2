#include "vtext/image.hpp"

#include <algorithm>
#include <cmath>

namespace vtext {

GrayImage::GrayImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        throw TooSmall("image dimensions must be at least 1x1");
    pixels.assign(std::size_t(w) * h, fill);
}

BinaryImage::BinaryImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        throw TooSmall("image dimensions must be at least 1x1");
    pixels.assign(std::size_t(w) * h, fill);
}

std::size_t BinaryImage::foreground_count() const {
    return std::size_t(std::count_if(pixels.begin(), pixels.end(),
                                     [](std::uint8_t p) { return p != 0; }));
}

std::uint8_t to_grayscale(int r, int g, int b) {
    double y = 0.299 * r + 0.587 * g + 0.114 * b;
    long v = std::lround(y);
    return std::uint8_t(std::clamp(v, 0L, 255L));
}

bool rect_within(const Rect& r, int width, int height) {
    return r.w >= 1 && r.h >= 1 && r.x0 >= 0 && r.y0 >= 0 &&
           r.x0 + r.w <= width && r.y0 + r.h <= height;
}

namespace {

template <class Img>
Img crop_impl(const Img& img, const Rect& r) {
    if (!rect_within(r, img.width, img.height))
        throw OutOfBounds("crop rect exceeds image bounds");
    Img out(r.w, r.h);
    for (int y = 0; y < r.h; y++)
        for (int x = 0; x < r.w; x++)
            out.at(x, y) = img.at(r.x0 + x, r.y0 + y);
    return out;
}

} // namespace

GrayImage crop(const GrayImage& img, const Rect& r) { return crop_impl(img, r); }
BinaryImage crop(const BinaryImage& img, const Rect& r) { return crop_impl(img, r); }

} // namespace vtext
