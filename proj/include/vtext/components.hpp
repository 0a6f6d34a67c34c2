#ifndef VTEXT_COMPONENTS_HPP
#define VTEXT_COMPONENTS_HPP

#include <vector>

#include "vtext/image.hpp"

namespace vtext {

struct ComponentInfo {
    int id = 0;
    int area = 0;
    Rect bbox;
    int lowest_row = 0;
};

struct ComponentSet {
    int width = 0;
    int height = 0;
    std::vector<int> labels; // row-major, 0 = background
    std::vector<ComponentInfo> components;

    int label_at(int x, int y) const { return labels[std::size_t(y) * width + x]; }
};

// 8-connectivity labeling; ids follow raster-scan discovery order from 1.
ComponentSet label_components(const BinaryImage& bin);

// Erases components with area below two percent of the mean component area.
BinaryImage remove_noise(const BinaryImage& bin, const ComponentSet& cs);

} // namespace vtext

#endif
