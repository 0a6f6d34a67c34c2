#ifndef VTEXT_GRADIENT_HPP
#define VTEXT_GRADIENT_HPP

#include <vector>

#include "vtext/image.hpp"

namespace vtext {

// Per-pixel absolute gradient magnitudes. Maps keep the source dimensions;
// the unreachable last column (horizontal) or last row (vertical) is zero.
struct GradientMap {
    int width = 0;
    int height = 0;
    std::vector<int> values;

    GradientMap() = default;
    GradientMap(int w, int h);

    int at(int x, int y) const { return values[std::size_t(y) * width + x]; }
    int& at(int x, int y) { return values[std::size_t(y) * width + x]; }
};

// |img(x+1,y) - img(x,y)|; rightmost column padded with 0.
GradientMap horizontal_gradient(const GrayImage& img);

// |img(x,y+1) - img(x,y)|; bottom row padded with 0.
GradientMap vertical_gradient(const GrayImage& img);

// gx + gy, min-max normalized to [0,255]. A constant sum map comes out all
// zero.
GradientMap combine_and_normalize(const GradientMap& gx, const GradientMap& gy);

// Exact 1-D 2-means of the map values (sorted threshold scan, no Lloyd
// iteration). The higher-mean cluster is foreground; a constant map yields
// all background.
BinaryImage kmeans_binarize(const GradientMap& gmap);

// Otsu threshold over the region's histogram: maximizes between-class
// variance of classes {<= t} and {> t}, smallest t on ties. Throws
// Degenerate when the region has a single intensity.
int otsu_threshold(const GrayImage& img, const Rect& region);

// Otsu-binarizes one word region. Foreground is the minority class; a
// 50/50 split is broken toward the class with the higher mean gradient
// magnitude. Degenerate regions come back all background.
BinaryImage binarize_word(const GrayImage& img, const Rect& word);

} // namespace vtext

#endif
