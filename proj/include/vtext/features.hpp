#ifndef VTEXT_FEATURES_HPP
#define VTEXT_FEATURES_HPP

#include <array>
#include <string>

#include "vtext/image.hpp"

namespace vtext {

enum class CharGroup { modifier, basic, compound };

std::string group_name(CharGroup g);
CharGroup group_from_name(const std::string& name);

inline constexpr int kContourDims = 100; // 5x5 cells x 4 directions

// Scalar shape features plus the directional contour histogram. The row/col
// fields are normalized by the character bbox extents; f6 counts strokes
// touching the matra from below.
struct FeatureVector {
    double f1 = 0;  // middle-zone width/height ratio
    double f2 = 0;  // row of leftmost foreground pixel / height
    double f3 = 0;  // column of lowermost foreground pixel / width
    double f4 = 0;  // row of rightmost foreground pixel / height
    double f5 = 0;  // longest matra run / width
    double f6 = 0;  // foreground runs in the row just below the matra
    double f7a = 0; // longest vertical run / height
    double f7b = 0; // column of that run / width
    std::array<double, kContourDims> f8{};

    // The eight scalars the discriminant planes act on.
    std::array<double, 8> scalars() const { return {f1, f2, f3, f4, f5, f6, f7a, f7b}; }
};

// matra and baseline are given in the character image's row coordinates
// (the pipeline crops characters at the matra top, so matra.top is 0 there).
FeatureVector extract_features(const BinaryImage& ch, const RowSpan& matra,
                               int baseline);

// 4-direction contour histogram over a 5x5 grid of the glyph bbox,
// flattened cell-major then direction (h, v, diag45, diag135). One vote per
// contour pixel per axis on which it has a contour neighbor.
std::array<double, kContourDims> contour_directional(const BinaryImage& ch);

} // namespace vtext

#endif
