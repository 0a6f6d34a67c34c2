#ifndef VTEXT_CHAR_SEGMENT_HPP
#define VTEXT_CHAR_SEGMENT_HPP

#include <optional>
#include <vector>

#include "vtext/image.hpp"

namespace vtext {

// Background-only scan path from the baseline row up to the row just below
// the matra. rows[i] and col_at_row[i] pair up; consecutive columns differ
// by at most one.
struct ScanPath {
    std::vector<int> rows;       // baseline first, matra.bottom+1 last
    std::vector<int> col_at_row; // one column per row

    int max_deviation(int start_col) const;
};

struct CharBox {
    Rect rect;     // word-image coordinates, matra rows included
    int order = 0; // 0-based left-to-right index
};

// Clears the matra rows to background.
BinaryImage remove_matra(const BinaryImage& bin, const RowSpan& matra);

// Columns with no foreground in the middle zone (matra.bottom, baseline],
// returned as maximal runs.
std::vector<ColSpan> straight_scan_boundaries(const BinaryImage& bin,
                                              const RowSpan& matra,
                                              int baseline);

// Minimum-total-deviation monotone seam (|dcol| <= 1 per row step) through
// background cells, confined to columns within max_dev of start_col. Ties
// resolve to the leftmost final column. Returns nullopt when no seam
// exists.
std::optional<ScanPath> piecewise_scan(const BinaryImage& bin, int start_col,
                                       const RowSpan& matra, int baseline,
                                       int max_dev);

// Straight-scan segmentation plus piecewise seams at projection minima of
// kerned segments. Character rects cover the matra rows down to the
// baseline.
std::vector<CharBox> extract_characters(const BinaryImage& word_bin,
                                        const RowSpan& matra, int baseline,
                                        int max_dev);

} // namespace vtext

#endif
