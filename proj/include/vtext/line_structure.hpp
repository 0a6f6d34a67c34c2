#ifndef VTEXT_LINE_STRUCTURE_HPP
#define VTEXT_LINE_STRUCTURE_HPP

#include <utility>
#include <vector>

#include "vtext/image.hpp"

namespace vtext {

enum class ProfileAxis { horizontal, vertical };

// Foreground pixel counts per column (vertical) or per row (horizontal).
struct ProjectionProfile {
    ProfileAxis axis = ProfileAxis::vertical;
    std::vector<int> counts;
};

// The three horizontal bands of a script line. upper/middle/lower are
// inclusive row spans; upper and lower may be empty. The matra rows sit
// between upper and middle.
struct LineZones {
    RowSpan upper;
    RowSpan middle;
    RowSpan lower;
};

struct LineStructure {
    std::vector<Rect> word_boxes;
    RowSpan matra;
    int baseline = 0;
    LineZones zones;
};

ProjectionProfile vertical_projection(const BinaryImage& bin);
ProjectionProfile horizontal_projection(const BinaryImage& bin);

// Maximal zero runs of length >= min_gap_width, excluding runs that touch
// the left or right image edge (those are margins, not gaps).
std::vector<ColSpan> detect_word_gaps(const ProjectionProfile& profile,
                                      int min_gap_width);

// Full-height word rectangles between the gaps (and between image edges and
// the outermost gaps).
std::vector<Rect> split_words(int line_width, int line_height,
                              const std::vector<ColSpan>& gaps);

// Places per-word binary images back at their rectangles; gap columns stay
// background. Throws OverlapError on column overlap.
BinaryImage reassemble_line(int line_width, int line_height,
                            const std::vector<std::pair<Rect, BinaryImage>>& words);

// The matra is the maximal run of rows with count >= band * max that
// contains the topmost row achieving the maximum. Throws EmptyLine when the
// profile is all zero.
RowSpan detect_matra(const ProjectionProfile& profile, double band = 0.85);

// Baseline = mode of the lowermost rows of the components at or below the
// half-height row xy, ties broken toward the lower row. Components are
// taken with the matra rows masked out so that characters count
// individually rather than one component per word.
int detect_baseline(const BinaryImage& bin, const RowSpan& matra);

// upper = [0, matra.top), middle = (matra.bottom, baseline],
// lower = (baseline, height). Throws InvalidStructure when
// matra.bottom >= baseline.
LineZones split_zones(int height, const RowSpan& matra, int baseline);

} // namespace vtext

#endif
