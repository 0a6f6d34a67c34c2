#include "vtext/line_structure.hpp"

#include <algorithm>
#include <map>

#include "vtext/components.hpp"

namespace vtext {

ProjectionProfile vertical_projection(const BinaryImage& bin) {
    ProjectionProfile p;
    p.axis = ProfileAxis::vertical;
    p.counts.assign(std::size_t(bin.width), 0);
    for (int y = 0; y < bin.height; y++)
        for (int x = 0; x < bin.width; x++)
            if (bin.at(x, y)) p.counts[std::size_t(x)]++;
    return p;
}

ProjectionProfile horizontal_projection(const BinaryImage& bin) {
    ProjectionProfile p;
    p.axis = ProfileAxis::horizontal;
    p.counts.assign(std::size_t(bin.height), 0);
    for (int y = 0; y < bin.height; y++)
        for (int x = 0; x < bin.width; x++)
            if (bin.at(x, y)) p.counts[std::size_t(y)]++;
    return p;
}

std::vector<ColSpan> detect_word_gaps(const ProjectionProfile& profile,
                                      int min_gap_width) {
    const auto& c = profile.counts;
    std::vector<ColSpan> gaps;
    int n = int(c.size());
    int run_start = -1;
    for (int x = 0; x <= n; x++) {
        bool zero = x < n && c[std::size_t(x)] == 0;
        if (zero && run_start < 0)
            run_start = x;
        if (!zero && run_start >= 0) {
            int run_end = x - 1;
            // edge-touching runs are margins, not inter-word gaps
            if (run_start > 0 && run_end < n - 1 &&
                run_end - run_start + 1 >= min_gap_width)
                gaps.push_back(ColSpan{run_start, run_end});
            run_start = -1;
        }
    }
    return gaps;
}

std::vector<Rect> split_words(int line_width, int line_height,
                              const std::vector<ColSpan>& gaps) {
    std::vector<Rect> words;
    int start = 0;
    for (const auto& g : gaps) {
        if (g.first > start)
            words.push_back(Rect{start, 0, g.first - start, line_height});
        start = g.last + 1;
    }
    if (start < line_width)
        words.push_back(Rect{start, 0, line_width - start, line_height});
    return words;
}

BinaryImage reassemble_line(int line_width, int line_height,
                            const std::vector<std::pair<Rect, BinaryImage>>& words) {
    BinaryImage out(line_width, line_height);
    std::vector<char> used(std::size_t(line_width), 0);
    for (const auto& [rect, bin] : words) {
        if (!rect_within(rect, line_width, line_height))
            throw OutOfBounds("word rect exceeds line bounds");
        if (rect.h != bin.height || rect.w != bin.width)
            throw DimensionMismatch("word image does not match its rect");
        for (int x = rect.x0; x <= rect.x1(); x++) {
            if (used[std::size_t(x)])
                throw OverlapError("word rects overlap in columns");
            used[std::size_t(x)] = 1;
        }
        for (int y = 0; y < rect.h; y++)
            for (int x = 0; x < rect.w; x++)
                out.at(rect.x0 + x, rect.y0 + y) = bin.at(x, y);
    }
    return out;
}

RowSpan detect_matra(const ProjectionProfile& profile, double band) {
    const auto& c = profile.counts;
    int peak_row = -1;
    int peak = 0;
    for (int y = 0; y < int(c.size()); y++) {
        if (c[std::size_t(y)] > peak) {
            peak = c[std::size_t(y)];
            peak_row = y; // topmost row achieving the maximum
        }
    }
    if (peak_row < 0)
        throw EmptyLine("horizontal projection is all zero");

    double cut = band * peak;
    int top = peak_row;
    while (top > 0 && double(c[std::size_t(top - 1)]) >= cut) top--;
    int bottom = peak_row;
    while (bottom + 1 < int(c.size()) && double(c[std::size_t(bottom + 1)]) >= cut) bottom++;
    return RowSpan{top, bottom};
}

int detect_baseline(const BinaryImage& bin, const RowSpan& matra) {
    int max_fg_row = -1;
    for (int y = bin.height - 1; y >= 0 && max_fg_row < 0; y--)
        for (int x = 0; x < bin.width; x++)
            if (bin.at(x, y)) {
                max_fg_row = y;
                break;
            }
    if (max_fg_row < 0)
        throw EmptyLine("blank image has no baseline");

    // Mask the matra so the headline does not fuse a whole word into one
    // component; the voters are then the individual characters.
    BinaryImage body = bin;
    for (int y = std::max(0, matra.top); y <= std::min(bin.height - 1, matra.bottom); y++)
        for (int x = 0; x < bin.width; x++)
            body.at(x, y) = 0;

    int xy = bin.height / 2;
    std::map<int, int> votes; // lowest row -> count
    for (const auto& comp : label_components(body).components)
        if (comp.bbox.y1() >= xy)
            votes[comp.lowest_row]++;

    if (votes.empty())
        return max_fg_row;

    int best_row = -1, best_count = 0;
    for (const auto& [row, count] : votes) {
        if (count >= best_count) { // ties go to the lower row on the image
            best_count = count;
            best_row = row;
        }
    }
    return best_row;
}

LineZones split_zones(int height, const RowSpan& matra, int baseline) {
    if (matra.bottom >= baseline)
        throw InvalidStructure("matra must lie above the baseline");
    LineZones z;
    z.upper = RowSpan{0, matra.top - 1};
    z.middle = RowSpan{matra.bottom + 1, baseline};
    z.lower = RowSpan{baseline + 1, height - 1};
    return z;
}

} // namespace vtext
