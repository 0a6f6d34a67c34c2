#include "vtext/char_segment.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace vtext {

int ScanPath::max_deviation(int start_col) const {
    int dev = 0;
    for (int c : col_at_row) dev = std::max(dev, std::abs(c - start_col));
    return dev;
}

BinaryImage remove_matra(const BinaryImage& bin, const RowSpan& matra) {
    BinaryImage out = bin;
    for (int y = std::max(0, matra.top); y <= std::min(bin.height - 1, matra.bottom); y++)
        for (int x = 0; x < bin.width; x++)
            out.at(x, y) = 0;
    return out;
}

std::vector<ColSpan> straight_scan_boundaries(const BinaryImage& bin,
                                              const RowSpan& matra,
                                              int baseline) {
    std::vector<char> blocked(std::size_t(bin.width), 0);
    for (int y = std::max(0, matra.bottom + 1); y <= std::min(baseline, bin.height - 1); y++)
        for (int x = 0; x < bin.width; x++)
            if (bin.at(x, y)) blocked[std::size_t(x)] = 1;

    std::vector<ColSpan> runs;
    int start = -1;
    for (int x = 0; x <= bin.width; x++) {
        bool open = x < bin.width && !blocked[std::size_t(x)];
        if (open && start < 0) start = x;
        if (!open && start >= 0) {
            runs.push_back(ColSpan{start, x - 1});
            start = -1;
        }
    }
    return runs;
}

std::optional<ScanPath> piecewise_scan(const BinaryImage& bin, int start_col,
                                       const RowSpan& matra, int baseline,
                                       int max_dev) {
    int lo = std::max(0, start_col - max_dev);
    int hi = std::min(bin.width - 1, start_col + max_dev);
    int top_row = matra.bottom + 1;
    if (lo > hi || top_row > baseline || baseline >= bin.height || top_row < 0)
        return std::nullopt;

    const long long inf = std::numeric_limits<long long>::max() / 4;
    int band = hi - lo + 1;
    int rows = baseline - top_row + 1;
    std::vector<long long> cost(std::size_t(band) * rows, inf);
    auto idx = [&](int row, int col) {
        return std::size_t(row - top_row) * band + (col - lo);
    };

    for (int c = lo; c <= hi; c++)
        if (!bin.at(c, baseline))
            cost[idx(baseline, c)] = std::abs(c - start_col);

    for (int r = baseline - 1; r >= top_row; r--) {
        for (int c = lo; c <= hi; c++) {
            if (bin.at(c, r)) continue;
            long long best = inf;
            for (int pc = std::max(lo, c - 1); pc <= std::min(hi, c + 1); pc++)
                best = std::min(best, cost[idx(r + 1, pc)]);
            if (best < inf)
                cost[idx(r, c)] = best + std::abs(c - start_col);
        }
    }

    int final_col = -1;
    long long final_cost = inf;
    for (int c = lo; c <= hi; c++) {
        long long v = cost[idx(top_row, c)];
        if (v < final_cost) { // leftmost final column on ties
            final_cost = v;
            final_col = c;
        }
    }
    if (final_col < 0)
        return std::nullopt;

    // walk back down picking the leftmost predecessor consistent with cost
    ScanPath path;
    std::vector<int> cols_down;
    int c = final_col;
    long long rem = final_cost;
    for (int r = top_row; r <= baseline; r++) {
        cols_down.push_back(c);
        rem -= std::abs(c - start_col);
        if (r == baseline) break;
        for (int pc = std::max(lo, c - 1); pc <= std::min(hi, c + 1); pc++) {
            if (!bin.at(pc, r + 1) && cost[idx(r + 1, pc)] == rem) {
                c = pc;
                break;
            }
        }
    }
    for (int i = int(cols_down.size()) - 1; i >= 0; i--) {
        path.rows.push_back(baseline - (int(cols_down.size()) - 1 - i));
        path.col_at_row.push_back(cols_down[std::size_t(i)]);
    }
    return path;
}

std::vector<CharBox> extract_characters(const BinaryImage& word_bin,
                                        const RowSpan& matra, int baseline,
                                        int max_dev) {
    std::vector<CharBox> chars;
    int mid_top = matra.bottom + 1;
    if (mid_top > baseline || baseline >= word_bin.height)
        return chars;

    std::vector<int> mid_counts(std::size_t(word_bin.width), 0);
    for (int y = mid_top; y <= baseline; y++)
        for (int x = 0; x < word_bin.width; x++)
            if (word_bin.at(x, y)) mid_counts[std::size_t(x)]++;

    auto emit = [&](int first, int last) {
        CharBox cb;
        cb.rect = Rect{first, matra.top, last - first + 1, baseline - matra.top + 1};
        cb.order = int(chars.size());
        chars.push_back(cb);
    };

    // a seam only counts when it actually divides the segment's pixels; a
    // path running entirely beside the glyph separates nothing
    auto separates = [&](const ScanPath& path, int seg_start, int seg_end) {
        long long left = 0, right = 0;
        for (std::size_t i = 0; i < path.rows.size(); i++) {
            int r = path.rows[i];
            if (r < mid_top || r > baseline) continue;
            int p = path.col_at_row[i];
            for (int x = seg_start; x <= seg_end; x++) {
                if (!word_bin.at(x, r)) continue;
                if (x < p) left++;
                else if (x > p) right++;
            }
        }
        return left > 0 && right > 0;
    };

    int seg_start = -1;
    for (int x = 0; x <= word_bin.width; x++) {
        bool covered = x < word_bin.width && mid_counts[std::size_t(x)] > 0;
        if (covered && seg_start < 0) seg_start = x;
        if (covered || seg_start < 0) continue;
        int seg_end = x - 1;

        // kerned pairs: a straight scan fails across the whole segment, so
        // try a bounded seam at each interior projection minimum
        int part_start = seg_start;
        for (int c = seg_start + 1; c < seg_end; c++) {
            int v = mid_counts[std::size_t(c)];
            int l = mid_counts[std::size_t(c - 1)];
            int r = mid_counts[std::size_t(c + 1)];
            if (v > l || v > r || (v == l && v == r))
                continue;
            if (c <= part_start)
                continue;
            auto path = piecewise_scan(word_bin, c, matra, baseline, max_dev);
            if (path && separates(*path, seg_start, seg_end)) {
                emit(part_start, c - 1);
                part_start = c;
            }
        }
        emit(part_start, seg_end);
        seg_start = -1;
    }
    return chars;
}

} // namespace vtext
