#include "vtext/features.hpp"

#include <algorithm>

namespace vtext {

std::string group_name(CharGroup g) {
    switch (g) {
        case CharGroup::modifier: return "modifier";
        case CharGroup::basic: return "basic";
        case CharGroup::compound: return "compound";
    }
    return "basic";
}

CharGroup group_from_name(const std::string& name) {
    if (name == "modifier") return CharGroup::modifier;
    if (name == "basic") return CharGroup::basic;
    if (name == "compound") return CharGroup::compound;
    throw InvalidStructure("unknown character group: " + name);
}

namespace {

Rect tight_bbox(const BinaryImage& ch) {
    int min_x = ch.width, max_x = -1, min_y = ch.height, max_y = -1;
    for (int y = 0; y < ch.height; y++)
        for (int x = 0; x < ch.width; x++)
            if (ch.at(x, y)) {
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
    if (max_x < 0)
        throw BlankCharacter("character image has no foreground");
    return Rect{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

} // namespace

std::array<double, kContourDims> contour_directional(const BinaryImage& ch) {
    Rect bbox = tight_bbox(ch);
    std::array<double, kContourDims> hist{};

    auto fg = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < ch.width && y < ch.height && ch.at(x, y) != 0;
    };

    // contour = foreground with a background (or border) 8-neighbor
    std::vector<char> contour(ch.pixels.size(), 0);
    for (int y = 0; y < ch.height; y++) {
        for (int x = 0; x < ch.width; x++) {
            if (!ch.at(x, y)) continue;
            for (int dy = -1; dy <= 1 && !contour[std::size_t(y) * ch.width + x]; dy++)
                for (int dx = -1; dx <= 1; dx++) {
                    if (!dx && !dy) continue;
                    if (!fg(x + dx, y + dy)) {
                        contour[std::size_t(y) * ch.width + x] = 1;
                        break;
                    }
                }
        }
    }

    auto on_contour = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < ch.width && y < ch.height &&
               contour[std::size_t(y) * ch.width + x] != 0;
    };

    // one vote per axis on which the pixel has a contour neighbor:
    // 0 horizontal (E/W), 1 vertical (N/S), 2 diag45 (NE/SW), 3 diag135 (NW/SE)
    for (int y = 0; y < ch.height; y++) {
        for (int x = 0; x < ch.width; x++) {
            if (!on_contour(x, y)) continue;
            int cx = std::min(4, (x - bbox.x0) * 5 / bbox.w);
            int cy = std::min(4, (y - bbox.y0) * 5 / bbox.h);
            int cell = (cy * 5 + cx) * 4;
            if (on_contour(x + 1, y) || on_contour(x - 1, y)) hist[std::size_t(cell + 0)] += 1;
            if (on_contour(x, y + 1) || on_contour(x, y - 1)) hist[std::size_t(cell + 1)] += 1;
            if (on_contour(x + 1, y - 1) || on_contour(x - 1, y + 1)) hist[std::size_t(cell + 2)] += 1;
            if (on_contour(x - 1, y - 1) || on_contour(x + 1, y + 1)) hist[std::size_t(cell + 3)] += 1;
        }
    }
    return hist;
}

FeatureVector extract_features(const BinaryImage& ch, const RowSpan& matra,
                               int baseline) {
    tight_bbox(ch); // throws BlankCharacter on blank input
    FeatureVector fv;
    int w = ch.width, h = ch.height;

    int middle_height = baseline - matra.bottom;
    fv.f1 = middle_height > 0 ? double(w) / double(middle_height) : double(w);

    int leftmost_row = 0, leftmost_col = w;
    int lowest_col = 0, lowest_row = -1;
    int rightmost_row = 0, rightmost_col = -1;
    for (int y = 0; y < h; y++) {
        for (int x = 0; x < w; x++) {
            if (!ch.at(x, y)) continue;
            if (x < leftmost_col) {
                leftmost_col = x;
                leftmost_row = y; // topmost on ties by scan order
            }
            if (y >= lowest_row) {
                if (y > lowest_row) lowest_col = x; // leftmost on ties
                lowest_row = y;
            }
            if (x > rightmost_col) {
                rightmost_col = x;
                rightmost_row = y;
            }
        }
    }
    fv.f2 = double(leftmost_row) / double(h);
    fv.f3 = double(lowest_col) / double(w);
    fv.f4 = double(rightmost_row) / double(h);

    // f5: longest headline run inside the matra rows
    int matra_run = 0;
    for (int y = std::max(0, matra.top); y <= std::min(h - 1, matra.bottom); y++) {
        int run = 0;
        for (int x = 0; x < w; x++) {
            run = ch.at(x, y) ? run + 1 : 0;
            matra_run = std::max(matra_run, run);
        }
    }
    fv.f5 = double(matra_run) / double(w);

    // f6: strokes touching the matra from below
    int touch_row = matra.bottom + 1;
    int runs = 0;
    if (touch_row >= 0 && touch_row < h) {
        bool in_run = false;
        for (int x = 0; x < w; x++) {
            bool on = ch.at(x, touch_row) != 0;
            if (on && !in_run) runs++;
            in_run = on;
        }
    }
    fv.f6 = runs;

    // f7: longest vertical run and where it sits
    int best_len = 0, best_col = 0;
    for (int x = 0; x < w; x++) {
        int run = 0;
        for (int y = 0; y < h; y++) {
            run = ch.at(x, y) ? run + 1 : 0;
            if (run > best_len) { // leftmost column on ties
                best_len = run;
                best_col = x;
            }
        }
    }
    fv.f7a = double(best_len) / double(h);
    fv.f7b = double(best_col) / double(w);

    fv.f8 = contour_directional(ch);
    return fv;
}

} // namespace vtext
