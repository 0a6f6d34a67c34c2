#include "vtext/gradient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace vtext {

GradientMap::GradientMap(int w, int h) : width(w), height(h) {
    values.assign(std::size_t(w) * h, 0);
}

GradientMap horizontal_gradient(const GrayImage& img) {
    if (img.width < 2)
        throw TooSmall("horizontal gradient needs width >= 2");
    GradientMap g(img.width, img.height);
    for (int y = 0; y < img.height; y++)
        for (int x = 0; x + 1 < img.width; x++)
            g.at(x, y) = std::abs(int(img.at(x + 1, y)) - int(img.at(x, y)));
    return g;
}

GradientMap vertical_gradient(const GrayImage& img) {
    if (img.height < 2)
        throw TooSmall("vertical gradient needs height >= 2");
    GradientMap g(img.width, img.height);
    for (int y = 0; y + 1 < img.height; y++)
        for (int x = 0; x < img.width; x++)
            g.at(x, y) = std::abs(int(img.at(x, y + 1)) - int(img.at(x, y)));
    return g;
}

GradientMap combine_and_normalize(const GradientMap& gx, const GradientMap& gy) {
    if (gx.width != gy.width || gx.height != gy.height)
        throw DimensionMismatch("gradient maps differ in size");
    GradientMap out(gx.width, gx.height);
    int lo = gx.values.empty() ? 0 : gx.values[0] + gy.values[0];
    int hi = lo;
    for (std::size_t i = 0; i < out.values.size(); i++) {
        int v = gx.values[i] + gy.values[i];
        out.values[i] = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) {
        std::fill(out.values.begin(), out.values.end(), 0);
        return out;
    }
    for (int& v : out.values)
        v = int(std::lround(255.0 * (v - lo) / double(hi - lo)));
    return out;
}

namespace {

// Exact comparison of S_l^2/n_l + S_r^2/n_r across two candidate splits via
// cross-multiplication, avoiding float ties.
struct SplitGain {
    __int128 num; // S_l^2 * n_r + S_r^2 * n_l
    long long den; // n_l * n_r

    bool better_than(const SplitGain& o) const {
        return num * o.den > o.num * den;
    }
};

SplitGain split_gain(long long sum_l, long long n_l, long long sum_r, long long n_r) {
    __int128 a = __int128(sum_l) * sum_l * n_r + __int128(sum_r) * sum_r * n_l;
    return SplitGain{a, n_l * n_r};
}

} // namespace

BinaryImage kmeans_binarize(const GradientMap& gmap) {
    BinaryImage out(gmap.width, gmap.height);
    std::vector<int> sorted(gmap.values);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || sorted.front() == sorted.back())
        return out; // constant map, all background

    // Optimal 1-D 2-means clusters are contiguous in value, so scanning all
    // splits between distinct adjacent values finds the global SSE minimum.
    // Minimizing SSE is maximizing S_l^2/n_l + S_r^2/n_r.
    long long total = std::accumulate(sorted.begin(), sorted.end(), 0LL);
    long long n = (long long)sorted.size();
    long long sum_l = 0;
    bool have = false;
    SplitGain best{0, 1};
    int best_threshold = sorted.front();
    for (long long k = 1; k < n; k++) {
        sum_l += sorted[k - 1];
        if (sorted[k - 1] == sorted[k])
            continue; // equal values must share a cluster
        SplitGain g = split_gain(sum_l, k, total - sum_l, n - k);
        if (!have || g.better_than(best)) {
            have = true;
            best = g;
            best_threshold = sorted[k - 1];
        }
    }
    for (std::size_t i = 0; i < gmap.values.size(); i++)
        out.pixels[i] = gmap.values[i] > best_threshold ? 1 : 0;
    return out;
}

int otsu_threshold(const GrayImage& img, const Rect& region) {
    if (!rect_within(region, img.width, img.height))
        throw OutOfBounds("otsu region exceeds image bounds");
    std::array<long long, 256> hist{};
    for (int y = region.y0; y <= region.y1(); y++)
        for (int x = region.x0; x <= region.x1(); x++)
            hist[img.at(x, y)]++;

    long long total = (long long)region.w * region.h;
    long long weighted = 0;
    for (int v = 0; v < 256; v++) weighted += (long long)v * hist[v];

    // between-class variance up to the constant factor 1/total^2:
    // (total*sum0 - weighted*w0)^2 / (w0 * w1); compared exactly.
    long long w0 = 0, sum0 = 0;
    __int128 best_num = -1;
    long long best_den = 1;
    int best_t = -1;
    for (int t = 0; t < 255; t++) {
        w0 += hist[t];
        sum0 += (long long)t * hist[t];
        long long w1 = total - w0;
        if (w0 == 0 || w1 == 0)
            continue;
        __int128 d = __int128(total) * sum0 - __int128(weighted) * w0;
        __int128 num = d * d;
        long long den = w0 * w1;
        if (best_t < 0 || num * best_den > best_num * den) {
            best_num = num;
            best_den = den;
            best_t = t;
        }
    }
    if (best_t < 0)
        throw Degenerate("otsu: region has a single intensity");
    return best_t;
}

BinaryImage binarize_word(const GrayImage& img, const Rect& word) {
    if (!rect_within(word, img.width, img.height))
        throw OutOfBounds("word rect exceeds image bounds");
    int t;
    try {
        t = otsu_threshold(img, word);
    } catch (const Degenerate&) {
        return BinaryImage(word.w, word.h); // constant region, no text
    }

    long long low_count = 0;
    for (int y = word.y0; y <= word.y1(); y++)
        for (int x = word.x0; x <= word.x1(); x++)
            if (img.at(x, y) <= t) low_count++;
    long long total = (long long)word.w * word.h;
    long long high_count = total - low_count;

    bool low_is_fg;
    if (low_count != high_count) {
        low_is_fg = low_count < high_count; // text is the minority class
    } else {
        // 50/50 split: text edges carry more gradient energy
        long long grad_low = 0, grad_high = 0;
        for (int y = word.y0; y <= word.y1(); y++) {
            for (int x = word.x0; x <= word.x1(); x++) {
                int g = 0;
                if (x + 1 <= word.x1()) g += std::abs(int(img.at(x + 1, y)) - int(img.at(x, y)));
                if (y + 1 <= word.y1()) g += std::abs(int(img.at(x, y + 1)) - int(img.at(x, y)));
                (img.at(x, y) <= t ? grad_low : grad_high) += g;
            }
        }
        low_is_fg = grad_low > grad_high;
    }

    BinaryImage out(word.w, word.h);
    for (int y = 0; y < word.h; y++)
        for (int x = 0; x < word.w; x++) {
            bool low = img.at(word.x0 + x, word.y0 + y) <= t;
            out.at(x, y) = (low == low_is_fg) ? 1 : 0;
        }
    return out;
}

} // namespace vtext
