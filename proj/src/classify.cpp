#include "vtext/classify.hpp"

#include <algorithm>
#include <cmath>

namespace vtext {

namespace {

double plane_score(const std::array<double, 9>& p, const std::array<double, 8>& f) {
    double s = -p[0];
    for (int i = 0; i < 8; i++) s += p[std::size_t(i + 1)] * f[std::size_t(i)];
    return s;
}

} // namespace

CharGroup group_character(const FeatureVector& fv, const DiscriminantPlanes& planes) {
    auto f = fv.scalars();
    if (plane_score(planes.a, f) < 0) return CharGroup::modifier;
    if (plane_score(planes.b, f) < 0) return CharGroup::basic;
    return CharGroup::compound;
}

namespace {

// Pocket perceptron on augmented vectors [f1..f8, -1]; label +1 means the
// plane score must come out >= 0.
std::array<double, 9> pocket_fit(const std::vector<std::array<double, 8>>& xs,
                                 const std::vector<int>& ys, int max_epochs) {
    std::array<double, 9> w{}; // [a1..a8, a0]
    auto score = [&](const std::array<double, 8>& x) {
        double s = -w[8];
        for (int i = 0; i < 8; i++) s += w[std::size_t(i)] * x[std::size_t(i)];
        return s;
    };
    auto errors = [&]() {
        int e = 0;
        for (std::size_t i = 0; i < xs.size(); i++) {
            int pred = score(xs[i]) >= 0 ? 1 : -1;
            if (pred != ys[i]) e++;
        }
        return e;
    };

    std::array<double, 9> best = w;
    int best_err = errors();
    for (int epoch = 0; epoch < max_epochs && best_err > 0; epoch++) {
        int mistakes = 0;
        for (std::size_t i = 0; i < xs.size(); i++) {
            int pred = score(xs[i]) >= 0 ? 1 : -1;
            if (pred == ys[i]) continue;
            mistakes++;
            for (int k = 0; k < 8; k++) w[std::size_t(k)] += ys[i] * xs[i][std::size_t(k)];
            w[8] += ys[i] * -1.0;
        }
        int e = errors();
        if (e < best_err) {
            best_err = e;
            best = w;
        }
        if (mistakes == 0) break;
    }
    // plane layout is [offset, coefficients...]
    return {best[8], best[0], best[1], best[2], best[3],
            best[4], best[5], best[6], best[7]};
}

} // namespace

DiscriminantPlanes train_planes(
    const std::vector<std::pair<FeatureVector, CharGroup>>& samples,
    int max_epochs) {
    bool seen[3] = {false, false, false};
    for (const auto& [fv, g] : samples) seen[int(g)] = true;
    if (!seen[0] || !seen[1] || !seen[2])
        throw InsufficientData("training needs all three character groups");

    // canonical order makes the fit independent of caller ordering
    std::vector<std::pair<std::array<double, 8>, CharGroup>> canon;
    canon.reserve(samples.size());
    for (const auto& [fv, g] : samples) canon.emplace_back(fv.scalars(), g);
    std::sort(canon.begin(), canon.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first < r.first;
        return int(l.second) < int(r.second);
    });

    DiscriminantPlanes planes;
    {
        std::vector<std::array<double, 8>> xs;
        std::vector<int> ys;
        for (const auto& [f, g] : canon) {
            xs.push_back(f);
            ys.push_back(g == CharGroup::modifier ? -1 : 1);
        }
        planes.a = pocket_fit(xs, ys, max_epochs);
    }
    {
        std::vector<std::array<double, 8>> xs;
        std::vector<int> ys;
        for (const auto& [f, g] : canon) {
            if (g == CharGroup::modifier) continue;
            xs.push_back(f);
            ys.push_back(g == CharGroup::compound ? 1 : -1);
        }
        planes.b = pocket_fit(xs, ys, max_epochs);
    }
    return planes;
}

GlyphTemplate encode_template(const std::string& label, const BinaryImage& glyph) {
    // templates are tight: crop to the foreground bbox first
    int min_x = glyph.width, max_x = -1, min_y = glyph.height, max_y = -1;
    for (int y = 0; y < glyph.height; y++)
        for (int x = 0; x < glyph.width; x++)
            if (glyph.at(x, y)) {
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
    if (max_x < 0)
        throw BlankCharacter("cannot build a template from a blank glyph");

    GlyphTemplate t;
    t.label = label;
    t.bbox_w = max_x - min_x + 1;
    t.bbox_h = max_y - min_y + 1;
    t.rle_rows.resize(std::size_t(t.bbox_h));
    for (int y = 0; y < t.bbox_h; y++) {
        int run_start = -1;
        for (int x = 0; x <= t.bbox_w; x++) {
            bool on = x < t.bbox_w && glyph.at(min_x + x, min_y + y);
            if (on && run_start < 0) run_start = x;
            if (!on && run_start >= 0) {
                t.rle_rows[std::size_t(y)].emplace_back(run_start, x - 1);
                run_start = -1;
            }
        }
    }
    return t;
}

BinaryImage decode_template(const GlyphTemplate& t) {
    BinaryImage out(t.bbox_w, t.bbox_h);
    for (int y = 0; y < t.bbox_h; y++)
        for (const auto& [s, e] : t.rle_rows[std::size_t(y)])
            for (int x = s; x <= e; x++)
                out.at(x, y) = 1;
    return out;
}

namespace {

long long run_area(const GlyphTemplate& t) {
    long long a = 0;
    for (const auto& row : t.rle_rows)
        for (const auto& [s, e] : row) a += e - s + 1;
    return a;
}

long long run_intersection(const GlyphTemplate& a, const GlyphTemplate& b) {
    long long inter = 0;
    int rows = std::min(a.bbox_h, b.bbox_h);
    for (int y = 0; y < rows; y++) {
        const auto& ra = a.rle_rows[std::size_t(y)];
        const auto& rb = b.rle_rows[std::size_t(y)];
        std::size_t i = 0, j = 0;
        while (i < ra.size() && j < rb.size()) {
            int lo = std::max(ra[i].first, rb[j].first);
            int hi = std::min(ra[i].second, rb[j].second);
            if (lo <= hi) inter += hi - lo + 1;
            if (ra[i].second < rb[j].second) i++; else j++;
        }
    }
    return inter;
}

// candidate bbox resampled (nearest neighbor) to the template bbox, encoded
// as runs for the intersection pass
GlyphTemplate resample_to(const BinaryImage& ch, const Rect& bbox, int tw, int th) {
    GlyphTemplate out;
    out.bbox_w = tw;
    out.bbox_h = th;
    out.rle_rows.resize(std::size_t(th));
    for (int y = 0; y < th; y++) {
        int sy = bbox.y0 + int((long long)y * bbox.h / th);
        int run_start = -1;
        for (int x = 0; x <= tw; x++) {
            bool on = false;
            if (x < tw) {
                int sx = bbox.x0 + int((long long)x * bbox.w / tw);
                on = ch.at(sx, sy) != 0;
            }
            if (on && run_start < 0) run_start = x;
            if (!on && run_start >= 0) {
                out.rle_rows[std::size_t(y)].emplace_back(run_start, x - 1);
                run_start = -1;
            }
        }
    }
    return out;
}

Rect candidate_bbox(const BinaryImage& ch) {
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
        return Rect{0, 0, ch.width, ch.height}; // blank candidate, score 0 anyway
    return Rect{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

} // namespace

std::optional<MatchResult> template_match(const BinaryImage& ch,
                                          const std::vector<GlyphTemplate>& templates,
                                          double width_tol) {
    if (templates.empty())
        return std::nullopt;
    Rect bbox = candidate_bbox(ch);
    double tol = width_tol * bbox.w;

    // nearest width first, then widen outward
    int n = int(templates.size());
    int right = int(std::lower_bound(templates.begin(), templates.end(), bbox.w,
                                     [](const GlyphTemplate& t, int w) {
                                         return t.bbox_w < w;
                                     }) -
                    templates.begin());
    int left = right - 1;

    std::optional<MatchResult> best;
    while (left >= 0 || right < n) {
        int pick;
        int dl = left >= 0 ? std::abs(templates[std::size_t(left)].bbox_w - bbox.w) : -1;
        int dr = right < n ? std::abs(templates[std::size_t(right)].bbox_w - bbox.w) : -1;
        if (dl >= 0 && (dr < 0 || dl <= dr)) { // narrower template first on ties
            pick = left--;
        } else {
            pick = right++;
        }
        const GlyphTemplate& t = templates[std::size_t(pick)];
        if (std::abs(t.bbox_w - bbox.w) > tol)
            break; // widths only grow further apart from here
        GlyphTemplate cand = resample_to(ch, bbox, t.bbox_w, t.bbox_h);
        long long inter = run_intersection(t, cand);
        long long total = run_area(t) + run_area(cand);
        double score = total > 0 ? 2.0 * double(inter) / double(total) : 0.0;
        if (!best || score > best->score)
            best = MatchResult{t.label, score};
    }
    return best;
}

std::string tree_test_name(TreeTest t) {
    switch (t) {
        case TreeTest::headline: return "headline";
        case TreeTest::vertical_line: return "vertical_line";
        case TreeTest::left_slant: return "left_slant";
        case TreeTest::width_ge: return "width_ge";
        case TreeTest::upper_zone: return "upper_zone";
    }
    return "width_ge";
}

TreeTest tree_test_from_name(const std::string& name) {
    if (name == "headline") return TreeTest::headline;
    if (name == "vertical_line") return TreeTest::vertical_line;
    if (name == "left_slant") return TreeTest::left_slant;
    if (name == "width_ge") return TreeTest::width_ge;
    if (name == "upper_zone") return TreeTest::upper_zone;
    throw InvalidStructure("unknown tree test: " + name);
}

namespace {

bool eval_test(const TreeNode& node, const FeatureVector& fv, const BinaryImage& ch,
               int matra_top, const TreeThresholds& th) {
    switch (node.test) {
        case TreeTest::headline:
            return fv.f5 >= th.headline;
        case TreeTest::vertical_line:
            return fv.f7a >= th.vertical_line;
        case TreeTest::left_slant: {
            // diag135 strictly dominant in the leftmost grid column
            double mass[4] = {0, 0, 0, 0};
            for (int cy = 0; cy < 5; cy++)
                for (int d = 0; d < 4; d++)
                    mass[d] += fv.f8[std::size_t((cy * 5 + 0) * 4 + d)];
            return mass[3] > mass[0] && mass[3] > mass[1] && mass[3] > mass[2];
        }
        case TreeTest::width_ge:
            return double(ch.width) >= node.threshold;
        case TreeTest::upper_zone:
            for (int y = 0; y < std::min(matra_top, ch.height); y++)
                for (int x = 0; x < ch.width; x++)
                    if (ch.at(x, y)) return true;
            return false;
    }
    return false;
}

} // namespace

int tree_classify(const FeatureVector& fv, const BinaryImage& ch, int matra_top,
                  const DecisionTree& tree, const TreeThresholds& thresholds) {
    if (tree.nodes.empty())
        throw InvalidStructure("decision tree has no nodes");
    int i = 0;
    for (;;) {
        const TreeNode& node = tree.nodes[std::size_t(i)];
        if (node.is_leaf)
            return node.leaf_id;
        i = eval_test(node, fv, ch, matra_top, thresholds) ? node.if_true : node.if_false;
        if (i < 0 || i >= int(tree.nodes.size()))
            throw InvalidStructure("decision tree routing escaped the node list");
    }
}

std::vector<GlyphTemplate> build_templates(
    const std::vector<std::pair<std::string, BinaryImage>>& samples) {
    if (samples.empty())
        throw InsufficientData("no template samples");
    std::vector<GlyphTemplate> out;
    out.reserve(samples.size());
    for (const auto& [label, img] : samples)
        out.push_back(encode_template(label, img));
    std::stable_sort(out.begin(), out.end(),
                     [](const GlyphTemplate& l, const GlyphTemplate& r) {
                         return l.bbox_w < r.bbox_w;
                     });
    return out;
}

Recognition recognize_character(const BinaryImage& ch, const RowSpan& matra,
                                int baseline, const RecognitionModel& model) {
    FeatureVector fv = extract_features(ch, matra, baseline); // throws BlankCharacter
    Recognition rec;
    rec.group = group_character(fv, model.planes);
    const DecisionTree& tree =
        rec.group == CharGroup::compound ? model.compound_tree : model.basic_tree;
    int leaf = tree_classify(fv, ch, matra.top, tree, model.thresholds);
    std::optional<MatchResult> m;
    if (leaf >= 0 && leaf < int(tree.leaves.size()))
        m = template_match(ch, tree.leaves[std::size_t(leaf)], model.width_tol);
    if (m) {
        rec.label = m->label;
        rec.score = m->score;
    } else {
        rec.label = kRejectLabel;
        rec.score = 0;
    }
    return rec;
}

} // namespace vtext
