#include "vtext/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vtext/image_io.hpp"

namespace vtext {

using nlohmann::json;

namespace {

// splitmix64; self-contained so corpora are reproducible across platforms
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    int uniform(int lo, int hi) { // inclusive
        if (hi <= lo) return lo;
        return lo + int(next() % std::uint64_t(hi - lo + 1));
    }

    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    double gaussian() { // Box-Muller
        double u1 = unit();
        if (u1 < 1e-300) u1 = 1e-300;
        double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
};

struct ProtoLayout {
    int upper, matra, middle, lower;
    int height() const { return upper + matra + middle + lower; }
    int mid_top() const { return upper + matra; }
    int base_row() const { return upper + matra + middle - 1; }
};

void vbar(BinaryImage& g, int x, int y0, int y1) {
    for (int y = y0; y <= y1; y++)
        for (int c = x; c <= std::min(x + 1, g.width - 1); c++)
            g.at(c, y) = 1;
}

void hbar(BinaryImage& g, int x0, int x1, int y0, int y1) {
    for (int y = y0; y <= y1; y++)
        for (int x = x0; x <= x1; x++)
            g.at(x, y) = 1;
}

void slant(BinaryImage& g, int x0, int x1, int y0, int y1) {
    for (int y = y0; y <= y1; y++) {
        int x = x0 + (x1 - x0) * (y - y0) / std::max(1, y1 - y0);
        g.at(x, y) = 1;
        if (x + 1 < g.width) g.at(x + 1, y) = 1;
    }
}

void loop_outline(BinaryImage& g, int x0, int x1, int y0, int y1) {
    hbar(g, x0, x1, y0, y0);
    hbar(g, x0, x1, y1, y1);
    vbar(g, x0, y0, y1);
    vbar(g, std::max(x0, x1 - 1), y0, y1);
}

GlyphProto make_glyph(int index, Rng& rng, const ProtoLayout& lay,
                      double ascender_prob, double descender_prob) {
    GlyphProto p;
    p.label = "g" + std::to_string(index);
    p.group = CharGroup(index % 3);
    p.headline_top = lay.upper;
    int k = index / 3; // index within the group

    int variant = k % 4, gen = k / 4;
    int w;
    switch (p.group) {
        case CharGroup::modifier: w = 5 + 2 * variant + 2 * gen; break;
        case CharGroup::basic: w = 11 + 2 * variant + 2 * gen; break;
        default: w = 19 + 3 * variant + 2 * gen; break;
    }

    BinaryImage g(w, lay.height());
    int mt = lay.mid_top();
    int base = lay.base_row();

    // full-width headline segment over the nominal matra rows
    hbar(g, 0, w - 1, lay.upper, lay.upper + lay.matra - 1);

    // Strokes keep the glyph's middle-zone columns contiguous and closed at
    // the bottom (a foot or loop), so a bounded seam cannot cut through a
    // single glyph.
    switch (p.group) {
        case CharGroup::modifier: {
            // each (variant, gen) pair crops to a distinct shape; feet keep
            // the bottom rows closed against spurious seams
            int c = (w - 2) / 2;
            int foot = std::min(3 + gen, w - 1);
            switch (variant) {
                case 0:
                    vbar(g, c, mt, base);
                    if (gen > 0) hbar(g, c, std::min(c + 1 + gen, w - 1), base - 1, base);
                    break;
                case 1:
                    vbar(g, 0, mt, base);
                    hbar(g, 0, foot, base - 1, base);
                    break;
                case 2:
                    vbar(g, w - 2, mt, base);
                    hbar(g, w - 1 - foot, w - 1, base - 1, base);
                    break;
                default:
                    vbar(g, c, mt, base);
                    hbar(g, std::max(0, c - 2 - gen), std::min(c + 3 + gen, w - 1),
                         base - 1, base);
                    break;
            }
            break;
        }
        case CharGroup::basic: {
            hbar(g, 0, w - 1, base - 1, base); // foot
            vbar(g, k % 2 ? w - 2 : 0, mt, base);
            switch (rng.uniform(0, 2)) {
                case 0: slant(g, std::max(0, w - 2 - (lay.middle - 1)), w - 2, mt, base); break;
                case 1: vbar(g, (w - 2) / 2, mt, mt + lay.middle / 3); break;
                default: break; // two strokes only
            }
            break;
        }
        case CharGroup::compound: {
            loop_outline(g, 0, w - 1, mt + 2, base);
            vbar(g, 2 + rng.uniform(0, std::max(0, w - 8)), mt, base); // ties loop to headline
            hbar(g, 2, w - 3, mt + 2 + (base - mt) / 2, mt + 2 + (base - mt) / 2);
            if (rng.chance(0.5)) vbar(g, w - 4, mt, mt + lay.middle / 3);
            break;
        }
    }

    if (lay.upper >= 2 && rng.chance(ascender_prob)) {
        int x = rng.uniform(0, std::max(0, w - 2));
        vbar(g, x, std::max(0, lay.upper - 3), lay.upper - 1);
    }
    if (lay.lower >= 2 && rng.chance(descender_prob)) {
        // hang the descender off a middle-zone column so it stays attached
        int c0 = w, c1 = -1;
        for (int x = 0; x < w; x++)
            if (g.at(x, base)) {
                c0 = std::min(c0, x);
                c1 = std::max(c1, x);
            }
        if (c1 >= 0)
            vbar(g, std::min(c1 - 1 >= c0 ? c1 - 1 : c0, w - 2), base + 1,
                 std::min(lay.height() - 1, base + lay.lower - 1));
    }

    p.img = std::move(g);
    return p;
}

ProtoLayout layout_of(const SynthSpec& spec) {
    return ProtoLayout{spec.upper_height, spec.matra_thickness, spec.middle_height,
                       spec.lower_height};
}

} // namespace

int GroundTruth::total_chars() const {
    int n = 0;
    for (const auto& w : labels) n += int(w.size());
    return n;
}

std::vector<GlyphProto> generate_alphabet(int size, std::uint64_t seed,
                                          const SynthSpec& layout) {
    if (size < 3)
        throw InsufficientData("alphabet needs at least 3 glyphs (one per group)");
    ProtoLayout lay = layout_of(layout);
    std::vector<GlyphProto> out;
    out.reserve(std::size_t(size));
    for (int i = 0; i < size; i++) {
        Rng rng(seed * 0x100000001B3ULL + std::uint64_t(i) + 1);
        out.push_back(make_glyph(i, rng, lay, layout.ascender_prob, layout.descender_prob));
    }
    return out;
}

SynthLine generate_line(const SynthSpec& spec) {
    ProtoLayout lay = layout_of(spec);
    auto alphabet = generate_alphabet(spec.alphabet_size, spec.alphabet_seed, spec);
    Rng rng(spec.seed);

    int n_words = rng.uniform(spec.words.min, spec.words.max);
    struct PlacedWord {
        std::vector<int> glyphs;
        std::vector<int> offsets; // glyph x offsets inside the word
        int width = 0;
    };
    std::size_t nw = std::size_t(n_words);
    std::vector<PlacedWord> words(nw);
    std::vector<int> gaps; // detected-gap widths between consecutive words
    const int intra = 3;
    for (int wi = 0; wi < n_words; wi++) {
        auto& w = words[std::size_t(wi)];
        int ng = rng.uniform(spec.glyphs_per_word.min, spec.glyphs_per_word.max);
        int x = 0;
        for (int gi = 0; gi < ng; gi++) {
            int idx = rng.uniform(0, spec.alphabet_size - 1);
            w.glyphs.push_back(idx);
            w.offsets.push_back(x);
            x += alphabet[std::size_t(idx)].img.width + intra;
        }
        w.width = x - intra;
        if (wi + 1 < n_words)
            gaps.push_back(rng.uniform(spec.gap_width.min, spec.gap_width.max));
    }

    int width = 2 * spec.margin;
    for (const auto& w : words) width += w.width;
    // the gradient halo claims one column left of each word, so the word
    // spacing is the wanted gap width plus one
    for (int g : gaps) width += g + 1;
    int height = 2 * spec.margin + lay.height();

    int matra_top = spec.margin + lay.upper;
    int baseline = spec.margin + lay.upper + lay.matra + lay.middle - 1;

    BinaryImage canvas(width, height);
    SynthLine line;
    GroundTruth& truth = line.truth;
    truth.matra_span = RowSpan{matra_top, matra_top + lay.matra - 1};
    truth.baseline = baseline;

    std::vector<int> word_start(nw), word_end(nw);
    int cursor = spec.margin;
    for (int wi = 0; wi < n_words; wi++) {
        const auto& w = words[std::size_t(wi)];
        word_start[std::size_t(wi)] = cursor;
        word_end[std::size_t(wi)] = cursor + w.width - 1;

        std::vector<Rect> char_boxes, anchors;
        std::vector<std::string> labels;
        std::vector<CharGroup> groups;
        for (std::size_t gi = 0; gi < w.glyphs.size(); gi++) {
            const GlyphProto& proto = alphabet[std::size_t(w.glyphs[gi])];
            int gx = cursor + w.offsets[gi];
            for (int y = 0; y < proto.img.height; y++)
                for (int x = 0; x < proto.img.width; x++)
                    if (proto.img.at(x, y))
                        canvas.at(gx + x, spec.margin + y) = 1;
            anchors.push_back(Rect{gx, spec.margin, proto.img.width, proto.img.height});
            labels.push_back(proto.label);
            groups.push_back(proto.group);

            // character box = middle-zone foreground extent, matra rows included
            int c0 = proto.img.width, c1 = -1;
            for (int y = lay.mid_top(); y <= lay.base_row(); y++)
                for (int x = 0; x < proto.img.width; x++)
                    if (proto.img.at(x, y)) {
                        c0 = std::min(c0, x);
                        c1 = std::max(c1, x);
                    }
            char_boxes.push_back(Rect{gx + c0, matra_top, c1 - c0 + 1,
                                      baseline - matra_top + 1});
        }
        // continuous per-word headline across the glyph spacing
        for (int y = truth.matra_span.top; y <= truth.matra_span.bottom; y++)
            for (int x = word_start[std::size_t(wi)]; x <= word_end[std::size_t(wi)]; x++)
                canvas.at(x, y) = 1;

        truth.char_boxes.push_back(std::move(char_boxes));
        truth.glyph_anchors.push_back(std::move(anchors));
        truth.labels.push_back(std::move(labels));
        truth.groups.push_back(std::move(groups));

        cursor = word_end[std::size_t(wi)] + 1;
        if (wi < int(gaps.size()))
            cursor += gaps[std::size_t(wi)] + 1;
    }

    // word boxes as the pipeline's column partition: the forward-difference
    // edge map reaches one column left of each word, margins attach to the
    // outermost words
    for (int wi = 0; wi < n_words; wi++) {
        int x0 = wi == 0 ? 0 : word_start[std::size_t(wi)] - 1;
        int x1 = wi == n_words - 1 ? width - 1 : word_end[std::size_t(wi)];
        truth.word_boxes.push_back(Rect{x0, 0, x1 - x0 + 1, height});
    }

    std::uint8_t fg = spec.light_on_dark ? spec.background : spec.foreground;
    std::uint8_t bg = spec.light_on_dark ? spec.foreground : spec.background;
    GrayImage img(width, height, bg);
    for (int y = 0; y < height; y++)
        for (int x = 0; x < width; x++)
            if (canvas.at(x, y)) img.at(x, y) = fg;

    if (spec.background_slope != 0.0 || spec.noise_sigma > 0.0) {
        for (int y = 0; y < height; y++)
            for (int x = 0; x < width; x++) {
                double v = img.at(x, y);
                v += spec.background_slope * x;
                if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.gaussian();
                img.at(x, y) = std::uint8_t(std::clamp(std::lround(v), 0L, 255L));
            }
    }

    line.image = std::move(img);
    return line;
}

namespace {

json rect_to_json(const Rect& r) { return json::array({r.x0, r.y0, r.w, r.h}); }

Rect rect_from_json(const json& j) {
    return Rect{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>(), j.at(3).get<int>()};
}

} // namespace

std::string truth_to_json(const GroundTruth& truth) {
    json j;
    j["word_boxes"] = json::array();
    for (const auto& r : truth.word_boxes) j["word_boxes"].push_back(rect_to_json(r));
    auto rects2d = [](const std::vector<std::vector<Rect>>& v) {
        json out = json::array();
        for (const auto& word : v) {
            json w = json::array();
            for (const auto& r : word) w.push_back(rect_to_json(r));
            out.push_back(std::move(w));
        }
        return out;
    };
    j["char_boxes"] = rects2d(truth.char_boxes);
    j["glyph_anchors"] = rects2d(truth.glyph_anchors);
    j["labels"] = truth.labels;
    json groups = json::array();
    for (const auto& word : truth.groups) {
        json w = json::array();
        for (auto g : word) w.push_back(group_name(g));
        groups.push_back(std::move(w));
    }
    j["groups"] = std::move(groups);
    j["matra"] = json::array({truth.matra_span.top, truth.matra_span.bottom});
    j["baseline"] = truth.baseline;
    return j.dump(2) + "\n";
}

GroundTruth truth_from_json(const std::string& text) {
    json j = json::parse(text);
    GroundTruth t;
    for (const auto& r : j.at("word_boxes")) t.word_boxes.push_back(rect_from_json(r));
    for (const auto& word : j.at("char_boxes")) {
        std::vector<Rect> rects;
        for (const auto& r : word) rects.push_back(rect_from_json(r));
        t.char_boxes.push_back(std::move(rects));
    }
    for (const auto& word : j.at("glyph_anchors")) {
        std::vector<Rect> rects;
        for (const auto& r : word) rects.push_back(rect_from_json(r));
        t.glyph_anchors.push_back(std::move(rects));
    }
    t.labels = j.at("labels").get<std::vector<std::vector<std::string>>>();
    for (const auto& word : j.at("groups")) {
        std::vector<CharGroup> gs;
        for (const auto& g : word) gs.push_back(group_from_name(g.get<std::string>()));
        t.groups.push_back(std::move(gs));
    }
    t.matra_span = RowSpan{j.at("matra").at(0).get<int>(), j.at("matra").at(1).get<int>()};
    t.baseline = j.at("baseline").get<int>();
    return t;
}

GroundTruth load_truth(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DecodeError("cannot open truth file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return truth_from_json(ss.str());
}

void write_corpus(const std::string& dir, const SynthSpec& spec, int lines) {
    std::filesystem::create_directories(dir);
    for (int i = 0; i < lines; i++) {
        SynthSpec s = spec;
        s.seed = spec.seed + std::uint64_t(i);
        SynthLine line = generate_line(s);
        char name[16];
        std::snprintf(name, sizeof name, "%04d", i);
        std::string stem = dir + "/" + name;
        save_pgm(stem + ".pgm", line.image);
        std::ofstream f(stem + ".truth.json", std::ios::binary);
        if (!f) throw DecodeError("cannot write truth file: " + stem + ".truth.json");
        f << truth_to_json(line.truth);
    }
}

} // namespace vtext
