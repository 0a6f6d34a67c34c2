#include "vtext/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vtext/char_segment.hpp"
#include "vtext/components.hpp"
#include "vtext/gradient.hpp"
#include "vtext/image_io.hpp"

namespace vtext {

using nlohmann::json;

namespace {

RgbImage binary_to_rgb(const BinaryImage& bin) {
    RgbImage out(bin.width, bin.height);
    for (int y = 0; y < bin.height; y++)
        for (int x = 0; x < bin.width; x++)
            if (bin.at(x, y)) out.set(x, y, 255, 255, 255);
    return out;
}

void dump_overlays(const std::string& dir, const GradientMap& gmap,
                   const BinaryImage& cluster, const BinaryImage& denoised,
                   const std::vector<ColSpan>& gaps, const BinaryImage& line_bin,
                   const TranscriptionResult& result) {
    std::filesystem::create_directories(dir);

    RgbImage grad(gmap.width, gmap.height);
    for (int y = 0; y < gmap.height; y++)
        for (int x = 0; x < gmap.width; x++) {
            auto v = std::uint8_t(std::clamp(gmap.at(x, y), 0, 255));
            grad.set(x, y, v, v, v);
        }
    save_png(dir + "/01_gradient.png", grad);
    save_png(dir + "/02_text_cluster.png", binary_to_rgb(cluster));

    RgbImage gapped = binary_to_rgb(denoised);
    for (const auto& g : gaps)
        for (int x = g.first; x <= g.last; x++)
            for (int y = 0; y < denoised.height; y++)
                gapped.set(x, y, 200, 40, 40);
    save_png(dir + "/03_denoised_gaps.png", gapped);

    RgbImage zones = binary_to_rgb(line_bin);
    if (result.failure.empty()) {
        for (int y = result.structure.matra.top; y <= result.structure.matra.bottom; y++)
            for (int x = 0; x < line_bin.width; x++)
                if (!line_bin.at(x, y)) zones.set(x, y, 40, 80, 220);
        for (int x = 0; x < line_bin.width; x++)
            if (!line_bin.at(x, result.structure.baseline))
                zones.set(x, result.structure.baseline, 40, 200, 40);
    }
    save_png(dir + "/04_line_structure.png", zones);

    RgbImage seg = binary_to_rgb(line_bin);
    for (const auto& c : result.chars) {
        for (int y = c.rect.y0; y <= c.rect.y1(); y++) {
            seg.set(c.rect.x0, y, 200, 40, 40);
            seg.set(c.rect.x1(), y, 200, 40, 40);
        }
    }
    save_png(dir + "/05_characters.png", seg);
}

} // namespace

TranscriptionResult run_pipeline(const GrayImage& line, const RecognitionModel* model,
                                 const PipelineConfig& config) {
    TranscriptionResult result;
    result.width = line.width;
    result.height = line.height;

    GradientMap gmap = combine_and_normalize(horizontal_gradient(line),
                                             vertical_gradient(line));
    BinaryImage cluster = kmeans_binarize(gmap);
    BinaryImage denoised = remove_noise(cluster, label_components(cluster));

    auto gaps = detect_word_gaps(vertical_projection(denoised), config.min_gap_width);
    auto word_rects = split_words(line.width, line.height, gaps);
    result.structure.word_boxes = word_rects;

    std::vector<std::pair<Rect, BinaryImage>> words;
    words.reserve(word_rects.size());
    for (const auto& rect : word_rects)
        words.emplace_back(rect, binarize_word(line, rect));
    BinaryImage line_bin = reassemble_line(line.width, line.height, words);

    try {
        RowSpan matra = detect_matra(horizontal_projection(line_bin), config.matra_band);
        int baseline = detect_baseline(line_bin, matra);
        result.structure.matra = matra;
        result.structure.baseline = baseline;
        result.structure.zones = split_zones(line.height, matra, baseline);

        for (const auto& [rect, bin] : words) {
            for (const auto& cb : extract_characters(bin, matra, baseline, config.max_dev)) {
                CharResult cr;
                cr.rect = Rect{rect.x0 + cb.rect.x0, cb.rect.y0, cb.rect.w, cb.rect.h};
                if (model) {
                    BinaryImage ch = crop(line_bin, cr.rect);
                    RowSpan m{0, matra.bottom - matra.top};
                    Recognition rec = recognize_character(ch, m, ch.height - 1, *model);
                    cr.label = rec.label;
                    cr.group = group_name(rec.group);
                    cr.score = rec.score;
                }
                result.chars.push_back(std::move(cr));
            }
        }
    } catch (const EmptyLine&) {
        result.failure = "EmptyLine";
        result.chars.clear();
    } catch (const InvalidStructure&) {
        result.failure = "InvalidStructure";
        result.chars.clear();
    }

    if (!config.dump_overlays.empty())
        dump_overlays(config.dump_overlays, gmap, cluster, denoised, gaps, line_bin, result);
    return result;
}

double column_iou(const Rect& a, const Rect& b) {
    int lo = std::max(a.x0, b.x0);
    int hi = std::min(a.x1(), b.x1());
    int inter = std::max(0, hi - lo + 1);
    int uni = a.w + b.w - inter;
    return uni > 0 ? double(inter) / double(uni) : 0.0;
}

Metrics Metrics::from_counts(long long words, long long chars, long long segmented,
                             long long recognized) {
    Metrics m;
    m.total_words = words;
    m.total_chars = chars;
    m.chars_segmented_correctly = segmented;
    m.chars_recognized = recognized;
    m.segmentation_rate = chars > 0 ? double(segmented) / double(chars) : 0.0;
    m.recognition_rate = chars > 0 ? double(recognized) / double(chars) : 0.0;
    return m;
}

double percent_one_decimal(double rate) {
    // rates are count ratios; the nudge keeps exact tenths (95/100) from
    // truncating a notch low while staying far under any real count gap
    return std::floor(rate * 1000.0 + 1e-7) / 10.0;
}

Metrics evaluate(const std::vector<TranscriptionResult>& results,
                 const std::vector<GroundTruth>& truths, double iou_threshold) {
    if (results.size() != truths.size())
        throw LengthMismatch("results and truths must align 1:1");

    long long total_words = 0, total_chars = 0, segmented = 0, recognized = 0;
    for (std::size_t li = 0; li < results.size(); li++) {
        const auto& pred = results[li].chars;
        struct TruthChar {
            Rect rect;
            std::string label;
        };
        std::vector<TruthChar> truth;
        for (std::size_t wi = 0; wi < truths[li].char_boxes.size(); wi++)
            for (std::size_t ci = 0; ci < truths[li].char_boxes[wi].size(); ci++)
                truth.push_back({truths[li].char_boxes[wi][ci], truths[li].labels[wi][ci]});
        total_words += (long long)truths[li].word_boxes.size();
        total_chars += (long long)truth.size();

        struct Pair {
            double iou;
            int p, t;
        };
        std::vector<Pair> pairs;
        for (int p = 0; p < int(pred.size()); p++)
            for (int t = 0; t < int(truth.size()); t++) {
                double iou = column_iou(pred[std::size_t(p)].rect, truth[std::size_t(t)].rect);
                if (iou >= iou_threshold) pairs.push_back({iou, p, t});
            }
        std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            if (a.iou != b.iou) return a.iou > b.iou;
            if (a.p != b.p) return a.p < b.p;
            return a.t < b.t;
        });
        std::vector<char> used_p(pred.size(), 0), used_t(truth.size(), 0);
        for (const auto& pr : pairs) {
            if (used_p[std::size_t(pr.p)] || used_t[std::size_t(pr.t)]) continue;
            used_p[std::size_t(pr.p)] = 1;
            used_t[std::size_t(pr.t)] = 1;
            segmented++;
            if (pred[std::size_t(pr.p)].label == truth[std::size_t(pr.t)].label)
                recognized++;
        }
    }
    return Metrics::from_counts(total_words, total_chars, segmented, recognized);
}

namespace {

struct TrainingSample {
    std::string label;
    BinaryImage bitmap;
    FeatureVector fv;
    CharGroup truth_group;
};

struct TestSpec {
    TreeTest test;
    double threshold;
};

int build_tree_rec(DecisionTree& tree, const std::vector<TrainingSample>& samples,
                   std::vector<int> ids, std::vector<TestSpec> tests,
                   const TreeThresholds& thresholds) {
    while (!tests.empty()) {
        TestSpec spec = tests.front();
        tests.erase(tests.begin());

        DecisionTree probe;
        probe.nodes.push_back(TreeNode{false, -1, spec.test, spec.threshold, 1, 2});
        probe.nodes.push_back(TreeNode{true, 0, TreeTest::width_ge, 0, -1, -1});
        probe.nodes.push_back(TreeNode{true, 1, TreeTest::width_ge, 0, -1, -1});
        std::vector<int> yes, no;
        for (int id : ids) {
            const auto& s = samples[std::size_t(id)];
            int leaf = tree_classify(s.fv, s.bitmap, 0, probe, thresholds);
            (leaf == 0 ? yes : no).push_back(id);
        }
        if (yes.empty() || no.empty())
            continue; // test does not discriminate here; drop it

        int node = int(tree.nodes.size());
        tree.nodes.push_back(TreeNode{false, -1, spec.test, spec.threshold, -1, -1});
        int t = build_tree_rec(tree, samples, std::move(yes), tests, thresholds);
        int f = build_tree_rec(tree, samples, std::move(no), tests, thresholds);
        tree.nodes[std::size_t(node)].if_true = t;
        tree.nodes[std::size_t(node)].if_false = f;
        return node;
    }

    // leaf: width-ranked templates of everything routed here
    std::vector<std::pair<std::string, BinaryImage>> leaf_samples;
    for (int id : ids)
        leaf_samples.emplace_back(samples[std::size_t(id)].label,
                                  samples[std::size_t(id)].bitmap);
    int leaf_id = int(tree.leaves.size());
    tree.leaves.push_back(build_templates(leaf_samples));
    int node = int(tree.nodes.size());
    tree.nodes.push_back(TreeNode{true, leaf_id, TreeTest::width_ge, 0, -1, -1});
    return node;
}

DecisionTree build_default_tree(const std::vector<TrainingSample>& samples,
                                std::vector<int> ids, const TreeThresholds& thresholds) {
    DecisionTree tree;
    if (ids.empty()) {
        tree.nodes.push_back(TreeNode{true, 0, TreeTest::width_ge, 0, -1, -1});
        tree.leaves.emplace_back();
        return tree;
    }

    std::vector<int> widths;
    for (int id : ids) widths.push_back(samples[std::size_t(id)].bitmap.width);
    std::sort(widths.begin(), widths.end());
    double median = widths[widths.size() / 2];

    std::vector<TestSpec> tests{{TreeTest::width_ge, median}, {TreeTest::headline, 0}};
    build_tree_rec(tree, samples, std::move(ids), std::move(tests), thresholds);
    return tree; // the recursion creates the root first, so it sits at index 0
}

} // namespace

RecognitionModel train_model(const std::string& corpus_dir, const PipelineConfig& config) {
    std::vector<std::string> stems;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
        std::string p = entry.path().string();
        if (p.size() > 4 && p.substr(p.size() - 4) == ".pgm")
            stems.push_back(p.substr(0, p.size() - 4));
    }
    std::sort(stems.begin(), stems.end());
    if (stems.empty())
        throw InsufficientData("no .pgm lines found in corpus: " + corpus_dir);

    std::vector<TrainingSample> samples;
    for (const auto& stem : stems) {
        GrayImage gray = load_image(stem + ".pgm");
        GroundTruth truth = load_truth(stem + ".truth.json");

        // same binarization path the recognizer uses, cut at the truth boxes
        GradientMap gmap = combine_and_normalize(horizontal_gradient(gray),
                                                 vertical_gradient(gray));
        BinaryImage cluster = kmeans_binarize(gmap);
        BinaryImage denoised = remove_noise(cluster, label_components(cluster));
        auto gaps = detect_word_gaps(vertical_projection(denoised), config.min_gap_width);
        auto word_rects = split_words(gray.width, gray.height, gaps);
        std::vector<std::pair<Rect, BinaryImage>> words;
        for (const auto& rect : word_rects)
            words.emplace_back(rect, binarize_word(gray, rect));
        BinaryImage line_bin = reassemble_line(gray.width, gray.height, words);

        RowSpan matra = truth.matra_span;
        for (std::size_t wi = 0; wi < truth.char_boxes.size(); wi++) {
            for (std::size_t ci = 0; ci < truth.char_boxes[wi].size(); ci++) {
                const Rect& r = truth.char_boxes[wi][ci];
                if (!rect_within(r, gray.width, gray.height))
                    continue;
                BinaryImage ch = crop(line_bin, r);
                TrainingSample s;
                s.label = truth.labels[wi][ci];
                s.truth_group = truth.groups[wi][ci];
                try {
                    s.fv = extract_features(ch, RowSpan{0, matra.bottom - matra.top},
                                            ch.height - 1);
                } catch (const BlankCharacter&) {
                    continue;
                }
                s.bitmap = std::move(ch);
                samples.push_back(std::move(s));
            }
        }
    }
    if (samples.empty())
        throw InsufficientData("corpus yielded no character samples");

    std::vector<std::pair<FeatureVector, CharGroup>> plane_samples;
    for (const auto& s : samples) plane_samples.emplace_back(s.fv, s.truth_group);
    RecognitionModel model;
    model.planes = train_planes(plane_samples);
    model.width_tol = config.width_tol;

    // store templates where grouping will actually route candidates, so the
    // tree lookup stays consistent with the trained planes
    std::vector<int> basic_ids, compound_ids;
    for (int i = 0; i < int(samples.size()); i++) {
        CharGroup g = group_character(samples[std::size_t(i)].fv, model.planes);
        (g == CharGroup::compound ? compound_ids : basic_ids).push_back(i);
    }
    model.basic_tree = build_default_tree(samples, basic_ids, model.thresholds);
    model.compound_tree = build_default_tree(samples, compound_ids, model.thresholds);

    std::vector<std::string> alphabet;
    for (const auto& s : samples) alphabet.push_back(s.label);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    model.alphabet = std::move(alphabet);
    model.metadata = "trained from " + std::to_string(samples.size()) + " characters, " +
                     std::to_string(stems.size()) + " lines";
    return model;
}

std::string result_to_json(const TranscriptionResult& result) {
    json j;
    j["version"] = 1;
    j["width"] = result.width;
    j["height"] = result.height;
    j["failure"] = result.failure;
    json words = json::array();
    for (const auto& r : result.structure.word_boxes)
        words.push_back(json::array({r.x0, r.y0, r.w, r.h}));
    j["words"] = std::move(words);
    j["matra"] = json::array({result.structure.matra.top, result.structure.matra.bottom});
    j["baseline"] = result.structure.baseline;
    json chars = json::array();
    for (const auto& c : result.chars) {
        chars.push_back(json{{"rect", json::array({c.rect.x0, c.rect.y0, c.rect.w, c.rect.h})},
                             {"label", c.label},
                             {"group", c.group},
                             {"score", c.score}});
    }
    j["chars"] = std::move(chars);
    return j.dump(2) + "\n";
}

TranscriptionResult result_from_json(const std::string& text) {
    json j = json::parse(text);
    TranscriptionResult r;
    r.width = j.at("width").get<int>();
    r.height = j.at("height").get<int>();
    r.failure = j.value("failure", std::string());
    for (const auto& w : j.at("words"))
        r.structure.word_boxes.push_back(
            Rect{w.at(0).get<int>(), w.at(1).get<int>(), w.at(2).get<int>(), w.at(3).get<int>()});
    r.structure.matra = RowSpan{j.at("matra").at(0).get<int>(), j.at("matra").at(1).get<int>()};
    r.structure.baseline = j.at("baseline").get<int>();
    for (const auto& c : j.at("chars")) {
        CharResult cr;
        const auto& rect = c.at("rect");
        cr.rect = Rect{rect.at(0).get<int>(), rect.at(1).get<int>(), rect.at(2).get<int>(),
                       rect.at(3).get<int>()};
        cr.label = c.value("label", std::string());
        cr.group = c.value("group", std::string());
        cr.score = c.value("score", 0.0);
        r.chars.push_back(std::move(cr));
    }
    return r;
}

} // namespace vtext
