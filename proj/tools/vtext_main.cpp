#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vtext/image_io.hpp"
#include "vtext/pipeline.hpp"
#include "vtext/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

vtext::SynthSpec spec_from_json_file(const std::string& path) {
    json j = json::parse(read_text(path));
    vtext::SynthSpec s;
    s.seed = j.value("seed", s.seed);
    s.alphabet_seed = j.value("alphabet_seed", s.alphabet_seed);
    s.alphabet_size = j.value("alphabet_size", s.alphabet_size);
    auto range = [&](const char* key, vtext::IntRange d) {
        if (!j.contains(key)) return d;
        return vtext::IntRange{j[key].at(0).get<int>(), j[key].at(1).get<int>()};
    };
    s.words = range("words", s.words);
    s.glyphs_per_word = range("glyphs_per_word", s.glyphs_per_word);
    s.gap_width = range("gap_width", s.gap_width);
    s.ascender_prob = j.value("ascender_prob", s.ascender_prob);
    s.descender_prob = j.value("descender_prob", s.descender_prob);
    s.noise_sigma = j.value("noise_sigma", s.noise_sigma);
    s.background_slope = j.value("background_slope", s.background_slope);
    s.light_on_dark = j.value("light_on_dark", s.light_on_dark);
    s.matra_thickness = j.value("matra_thickness", s.matra_thickness);
    s.middle_height = j.value("middle_height", s.middle_height);
    s.upper_height = j.value("upper_height", s.upper_height);
    s.lower_height = j.value("lower_height", s.lower_height);
    s.margin = j.value("margin", s.margin);
    s.foreground = std::uint8_t(j.value("foreground", int(s.foreground)));
    s.background = std::uint8_t(j.value("background", int(s.background)));
    return s;
}

std::vector<std::string> sorted_stems(const std::string& dir, const std::string& suffix) {
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (name.size() > suffix.size() &&
            name.substr(name.size() - suffix.size()) == suffix)
            stems.push_back(name.substr(0, name.size() - suffix.size()));
    }
    std::sort(stems.begin(), stems.end());
    return stems;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"video text line extraction and recognition"};
    app.require_subcommand(1);

    vtext::PipelineConfig config;

    std::string img_path, out_path, model_path, corpus_dir, out_dir;
    std::string pred_dir, truth_dir, spec_path;
    int seed = 1, lines = 10;

    auto add_tunables = [&](CLI::App* cmd) {
        cmd->add_option("--min-gap-width", config.min_gap_width,
                        "minimum zero-column run treated as a word gap");
        cmd->add_option("--matra-band", config.matra_band,
                        "relative projection band that extends the matra span");
        cmd->add_option("--max-dev", config.max_dev,
                        "column deviation bound for piecewise character scans");
    };

    CLI::App* seg = app.add_subcommand("segment", "segment a text line image");
    seg->add_option("image", img_path, "PNG or PGM text line")->required();
    seg->add_option("--out", out_path, "output JSON path")->required();
    seg->add_option("--dump-overlays", config.dump_overlays, "directory for stage overlays");
    add_tunables(seg);

    CLI::App* rec = app.add_subcommand("recognize", "segment and recognize a text line");
    rec->add_option("image", img_path, "PNG or PGM text line");
    rec->add_option("--model", model_path, "model JSON")->required();
    rec->add_option("--out", out_path, "output JSON path");
    rec->add_option("--corpus", corpus_dir, "recognize a whole corpus directory");
    rec->add_option("--out-dir", out_dir, "per-line output directory for --corpus");
    rec->add_option("--dump-overlays", config.dump_overlays, "directory for stage overlays");
    rec->add_option("--width-tol", config.width_tol, "template width tolerance fraction");
    add_tunables(rec);

    CLI::App* trn = app.add_subcommand("train", "train a model from a labeled corpus");
    trn->add_option("--corpus", corpus_dir, "corpus directory (NNNN.pgm + NNNN.truth.json)")
        ->required();
    trn->add_option("--out", out_path, "model JSON path")->required();
    trn->add_option("--width-tol", config.width_tol, "template width tolerance fraction");
    add_tunables(trn);

    CLI::App* syn = app.add_subcommand("synth", "generate a synthetic corpus");
    syn->add_option("--seed", seed, "corpus seed");
    syn->add_option("--lines", lines, "number of lines");
    syn->add_option("--spec", spec_path, "generator spec JSON");
    syn->add_option("--out", out_dir, "corpus directory")->required();

    CLI::App* evl = app.add_subcommand("eval", "score predictions against ground truth");
    evl->add_option("--pred", pred_dir, "directory of NNNN.json results")->required();
    evl->add_option("--truth", truth_dir, "directory of NNNN.truth.json files")->required();
    evl->add_option("--iou", config.iou, "column IoU threshold for box matches");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit 2
    }

    try {
        if (seg->parsed()) {
            auto img = vtext::load_image(img_path);
            auto result = vtext::run_pipeline(img, nullptr, config);
            write_text(out_path, vtext::result_to_json(result));
        } else if (rec->parsed()) {
            auto model = vtext::load_model(model_path);
            if (!corpus_dir.empty()) {
                if (out_dir.empty())
                    throw UsageError("--corpus needs --out-dir");
                fs::create_directories(out_dir);
                for (const auto& stem : sorted_stems(corpus_dir, ".pgm")) {
                    auto img = vtext::load_image(corpus_dir + "/" + stem + ".pgm");
                    auto result = vtext::run_pipeline(img, &model, config);
                    write_text(out_dir + "/" + stem + ".json",
                               vtext::result_to_json(result));
                }
            } else {
                if (img_path.empty() || out_path.empty())
                    throw UsageError("recognize needs an image and --out "
                                     "(or --corpus with --out-dir)");
                auto img = vtext::load_image(img_path);
                auto result = vtext::run_pipeline(img, &model, config);
                write_text(out_path, vtext::result_to_json(result));
            }
        } else if (trn->parsed()) {
            auto model = vtext::train_model(corpus_dir, config);
            vtext::save_model(out_path, model);
        } else if (syn->parsed()) {
            vtext::SynthSpec s;
            if (!spec_path.empty()) s = spec_from_json_file(spec_path);
            if (syn->count("--seed")) s.seed = std::uint64_t(seed);
            vtext::write_corpus(out_dir, s, lines);
        } else if (evl->parsed()) {
            std::vector<vtext::TranscriptionResult> results;
            std::vector<vtext::GroundTruth> truths;
            for (const auto& stem : sorted_stems(truth_dir, ".truth.json")) {
                truths.push_back(vtext::load_truth(truth_dir + "/" + stem + ".truth.json"));
                results.push_back(vtext::result_from_json(read_text(pred_dir + "/" + stem + ".json")));
            }
            auto m = vtext::evaluate(results, truths, config.iou);
            json j{{"total_words", m.total_words},
                   {"total_chars", m.total_chars},
                   {"chars_segmented_correctly", m.chars_segmented_correctly},
                   {"chars_recognized", m.chars_recognized},
                   {"segmentation_rate", m.segmentation_rate},
                   {"recognition_rate", m.recognition_rate},
                   {"segmentation_pct", vtext::percent_one_decimal(m.segmentation_rate)},
                   {"recognition_pct", vtext::percent_one_decimal(m.recognition_rate)}};
            std::cout << j.dump(2) << "\n";
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
