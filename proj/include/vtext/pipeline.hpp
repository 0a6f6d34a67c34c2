#ifndef VTEXT_PIPELINE_HPP
#define VTEXT_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "vtext/classify.hpp"
#include "vtext/image.hpp"
#include "vtext/line_structure.hpp"
#include "vtext/synth.hpp"

namespace vtext {

struct PipelineConfig {
    int min_gap_width = 2;
    double matra_band = 0.85;
    int max_dev = 3;
    double width_tol = 0.25;
    double iou = 0.8;
    std::string dump_overlays; // directory; empty disables dumps
};

struct CharResult {
    Rect rect; // line coordinates
    std::string label;
    std::string group;
    double score = 0;
};

struct TranscriptionResult {
    int width = 0;
    int height = 0;
    LineStructure structure;
    std::vector<CharResult> chars;
    std::string failure; // empty on structural success
};

// Full stage chain: gradient -> 2-means edge map -> component noise removal
// -> word gaps -> per-word Otsu -> reassembly -> matra/baseline/zones ->
// characters -> recognition. Structural failures (blank line, matra at the
// baseline) produce an empty result with the reason recorded instead of
// throwing. Pass model = nullptr to segment without recognizing.
TranscriptionResult run_pipeline(const GrayImage& line, const RecognitionModel* model,
                                 const PipelineConfig& config);

struct Metrics {
    long long total_words = 0;
    long long total_chars = 0;
    long long chars_segmented_correctly = 0;
    long long chars_recognized = 0;
    double segmentation_rate = 0;
    double recognition_rate = 0;

    static Metrics from_counts(long long words, long long chars,
                               long long segmented, long long recognized);
};

// Percentage display truncated to one decimal (3360/4120 prints 81.5).
double percent_one_decimal(double rate);

// Greedy one-to-one matching of predicted and truth character boxes by
// descending column IoU, counted at the threshold. Throws LengthMismatch
// when results and truths differ in length.
Metrics evaluate(const std::vector<TranscriptionResult>& results,
                 const std::vector<GroundTruth>& truths, double iou_threshold);

double column_iou(const Rect& a, const Rect& b);

// Trains planes, routing trees, and templates from a synth corpus directory
// (NNNN.pgm + NNNN.truth.json). Character bitmaps are cut from the
// pipeline's own binarized lines at the truth boxes.
RecognitionModel train_model(const std::string& corpus_dir, const PipelineConfig& config);

std::string result_to_json(const TranscriptionResult& result);
TranscriptionResult result_from_json(const std::string& text);

} // namespace vtext

#endif
