#ifndef VTEXT_SYNTH_HPP
#define VTEXT_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vtext/features.hpp"
#include "vtext/image.hpp"

namespace vtext {

struct IntRange {
    int min = 0;
    int max = 0;
};

// Deterministic text-line generator standing in for a real labeled corpus.
// Same spec and seed -> bit-identical line and truth.
struct SynthSpec {
    std::uint64_t seed = 1;
    std::uint64_t alphabet_seed = 1; // prototypes depend on this, not on seed
    int alphabet_size = 10;
    IntRange words{2, 4};
    IntRange glyphs_per_word{3, 7};
    IntRange gap_width{6, 10};
    double ascender_prob = 0.25;
    double descender_prob = 0.0;
    double noise_sigma = 0.0;
    double background_slope = 0.0; // intensity drift per column, off by default
    bool light_on_dark = false;
    int matra_thickness = 2;
    int middle_height = 12;
    int upper_height = 4;
    int lower_height = 4;
    int margin = 6;
    std::uint8_t foreground = 40;
    std::uint8_t background = 200;
};

struct GlyphProto {
    std::string label;
    BinaryImage img; // upper band, matra rows, middle band, lower band
    CharGroup group;
    int headline_top = 0; // first matra row inside img
};

struct GroundTruth {
    std::vector<Rect> word_boxes; // the column partition the pipeline yields
    std::vector<std::vector<Rect>> char_boxes;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<CharGroup>> groups;
    std::vector<std::vector<Rect>> glyph_anchors; // placed prototype rects
    RowSpan matra_span;
    int baseline = 0;

    int total_chars() const;
};

// Procedural stroke-built glyphs under a full-width headline segment, one
// deterministic shape per label. Needs size >= 3 so each group appears.
std::vector<GlyphProto> generate_alphabet(int size, std::uint64_t seed,
                                          const SynthSpec& layout = SynthSpec{});

struct SynthLine {
    GrayImage image;
    GroundTruth truth;
};

SynthLine generate_line(const SynthSpec& spec);

// Corpus layout: NNNN.pgm + NNNN.truth.json under dir; line i uses
// spec.seed + i.
void write_corpus(const std::string& dir, const SynthSpec& spec, int lines);

std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);
GroundTruth load_truth(const std::string& path);

} // namespace vtext

#endif
