#ifndef VTEXT_CLASSIFY_HPP
#define VTEXT_CLASSIFY_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vtext/features.hpp"
#include "vtext/image.hpp"

namespace vtext {

// Two discriminant planes over the eight scalar features. Index 0 is the
// offset (a0/b0), indices 1..8 the coefficients.
struct DiscriminantPlanes {
    std::array<double, 9> a{};
    std::array<double, 9> b{};
};

// s_a < 0 -> modifier; s_a >= 0, s_b < 0 -> basic; both >= 0 -> compound.
CharGroup group_character(const FeatureVector& fv, const DiscriminantPlanes& planes);

// Pocket perceptron fit of both planes: plane a separates modifier from the
// rest, plane b separates basic from compound. Deterministic regardless of
// input order (samples are canonically sorted first). Throws
// InsufficientData unless all three groups are present.
DiscriminantPlanes train_planes(
    const std::vector<std::pair<FeatureVector, CharGroup>>& samples,
    int max_epochs = 10000);

// Run-length encoded glyph bitmap. Runs are inclusive [start, end] column
// intervals per row, sorted and disjoint.
struct GlyphTemplate {
    std::string label;
    int bbox_w = 0;
    int bbox_h = 0;
    std::vector<std::vector<std::pair<int, int>>> rle_rows;
};

GlyphTemplate encode_template(const std::string& label, const BinaryImage& glyph);
BinaryImage decode_template(const GlyphTemplate& t);

struct MatchResult {
    std::string label;
    double score = 0;
};

// Run-based Dice matching against width-ranked templates. Only templates
// with |w - candidate_w| <= width_tol * candidate_w are tried, nearest
// width first. Returns nullopt when no template is within tolerance.
std::optional<MatchResult> template_match(const BinaryImage& ch,
                                          const std::vector<GlyphTemplate>& templates,
                                          double width_tol);

enum class TreeTest { headline, vertical_line, left_slant, width_ge, upper_zone };

std::string tree_test_name(TreeTest t);
TreeTest tree_test_from_name(const std::string& name);

struct TreeNode {
    bool is_leaf = false;
    int leaf_id = -1;       // valid when is_leaf
    TreeTest test = TreeTest::width_ge;
    double threshold = 0;   // used by width_ge
    int if_true = -1;
    int if_false = -1;
};

// Binary routing tree; node 0 is the root. Each leaf owns a width-sorted
// template list.
struct DecisionTree {
    std::vector<TreeNode> nodes;
    std::vector<std::vector<GlyphTemplate>> leaves;
};

struct TreeThresholds {
    double headline = 0.6;      // f5 >= headline
    double vertical_line = 0.7; // f7a >= vertical_line
};

// matra_top is the first matra row in the character image's coordinates;
// the upper-zone test looks for foreground above it.
int tree_classify(const FeatureVector& fv, const BinaryImage& ch, int matra_top,
                  const DecisionTree& tree, const TreeThresholds& thresholds);

struct RecognitionModel {
    int version = 1;
    DiscriminantPlanes planes;
    TreeThresholds thresholds;
    double width_tol = 0.25;
    DecisionTree basic_tree;    // modifier + basic characters
    DecisionTree compound_tree; // compound characters
    std::vector<std::string> alphabet;
    std::string metadata;
};

struct Recognition {
    std::string label; // "REJECT" when no template was within tolerance
    CharGroup group = CharGroup::basic;
    double score = 0;
};

inline constexpr const char* kRejectLabel = "REJECT";

Recognition recognize_character(const BinaryImage& ch, const RowSpan& matra,
                                int baseline, const RecognitionModel& model);

// One RLE template per sample, grouped per label, each list sorted by
// width. Throws InsufficientData on an empty sample set.
std::vector<GlyphTemplate> build_templates(
    const std::vector<std::pair<std::string, BinaryImage>>& samples);

// JSON persistence; the schema is documented in docs/formats.md.
std::string model_to_json(const RecognitionModel& model);
RecognitionModel model_from_json(const std::string& text);
void save_model(const std::string& path, const RecognitionModel& model);
RecognitionModel load_model(const std::string& path);

} // namespace vtext

#endif
