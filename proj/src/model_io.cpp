#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vtext/classify.hpp"

namespace vtext {

using nlohmann::json;

namespace {

json template_to_json(const GlyphTemplate& t) {
    json rows = json::array();
    for (const auto& row : t.rle_rows) {
        json r = json::array();
        for (const auto& [s, e] : row) r.push_back(json::array({s, e}));
        rows.push_back(std::move(r));
    }
    return json{{"label", t.label}, {"w", t.bbox_w}, {"h", t.bbox_h}, {"rows", std::move(rows)}};
}

GlyphTemplate template_from_json(const json& j) {
    GlyphTemplate t;
    t.label = j.at("label").get<std::string>();
    t.bbox_w = j.at("w").get<int>();
    t.bbox_h = j.at("h").get<int>();
    for (const auto& row : j.at("rows")) {
        std::vector<std::pair<int, int>> runs;
        for (const auto& r : row)
            runs.emplace_back(r.at(0).get<int>(), r.at(1).get<int>());
        t.rle_rows.push_back(std::move(runs));
    }
    if (int(t.rle_rows.size()) != t.bbox_h)
        throw InvalidStructure("template row count does not match its height");
    return t;
}

json tree_to_json(const DecisionTree& tree) {
    json nodes = json::array();
    for (std::size_t i = 0; i < tree.nodes.size(); i++) {
        const TreeNode& n = tree.nodes[i];
        json jn{{"id", int(i)}};
        if (n.is_leaf) {
            jn["leaf"] = n.leaf_id;
        } else {
            jn["test"] = tree_test_name(n.test);
            jn["threshold"] = n.threshold;
            jn["if_true"] = n.if_true;
            jn["if_false"] = n.if_false;
        }
        nodes.push_back(std::move(jn));
    }
    json leaves = json::array();
    for (const auto& leaf : tree.leaves) {
        json l = json::array();
        for (const auto& t : leaf) l.push_back(template_to_json(t));
        leaves.push_back(std::move(l));
    }
    return json{{"nodes", std::move(nodes)}, {"leaves", std::move(leaves)}};
}

DecisionTree tree_from_json(const json& j) {
    DecisionTree tree;
    for (const auto& jn : j.at("nodes")) {
        TreeNode n;
        if (jn.contains("leaf")) {
            n.is_leaf = true;
            n.leaf_id = jn.at("leaf").get<int>();
        } else {
            n.test = tree_test_from_name(jn.at("test").get<std::string>());
            n.threshold = jn.value("threshold", 0.0);
            n.if_true = jn.at("if_true").get<int>();
            n.if_false = jn.at("if_false").get<int>();
        }
        tree.nodes.push_back(n);
    }
    for (const auto& jl : j.at("leaves")) {
        std::vector<GlyphTemplate> leaf;
        for (const auto& jt : jl) leaf.push_back(template_from_json(jt));
        tree.leaves.push_back(std::move(leaf));
    }
    return tree;
}

} // namespace

std::string model_to_json(const RecognitionModel& model) {
    json j;
    j["version"] = model.version;
    j["planes"] = {{"a", model.planes.a}, {"b", model.planes.b}};
    j["thresholds"] = {{"headline", model.thresholds.headline},
                       {"vertical_line", model.thresholds.vertical_line}};
    j["width_tol"] = model.width_tol;
    j["alphabet"] = model.alphabet;
    j["basic_tree"] = tree_to_json(model.basic_tree);
    j["compound_tree"] = tree_to_json(model.compound_tree);
    j["metadata"] = model.metadata;
    return j.dump(2) + "\n";
}

RecognitionModel model_from_json(const std::string& text) {
    json j = json::parse(text);
    RecognitionModel m;
    m.version = j.at("version").get<int>();
    if (m.version != 1)
        throw InvalidStructure("unsupported model version");
    auto a = j.at("planes").at("a").get<std::vector<double>>();
    auto b = j.at("planes").at("b").get<std::vector<double>>();
    if (a.size() != 9 || b.size() != 9)
        throw InvalidStructure("plane coefficient arrays must have 9 entries");
    std::copy(a.begin(), a.end(), m.planes.a.begin());
    std::copy(b.begin(), b.end(), m.planes.b.begin());
    m.thresholds.headline = j.at("thresholds").at("headline").get<double>();
    m.thresholds.vertical_line = j.at("thresholds").at("vertical_line").get<double>();
    m.width_tol = j.at("width_tol").get<double>();
    m.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    m.basic_tree = tree_from_json(j.at("basic_tree"));
    m.compound_tree = tree_from_json(j.at("compound_tree"));
    m.metadata = j.value("metadata", std::string());
    return m;
}

void save_model(const std::string& path, const RecognitionModel& model) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidStructure("cannot open model file for writing: " + path);
    f << model_to_json(model);
}

RecognitionModel load_model(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidStructure("cannot open model file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return model_from_json(ss.str());
}

} // namespace vtext
