#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vtext/image_io.hpp"
#include "vtext/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string cli = VTEXT_CLI_PATH;

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("usage errors exit 2, runtime errors exit 1") {
    CHECK(run("") == 2);
    CHECK(run("segment") == 2);                // missing required options
    CHECK(run("frobnicate") == 2);             // unknown subcommand
    TempDir dir("vtext_cli_err");
    CHECK(run("segment " + (dir.path / "missing.pgm").string() + " --out " +
              (dir.path / "o.json").string()) == 1);
}

TEST_CASE("synth is reproducible and segment matches the truth") {
    TempDir dir("vtext_cli_seg");
    std::string c1 = (dir.path / "c1").string();
    std::string c2 = (dir.path / "c2").string();
    REQUIRE(run("synth --seed 7 --lines 3 --out " + c1) == 0);
    REQUIRE(run("synth --seed 7 --lines 3 --out " + c2) == 0);
    for (const char* name : {"0000.pgm", "0001.pgm", "0002.pgm",
                             "0000.truth.json", "0001.truth.json", "0002.truth.json"})
        CHECK(slurp(dir.path / "c1" / name) == slurp(dir.path / "c2" / name));

    std::string out = (dir.path / "seg.json").string();
    REQUIRE(run("segment " + c1 + "/0000.pgm --out " + out) == 0);
    json seg = json::parse(slurp(out));
    json truth = json::parse(slurp(dir.path / "c1" / "0000.truth.json"));
    CHECK(seg.at("words") == truth.at("word_boxes"));
    CHECK(seg.at("matra") == truth.at("matra"));
    CHECK(seg.at("baseline") == truth.at("baseline"));
    CHECK(seg.at("failure").get<std::string>().empty());
}

TEST_CASE("train, recognize and eval work end to end") {
    TempDir dir("vtext_cli_e2e");
    std::string corpus = (dir.path / "corpus").string();
    std::string model = (dir.path / "model.json").string();
    std::string pred = (dir.path / "pred").string();
    REQUIRE(run("synth --seed 11 --lines 8 --out " + corpus) == 0);
    REQUIRE(run("train --corpus " + corpus + " --out " + model) == 0);
    REQUIRE(run("recognize --model " + model + " --corpus " + corpus +
                " --out-dir " + pred) == 0);

    std::string eval_out = (dir.path / "eval.json").string();
    int rc = std::system((cli + " eval --pred " + pred + " --truth " + corpus + " > " +
                          eval_out + " 2>/dev/null")
                             .c_str());
    REQUIRE(WEXITSTATUS(rc) == 0);
    json metrics = json::parse(slurp(eval_out));
    CHECK(metrics.at("recognition_rate").get<double>() == 1.0);
    CHECK(metrics.at("segmentation_rate").get<double>() == 1.0);
}

TEST_CASE("single-image recognize writes a labeled result") {
    TempDir dir("vtext_cli_rec1");
    std::string corpus = (dir.path / "corpus").string();
    std::string model = (dir.path / "model.json").string();
    REQUIRE(run("synth --seed 19 --lines 6 --out " + corpus) == 0);
    REQUIRE(run("train --corpus " + corpus + " --out " + model) == 0);
    std::string out = (dir.path / "one.json").string();
    REQUIRE(run("recognize " + corpus + "/0002.pgm --model " + model + " --out " + out) == 0);
    json r = json::parse(slurp(out));
    json truth = json::parse(slurp(dir.path / "corpus" / "0002.truth.json"));
    std::vector<std::string> want;
    for (const auto& w : truth.at("labels"))
        for (const auto& l : w) want.push_back(l.get<std::string>());
    REQUIRE(r.at("chars").size() == want.size());
    for (std::size_t i = 0; i < want.size(); i++)
        CHECK(r.at("chars").at(i).at("label").get<std::string>() == want[i]);
}

TEST_CASE("the generator spec file drives synthesis") {
    TempDir dir("vtext_cli_spec");
    std::string spec_path = (dir.path / "spec.json").string();
    {
        std::ofstream f(spec_path);
        f << R"({"words": [1, 1], "glyphs_per_word": [2, 2], "noise_sigma": 0.0})";
    }
    std::string corpus = (dir.path / "corpus").string();
    REQUIRE(run("synth --seed 3 --lines 1 --spec " + spec_path + " --out " + corpus) == 0);
    auto truth = vtext::load_truth(corpus + "/0000.truth.json");
    CHECK(truth.word_boxes.size() == 1);
    CHECK(truth.total_chars() == 2);
}

TEST_CASE("dump-overlays writes the stage images") {
    TempDir dir("vtext_cli_ov");
    std::string corpus = (dir.path / "corpus").string();
    REQUIRE(run("synth --seed 29 --lines 1 --out " + corpus) == 0);
    std::string ov = (dir.path / "ov").string();
    REQUIRE(run("segment " + corpus + "/0000.pgm --out " + (dir.path / "s.json").string() +
                " --dump-overlays " + ov) == 0);
    CHECK(fs::exists(fs::path(ov) / "01_gradient.png"));
    CHECK(fs::exists(fs::path(ov) / "05_characters.png"));
}
