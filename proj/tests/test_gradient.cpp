#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vtext/gradient.hpp"

using namespace vtext;

TEST_CASE("horizontal gradient on a short row") {
    GrayImage img(3, 1);
    img.pixels = {10, 60, 60};
    GradientMap g = horizontal_gradient(img);
    CHECK(g.values == std::vector<int>{50, 0, 0});
}

TEST_CASE("vertical gradient on a short column") {
    GrayImage img(1, 2);
    img.pixels = {0, 255};
    GradientMap g = vertical_gradient(img);
    CHECK(g.values == std::vector<int>{255, 0});
}

TEST_CASE("gradients of a constant image are zero") {
    GrayImage img(5, 5, 77);
    for (int v : horizontal_gradient(img).values) CHECK(v == 0);
    for (int v : vertical_gradient(img).values) CHECK(v == 0);
}

TEST_CASE("gradients need two pixels along their axis") {
    CHECK_THROWS_AS(horizontal_gradient(GrayImage(1, 5)), TooSmall);
    CHECK_THROWS_AS(vertical_gradient(GrayImage(5, 1)), TooSmall);
}

TEST_CASE("gradients match the per-pixel oracle") {
    vtest::TestRng rng(21);
    for (int i = 0; i < 50; i++) {
        GrayImage img = vtest::random_gray(rng, rng.uniform(2, 16), rng.uniform(2, 16));
        CHECK(horizontal_gradient(img).values == vtest::grad_h_oracle(img));
        CHECK(vertical_gradient(img).values == vtest::grad_v_oracle(img));
    }
}

TEST_CASE("gradients are translation equivariant away from the padding") {
    vtest::TestRng rng(22);
    for (int trial = 0; trial < 20; trial++) {
        GrayImage content = vtest::random_gray(rng, 6, 6);
        auto place = [&](int ox, int oy) {
            GrayImage canvas(14, 14, 0);
            for (int y = 0; y < 6; y++)
                for (int x = 0; x < 6; x++)
                    canvas.at(ox + x, oy + y) = content.at(x, y);
            return canvas;
        };
        GrayImage a = place(1, 1), b = place(4, 3);
        GradientMap gha = horizontal_gradient(a), ghb = horizontal_gradient(b);
        GradientMap gva = vertical_gradient(a), gvb = vertical_gradient(b);
        // compare where the 2x1/1x2 stencils stay inside the content
        for (int y = 0; y < 6; y++)
            for (int x = 0; x < 5; x++)
                CHECK(gha.at(1 + x, 1 + y) == ghb.at(4 + x, 3 + y));
        for (int y = 0; y < 5; y++)
            for (int x = 0; x < 6; x++)
                CHECK(gva.at(1 + x, 1 + y) == gvb.at(4 + x, 3 + y));
    }
}

namespace {

GradientMap map_of(int w, int h, std::vector<int> values) {
    GradientMap g(w, h);
    g.values = std::move(values);
    return g;
}

} // namespace

TEST_CASE("combine_and_normalize") {
    GradientMap zero = map_of(2, 2, {0, 0, 0, 0});
    for (int v : combine_and_normalize(zero, zero).values) CHECK(v == 0);

    GradientMap one = map_of(1, 1, {100});
    CHECK(combine_and_normalize(one, one).values == std::vector<int>{0});

    CHECK_THROWS_AS(combine_and_normalize(map_of(1, 1, {0}), zero), DimensionMismatch);
}

TEST_CASE("normalization spans [0,255] and preserves ranks") {
    vtest::TestRng rng(23);
    for (int trial = 0; trial < 30; trial++) {
        int w = rng.uniform(2, 10), h = rng.uniform(2, 10);
        GradientMap gx(w, h), gy(w, h);
        for (auto& v : gx.values) v = rng.uniform(0, 255);
        for (auto& v : gy.values) v = rng.uniform(0, 255);
        GradientMap out = combine_and_normalize(gx, gy);

        int lo = 255, hi = 0;
        for (int v : out.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        bool constant = true;
        for (std::size_t i = 0; i < out.values.size(); i++) {
            int raw0 = gx.values[0] + gy.values[0];
            if (gx.values[i] + gy.values[i] != raw0) constant = false;
        }
        if (!constant) {
            CHECK(lo == 0);
            CHECK(hi == 255);
        }
        for (std::size_t i = 0; i < out.values.size(); i++)
            for (std::size_t j = 0; j < out.values.size(); j++) {
                int ri = gx.values[i] + gy.values[i];
                int rj = gx.values[j] + gy.values[j];
                if (ri < rj) CHECK(out.values[i] <= out.values[j]);
            }
    }
}

TEST_CASE("kmeans_binarize splits the obvious bimodal set") {
    GradientMap g(5, 3);
    g.values = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 200, 200, 200, 200, 200};
    BinaryImage out = kmeans_binarize(g);
    for (std::size_t i = 0; i < g.values.size(); i++)
        CHECK(int(out.pixels[i]) == (g.values[i] == 200 ? 1 : 0));
}

TEST_CASE("kmeans_binarize of a constant map is all background") {
    GradientMap g(4, 2);
    g.values.assign(8, 42);
    CHECK(kmeans_binarize(g).foreground_count() == 0);
}

TEST_CASE("kmeans_binarize puts {0,1,2} against {100,101}") {
    GradientMap g(5, 1);
    g.values = {0, 1, 2, 100, 101};
    BinaryImage out = kmeans_binarize(g);
    CHECK(out.pixels == std::vector<std::uint8_t>{0, 0, 0, 1, 1});
}

TEST_CASE("kmeans partition is a threshold partition at the oracle minimum SSE") {
    vtest::TestRng rng(24);
    for (int trial = 0; trial < 60; trial++) {
        int n = rng.uniform(2, 60);
        GradientMap g(n, 1);
        for (auto& v : g.values) v = rng.uniform(0, 40); // duplicates likely
        BinaryImage out = kmeans_binarize(g);

        int max_bg = -1, min_fg = 256 * 3;
        bool any_fg = false, any_bg = false;
        for (std::size_t i = 0; i < g.values.size(); i++) {
            if (out.pixels[i]) {
                any_fg = true;
                min_fg = std::min(min_fg, g.values[i]);
            } else {
                any_bg = true;
                max_bg = std::max(max_bg, g.values[i]);
            }
        }
        bool constant = true;
        for (int v : g.values) constant = constant && v == g.values[0];
        if (constant) {
            CHECK_FALSE(any_fg);
            continue;
        }
        CHECK(any_fg);
        CHECK(any_bg);
        CHECK(max_bg < min_fg); // contiguous clusters

        auto impl_sse = vtest::sse_of_split(g.values, max_bg);
        auto best_sse = vtest::kmeans_sse_oracle(g.values, nullptr);
        CHECK(impl_sse == best_sse);
    }
}

TEST_CASE("otsu threshold on a perfectly bimodal histogram") {
    GrayImage img(10, 10);
    for (int i = 0; i < 100; i++) img.pixels[std::size_t(i)] = i < 50 ? 0 : 255;
    CHECK(otsu_threshold(img, Rect{0, 0, 10, 10}) == 0);
}

TEST_CASE("otsu rejects constant regions") {
    GrayImage img(4, 4, 9);
    CHECK_THROWS_AS(otsu_threshold(img, Rect{0, 0, 4, 4}), Degenerate);
}

TEST_CASE("otsu equals the exhaustive oracle") {
    vtest::TestRng rng(25);
    for (int trial = 0; trial < 60; trial++) {
        GrayImage img(8, 8);
        for (auto& p : img.pixels) p = std::uint8_t(rng.uniform(0, 15) * 17);
        bool constant = true;
        for (auto p : img.pixels) constant = constant && p == img.pixels[0];
        if (constant) continue;
        std::array<long long, 256> hist{};
        for (auto p : img.pixels) hist[p]++;
        CHECK(otsu_threshold(img, Rect{0, 0, 8, 8}) == vtest::otsu_oracle(hist));
    }
}

namespace {

GrayImage glyph_on_ground(std::uint8_t glyph, std::uint8_t ground) {
    // 20% coverage: a 20-pixel blob in a 10x10 region
    GrayImage img(10, 10, ground);
    for (int y = 2; y < 6; y++)
        for (int x = 2; x < 7; x++)
            img.at(x, y) = glyph;
    return img;
}

} // namespace

TEST_CASE("binarize_word marks the minority class as text in both polarities") {
    for (auto [glyph, ground] : {std::pair<int, int>{30, 220}, {220, 30}}) {
        GrayImage img = glyph_on_ground(std::uint8_t(glyph), std::uint8_t(ground));
        BinaryImage out = binarize_word(img, Rect{0, 0, 10, 10});
        CHECK(out.foreground_count() == 20);
        CHECK(out.at(3, 3) == 1);
        CHECK(out.at(0, 0) == 0);
    }
}

TEST_CASE("binarize_word breaks a 50/50 split toward the higher-gradient class") {
    // left half 30, right half 220: the boundary column's gradient belongs
    // to the darker class, so the dark half is foreground
    GrayImage img(10, 10);
    for (int y = 0; y < 10; y++)
        for (int x = 0; x < 10; x++)
            img.at(x, y) = x < 5 ? 30 : 220;
    BinaryImage out = binarize_word(img, Rect{0, 0, 10, 10});
    CHECK(out.at(0, 0) == 1);
    CHECK(out.at(9, 9) == 0);
    CHECK(out.foreground_count() == 50);
}

TEST_CASE("binarize_word of a constant region is all background") {
    GrayImage img(6, 6, 128);
    CHECK(binarize_word(img, Rect{0, 0, 6, 6}).foreground_count() == 0);
}

TEST_CASE("binarize_word is polarity invariant when the otsu split is unique") {
    vtest::TestRng rng(26);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 60; trial++) {
        GrayImage img(7, 7);
        for (auto& p : img.pixels) p = std::uint8_t(rng.uniform(0, 7) * 36);
        GrayImage inv(7, 7);
        for (std::size_t i = 0; i < img.pixels.size(); i++)
            inv.pixels[i] = std::uint8_t(255 - img.pixels[i]);

        std::array<long long, 256> hist{}, hist_inv{};
        for (auto p : img.pixels) hist[p]++;
        for (auto p : inv.pixels) hist_inv[p]++;
        bool constant = true;
        for (auto p : img.pixels) constant = constant && p == img.pixels[0];
        if (constant || !vtest::otsu_unique(hist) || !vtest::otsu_unique(hist_inv))
            continue;
        // skip exact 50/50 splits; the gradient tie-break is tested separately
        int t = otsu_threshold(img, Rect{0, 0, 7, 7});
        int low = 0;
        for (auto p : img.pixels)
            if (p <= t) low++;
        if (2 * low == int(img.pixels.size())) continue;

        tested++;
        CHECK(binarize_word(img, Rect{0, 0, 7, 7}) ==
              binarize_word(inv, Rect{0, 0, 7, 7}));
    }
    CHECK(tested >= 30);
}
