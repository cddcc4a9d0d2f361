#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "lulc/error.hpp"
#include "lulc/glcm.hpp"
#include "lulc/rng.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

using namespace lulc;

namespace {

// Random normalized co-occurrence matrix; optionally symmetric like the ones
// the pipeline produces.
std::vector<double> random_glcm(int levels, Rng& rng, bool symmetric) {
    std::vector<double> p(static_cast<std::size_t>(levels) * levels);
    for (double& v : p) v = rng.uniform() + 1e-6;
    if (symmetric)
        for (int i = 0; i < levels; ++i)
            for (int j = 0; j < i; ++j) {
                const double m = p[i * levels + j] + p[j * levels + i];
                p[i * levels + j] = p[j * levels + i] = m / 2.0;
            }
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= sum;
    return p;
}

} // namespace

TEST_CASE("two-level checker co-occurrence matches hand arithmetic") {
    // 2x2 image [0 0; 1 1], single horizontal offset, symmetric + normalized:
    // pairs (0,0) and (1,1) once each, doubled on the diagonal, sum 4.
    Image img = make_image(2, 2, 1, {0.0, 1.0});
    img.data = {0.0, 0.0, 1.0, 1.0};
    GlcmSpec spec;
    spec.levels = 2;
    spec.offsets = {{0, 1}};
    const auto p = glcm(img, spec);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == 0.0);
    CHECK(p[2] == 0.0);
    CHECK(p[3] == doctest::Approx(0.5));

    const HaralickFeatures f = haralick_features(p, 2);
    CHECK(f.energy == doctest::Approx(0.5));
    CHECK(f.angular_second_moment == f.energy);
    CHECK(f.entropy == doctest::Approx(1.0));
    CHECK(f.contrast == doctest::Approx(0.0));
    CHECK(f.inverse_difference_moment == doctest::Approx(1.0));
    CHECK(f.homogeneity == f.inverse_difference_moment);
    CHECK(f.correlation == doctest::Approx(1.0));
}

TEST_CASE("asymmetric accumulation keeps the raw pair direction") {
    // [0 1] with offset (0,1) and symmetric off: single pair (0,1).
    Image img = make_image(2, 1, 1, {0.0, 1.0});
    img.data = {0.0, 1.0};
    GlcmSpec spec;
    spec.levels = 2;
    spec.offsets = {{0, 1}};
    spec.symmetric = false;
    const auto p = glcm(img, spec);
    CHECK(p[0 * 2 + 1] == doctest::Approx(1.0));
    CHECK(p[1 * 2 + 0] == 0.0);
}

TEST_CASE("quantization bins the declared range uniformly and clamps the top") {
    // Range [0, 100), 4 levels: bin width 25; the maximum lands in the last bin.
    Image img = make_image(4, 1, 1, {0.0, 100.0});
    img.data = {0.0, 24.9, 25.0, 100.0};
    GlcmSpec spec;
    spec.levels = 4;
    spec.offsets = {{0, 1}};
    spec.symmetric = false;
    spec.normalized = false;
    const auto p = glcm(img, spec);
    // pairs: (bin0,bin0), (bin0,bin1), (bin1,bin3)
    CHECK(p[0 * 4 + 0] == 1.0);
    CHECK(p[0 * 4 + 1] == 1.0);
    CHECK(p[1 * 4 + 3] == 1.0);
}

TEST_CASE("offsets with no in-bounds pairs are an error") {
    Image img = make_image(3, 1, 1);
    img.data = {1.0, 2.0, 3.0};
    GlcmSpec spec;
    spec.offsets = {{1, 0}}; // needs two rows
    CHECK_THROWS_AS(glcm(img, spec), Error);
}

TEST_CASE("multichannel images are rejected by the co-occurrence builder") {
    Image img = make_image(4, 4, 3);
    GlcmSpec spec;
    CHECK_THROWS_AS(glcm(img, spec), Error);
}

TEST_CASE("texture statistics require a normalized matrix") {
    std::vector<double> p = {0.5, 0.2, 0.1, 0.1}; // sums to 0.9
    CHECK_THROWS_AS(haralick_features(p, 2), Error);
    CHECK_THROWS_AS(haralick_features({1.0}, 2), Error); // size mismatch
}

TEST_CASE("a one-hot matrix has degenerate statistics") {
    std::vector<double> p(16, 0.0);
    p[5] = 1.0; // level pair (1,1)
    const HaralickFeatures f = haralick_features(p, 4);
    CHECK(f.energy == 1.0);
    CHECK(f.entropy == 0.0);
    CHECK(f.correlation == 0.0); // zero variance is defined to 0
    CHECK(f.contrast == 0.0);
    CHECK(f.homogeneity == 1.0);
}

TEST_CASE("statistics match the brute-force recount on random matrices") {
    Rng rng(2024);
    for (int levels : {2, 4, 8, 16}) {
        for (int rep = 0; rep < 25; ++rep) {
            const bool symmetric = rep % 2 == 0;
            const auto p = random_glcm(levels, rng, symmetric);
            const auto got = haralick_features(p, levels).to_array();
            const auto want = oracle::haralick(p, levels);
            for (std::size_t k = 0; k < 7; ++k) {
                const double denom = std::max(1.0, std::abs(want[k]));
                CHECK(std::abs(got[k] - want[k]) / denom < 1e-12);
            }
        }
    }
}

TEST_CASE("pipeline matrices always sum to one and feed the statistics") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        Image img = testsup::random_byte_image(12, 9, 1, rng);
        GlcmSpec spec;
        const auto p = glcm(img, spec);
        const double sum = std::accumulate(p.begin(), p.end(), 0.0);
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK_NOTHROW(haralick_features(p, spec.levels));
        // Symmetric accumulation makes the matrix symmetric.
        for (int i = 0; i < spec.levels; ++i)
            for (int j = 0; j < i; ++j)
                CHECK(p[i * spec.levels + j] == doctest::Approx(p[j * spec.levels + i]));
    }
}
