#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lulc/error.hpp"
#include "lulc/preprocess.hpp"
#include "lulc/rng.hpp"

#include "test_support.hpp"

using namespace lulc;

TEST_CASE("min-max maps the observed extremes onto the new interval") {
    Image img = make_image(2, 2, 1);
    img.data = {10.0, 20.0, 30.0, 40.0};
    NormalizationSpec spec;
    spec.new_min = 0.0;
    spec.new_max = 1.0;
    Image out = normalize_min_max(img, spec);
    CHECK(out.data[0] == doctest::Approx(0.0));
    CHECK(out.data[1] == doctest::Approx(1.0 / 3.0));
    CHECK(out.data[3] == doctest::Approx(1.0));
    CHECK(out.value_range.first == 0.0);
    CHECK(out.value_range.second == 1.0);
}

TEST_CASE("min-max rescales each channel independently") {
    Image img = make_image(2, 1, 2);
    // channel 0: {0, 100}; channel 1: {50, 60}
    img.at(0, 0, 0) = 0.0;
    img.at(0, 1, 0) = 100.0;
    img.at(0, 0, 1) = 50.0;
    img.at(0, 1, 1) = 60.0;
    NormalizationSpec spec;
    Image out = normalize_min_max(img, spec);
    CHECK(out.at(0, 1, 0) == doctest::Approx(1.0));
    CHECK(out.at(0, 0, 1) == doctest::Approx(0.0));
    CHECK(out.at(0, 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("a constant channel collapses to the new minimum") {
    Image img = make_image(3, 1, 1);
    img.data = {42.0, 42.0, 42.0};
    NormalizationSpec spec;
    spec.new_min = -1.0;
    spec.new_max = 1.0;
    Image out = normalize_min_max(img, spec);
    for (double v : out.data) CHECK(v == -1.0);
}

TEST_CASE("sigmoid normalization puts the center intensity at the midpoint") {
    Image img = make_image(3, 1, 1);
    img.data = {100.0, 128.0, 200.0};
    NormalizationSpec spec;
    spec.kind = NormalizationKind::sigmoid;
    spec.new_min = 0.0;
    spec.new_max = 1.0;
    spec.alpha = 10.0;
    spec.beta = 128.0;
    Image out = normalize_sigmoid(img, spec);
    CHECK(out.data[1] == doctest::Approx(0.5));
    CHECK(out.data[0] == doctest::Approx(1.0 / (1.0 + std::exp(2.8))));
    CHECK(out.data[2] < 1.0);
    CHECK(out.data[0] > 0.0);
}

TEST_CASE("byte quantization rounds the declared range onto 0..255") {
    Image img = make_image(3, 1, 1, {0.0, 1.0});
    img.data = {0.0, 0.5, 1.0};
    Image out = quantize_to_byte(img);
    CHECK(out.data[0] == 0.0);
    CHECK(out.data[1] == 128.0); // round(127.5) away from zero
    CHECK(out.data[2] == 255.0);
    CHECK(out.value_range.first == 0.0);
    CHECK(out.value_range.second == 255.0);
}

TEST_CASE("histogram equalization matches the hand-computed remap") {
    Image img = make_image(2, 2, 1);
    img.data = {0.0, 0.0, 1.0, 2.0};
    Image out = equalize_histogram(img);
    CHECK(out.data[0] == 0.0);
    CHECK(out.data[1] == 0.0);
    CHECK(out.data[2] == 128.0);
    CHECK(out.data[3] == 255.0);
}

TEST_CASE("equalization spreads a flat ramp across the full range") {
    Image img = make_image(16, 1, 1);
    for (int x = 0; x < 16; ++x) img.at(0, x, 0) = 100.0 + x; // 16 distinct values
    Image out = equalize_histogram(img);
    CHECK(out.at(0, 0, 0) == 0.0);
    CHECK(out.at(0, 15, 0) == 255.0);
    for (int x = 1; x < 16; ++x) CHECK(out.at(0, x, 0) > out.at(0, x - 1, 0));
}

TEST_CASE("equalization rejects non-byte inputs and keeps constants") {
    Image bad = make_image(2, 1, 1, {0.0, 1.0});
    bad.data = {0.25, 0.75};
    CHECK_THROWS_AS(equalize_histogram(bad), Error);

    Image flat = make_image(2, 2, 1);
    flat.data = {9.0, 9.0, 9.0, 9.0};
    Image out = equalize_histogram(flat);
    for (double v : out.data) CHECK(v == 9.0);
}

TEST_CASE("full preprocessing chain emits byte images when equalizing") {
    Rng rng(6);
    Image img = testsup::random_byte_image(8, 8, 3, rng);
    NormalizationSpec spec;
    Image out = preprocess_image(img, spec, true);
    CHECK(out.value_range.second == 255.0);
    for (double v : out.data) {
        CHECK(v == std::floor(v));
        CHECK(v >= 0.0);
        CHECK(v <= 255.0);
    }
    Image plain = preprocess_image(img, spec, false);
    CHECK(plain.value_range.second == 1.0);
}
