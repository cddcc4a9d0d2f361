#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lulc/error.hpp"
#include "lulc/lstm.hpp"
#include "lulc/rng.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

using namespace lulc;

namespace {

// Labels decided by the sign of the first feature; easy to fit.
FeatureMatrix signed_data(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    FeatureMatrix fm;
    fm.rows = rows;
    fm.cols = cols;
    fm.values.resize(rows * cols);
    Rng rng(seed);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) fm.at(r, c) = rng.uniform(-1.0, 1.0);
        fm.row_labels.push_back(fm.at(r, 0) >= 0.0 ? 1 : 0);
    }
    for (std::size_t c = 0; c < cols; ++c) fm.column_tags.push_back("f" + std::to_string(c));
    return fm;
}

std::vector<double> random_sequence(int input_dim, int timesteps, Rng& rng) {
    std::vector<double> seq(static_cast<std::size_t>(input_dim) * timesteps);
    for (double& v : seq) v = rng.uniform(-2.0, 2.0);
    return seq;
}

} // namespace

TEST_CASE("sequence reshaping pads the tail chunk with zeros") {
    const double row[5] = {1, 2, 3, 4, 5};
    const auto seq = reshape_sequence(row, 5, 3); // F = ceil(5/3) = 2
    REQUIRE(seq.size() == 6);
    CHECK(seq == std::vector<double>{1, 2, 3, 4, 5, 0});
    const auto exact = reshape_sequence(row, 4, 2);
    CHECK(exact == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("initialization seeds weights inside the scaled interval") {
    LstmModel m = init_model(6, 9, 3, 4, 2024);
    // Standardization statistics are captured at training time; fill them so
    // the structural validation can run on a freshly initialized model.
    m.feature_mean.assign(18, 0.0);
    m.feature_std.assign(18, 1.0);
    m.validate();
    const double bound = 1.0 / 3.0; // 1/sqrt(9)
    const std::vector<std::vector<double> LstmParams::*> weights = {
        &LstmParams::w_ia, &LstmParams::w_ih, &LstmParams::w_fa,
        &LstmParams::w_fh, &LstmParams::w_ca, &LstmParams::w_ch,
        &LstmParams::w_oa, &LstmParams::w_oh, &LstmParams::w_y};
    for (auto field : weights) {
        const std::vector<double>& theta = m.params.*field;
        REQUIRE(!theta.empty());
        for (double v : theta) {
            CHECK(v >= -bound - 1e-12);
            CHECK(v <= bound + 1e-12);
        }
    }
    for (double v : m.params.b_f) CHECK(v == 1.0); // forget gate starts open
    for (double v : m.params.b_i) CHECK(v == 0.0);
    for (double v : m.params.b_c) CHECK(v == 0.0);
    for (double v : m.params.b_o) CHECK(v == 0.0);
    for (double v : m.params.b_y) CHECK(v == 0.0);

    LstmModel again = init_model(6, 9, 3, 4, 2024);
    for (auto field : lstm_param_fields()) CHECK(again.params.*field == m.params.*field);
    LstmModel other = init_model(6, 9, 3, 4, 2025);
    CHECK(other.params.w_ia != m.params.w_ia);
}

TEST_CASE("the fourteen parameter tensors appear in a fixed order") {
    const auto fields = lstm_param_fields();
    REQUIRE(fields.size() == 14);
    LstmParams p;
    p.w_ia = {1.0};
    p.b_y = {2.0};
    CHECK(&(p.*fields.front()) == &p.w_ia);
    CHECK(&(p.*fields.back()) == &p.b_y);
}

TEST_CASE("equal logits cost log of the class count") {
    CHECK(cross_entropy({0.0, 0.0, 0.0}, 1) == doctest::Approx(std::log(3.0)));
    CHECK(cross_entropy({1000.0, 0.0}, 0) == doctest::Approx(0.0));
    CHECK(cross_entropy({1000.0, 0.0}, 1) == doctest::Approx(1000.0));
}

TEST_CASE("forward produces finite state and logits of the right arity") {
    LstmModel m = init_model(3, 5, 4, 3, 11);
    Rng rng(12);
    const auto seq = random_sequence(3, 4, rng);
    const auto [h, logits] = forward(seq, m);
    REQUIRE(h.size() == 5);
    REQUIRE(logits.size() == 3);
    for (double v : h) {
        CHECK(std::isfinite(v));
        CHECK(std::abs(v) <= 1.0); // h = o * tanh(c) is bounded
    }
}

TEST_CASE("backpropagation matches central finite differences") {
    Rng rng(55);
    for (int rep = 0; rep < 10; ++rep) {
        LstmModel m = init_model(3, 4, 3, 3, 1000 + rep);
        const auto seq = random_sequence(3, 3, rng);
        const auto label = static_cast<std::uint32_t>(rng.uniform_int(3));
        const auto [loss, analytic] = backward(seq, label, m);
        CHECK(loss == doctest::Approx(cross_entropy(forward(seq, m).second, label)));
        const LstmParams numeric = oracle::finite_diff_grads(m, seq, label, 1e-5);
        CHECK(oracle::max_grad_error(analytic, numeric) < 1e-4);
    }
}

TEST_CASE("training drives the loss down and fits separable data") {
    FeatureMatrix data = signed_data(60, 6, 77);
    TrainConfig cfg;
    cfg.epochs = 40;
    cfg.batch_size = 8;
    cfg.learning_rate = 5e-3;
    cfg.seed = 9;
    TrainResult res = train_lstm(data, cfg, 2, 8);
    REQUIRE(res.epoch_loss.size() == 40);
    CHECK(res.epoch_loss.back() < res.epoch_loss.front());

    const auto pred = predict(res.model, data);
    std::size_t correct = 0;
    for (std::size_t r = 0; r < data.rows; ++r)
        if (pred[r] == data.row_labels[r]) ++correct;
    CHECK(static_cast<double>(correct) / data.rows >= 0.9);
}

TEST_CASE("both optimizers run deterministically") {
    FeatureMatrix data = signed_data(30, 4, 3);
    for (Optimizer opt : {Optimizer::sgd_momentum, Optimizer::adaptive_moment}) {
        TrainConfig cfg;
        cfg.epochs = 5;
        cfg.seed = 41;
        cfg.optimizer = opt;
        TrainResult a = train_lstm(data, cfg, 2, 6);
        TrainResult b = train_lstm(data, cfg, 2, 6);
        CHECK(a.epoch_loss == b.epoch_loss);
        for (auto field : lstm_param_fields())
            CHECK(a.model.params.*field == b.model.params.*field);
    }
    CHECK(optimizer_from_string("sgd_momentum") == Optimizer::sgd_momentum);
    CHECK(optimizer_from_string("adam") == Optimizer::adaptive_moment);
    CHECK_THROWS_AS(optimizer_from_string("sgd"), Error);
}

TEST_CASE("zero epochs return the standardized initial model") {
    FeatureMatrix data = signed_data(20, 5, 13);
    TrainConfig cfg;
    cfg.epochs = 0;
    cfg.seed = 99;
    TrainResult res = train_lstm(data, cfg, 2, 4);
    CHECK(res.epoch_loss.empty());
    // Standardization statistics cover every input column.
    REQUIRE(res.model.feature_mean.size() == 5);
    REQUIRE(res.model.feature_std.size() == 5);
    for (double s : res.model.feature_std) CHECK(s > 0.0);
    res.model.validate();
}

TEST_CASE("prediction breaks logit ties toward the lower class index") {
    // Zero weights, zero biases: every logit is b_y, so all classes tie.
    LstmModel m = init_model(2, 3, 2, 4, 1);
    for (auto field : lstm_param_fields()) {
        auto& theta = m.params.*field;
        std::fill(theta.begin(), theta.end(), 0.0);
    }
    m.feature_mean.assign(4, 0.0);
    m.feature_std.assign(4, 1.0);
    FeatureMatrix data = signed_data(6, 4, 2);
    const auto pred = predict(m, data);
    for (auto p : pred) CHECK(p == 0);
}

TEST_CASE("model files round-trip every tensor bit-exactly") {
    testsup::TempDir tmp("model");
    FeatureMatrix data = signed_data(24, 5, 8);
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.seed = 4;
    TrainResult res = train_lstm(data, cfg, 2, 6);
    const auto path = tmp.path / "model.lulcm";
    save_model(path, res.model);
    LstmModel back = load_model(path);
    CHECK(back.input_dim == res.model.input_dim);
    CHECK(back.hidden_dim == res.model.hidden_dim);
    CHECK(back.timesteps == res.model.timesteps);
    CHECK(back.classes == res.model.classes);
    for (auto field : lstm_param_fields()) CHECK(back.params.*field == res.model.params.*field);
    CHECK(back.feature_mean == res.model.feature_mean);
    CHECK(back.feature_std == res.model.feature_std);

    CHECK(predict(back, data) == predict(res.model, data));

    std::filesystem::resize_file(path, std::filesystem::file_size(path) - 1);
    CHECK_THROWS_AS(load_model(path), Error);
}

TEST_CASE("training rejects invalid configurations") {
    FeatureMatrix data = signed_data(10, 3, 1);
    TrainConfig cfg;
    cfg.epochs = -1;
    CHECK_THROWS_AS(train_lstm(data, cfg, 2, 4), Error);
    cfg.epochs = 1;
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(train_lstm(data, cfg, 2, 4), Error);
    cfg.learning_rate = 1e-3;
    cfg.batch_size = 0;
    CHECK_THROWS_AS(train_lstm(data, cfg, 2, 4), Error);
}
