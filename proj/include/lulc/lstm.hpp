#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lulc/feature_matrix.hpp"

namespace lulc {

enum class Optimizer { sgd_momentum, adaptive_moment };

Optimizer optimizer_from_string(const std::string& s);
std::string to_string(Optimizer opt);

struct TrainConfig {
    int epochs = 30;
    int batch_size = 16;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    double gradient_clip = 5.0; // max global L2 norm
    Optimizer optimizer = Optimizer::adaptive_moment;

    void validate() const;
};

/// Gate parameter tensors. *a weights are hidden x input, *h weights are
/// hidden x hidden, all row-major; the head w_y is classes x hidden.
struct LstmParams {
    std::vector<double> w_ia, w_ih, b_i;
    std::vector<double> w_fa, w_fh, b_f;
    std::vector<double> w_ca, w_ch, b_c;
    std::vector<double> w_oa, w_oh, b_o;
    std::vector<double> w_y, b_y;
};

/// The 14 parameter tensors in their fixed serialization order.
std::vector<std::vector<double> LstmParams::*> lstm_param_fields();

struct LstmModel {
    int input_dim = 0; // per-step features
    int hidden_dim = 0;
    int timesteps = 0;
    int classes = 0;
    LstmParams params;
    // Column standardization of the flat feature vector, captured at training
    // time; sized to the original feature dimension.
    std::vector<double> feature_mean;
    std::vector<double> feature_std;

    void validate() const;
};

/// Weights uniform in [-1/sqrt(H), 1/sqrt(H)], biases zero except the forget
/// bias at +1.
LstmModel init_model(int input_dim, int hidden_dim, int timesteps, int classes,
                     std::uint64_t seed);

/// Splits a flat feature row into timesteps chunks of ceil(D / timesteps)
/// values, zero-padding the tail; returned row-major timesteps x F.
std::vector<double> reshape_sequence(const double* row, std::size_t dim, int timesteps);

/// One recurrence step; returns (h, c).
std::pair<std::vector<double>, std::vector<double>> lstm_cell(const std::vector<double>& a,
                                                              const std::vector<double>& h_prev,
                                                              const std::vector<double>& c_prev,
                                                              const LstmModel& model);

/// Unrolls from zero state over the sequence; returns (h_last, logits).
std::pair<std::vector<double>, std::vector<double>> forward(const std::vector<double>& seq,
                                                            const LstmModel& model);

/// Softmax cross-entropy with max subtraction.
double cross_entropy(const std::vector<double>& logits, std::uint32_t label);

/// Loss and exact gradients for one sequence via backpropagation through time.
std::pair<double, LstmParams> backward(const std::vector<double>& seq, std::uint32_t label,
                                       const LstmModel& model);

struct TrainResult {
    LstmModel model;
    std::vector<double> epoch_loss;
};

/// Mini-batch training on standardized features (statistics stored in the
/// model). Shuffling, batching, and gradient reduction are deterministic in
/// cfg.seed and independent of worker count. NaN loss aborts.
TrainResult train_lstm(const FeatureMatrix& train, const TrainConfig& cfg, int timesteps,
                       int hidden_dim);

/// Argmax class per row, ties to the lowest index.
std::vector<std::uint32_t> predict(const LstmModel& model, const FeatureMatrix& features);

/// Binary model file, magic "LULCM1\0": u32 dims (input, hidden, timesteps,
/// classes), the parameter tensors in fixed order as little-endian f64, then
/// the standardization vectors prefixed by their length.
void save_model(const std::filesystem::path& path, const LstmModel& model);
LstmModel load_model(const std::filesystem::path& path);

void save_loss_csv(const std::filesystem::path& path, const std::vector<double>& epoch_loss);

} // namespace lulc
