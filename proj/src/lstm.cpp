#include "lulc/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "lulc/error.hpp"
#include "lulc/io_bytes.hpp"
#include "lulc/parallel.hpp"
#include "lulc/rng.hpp"

namespace lulc {

namespace {

constexpr std::uint64_t kStreamLstmInit = 0x600000000ull;
constexpr std::uint64_t kStreamShuffle = 0x700000000ull; // step = epoch

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace

Optimizer optimizer_from_string(const std::string& s) {
    if (s == "sgd_momentum") return Optimizer::sgd_momentum;
    if (s == "adaptive_moment" || s == "adam") return Optimizer::adaptive_moment;
    throw Error("unknown optimizer: " + s);
}

std::string to_string(Optimizer opt) {
    return opt == Optimizer::sgd_momentum ? "sgd_momentum" : "adaptive_moment";
}

void TrainConfig::validate() const {
    if (epochs < 0) throw Error("epochs must be >= 0");
    if (batch_size < 1) throw Error("batch_size must be >= 1");
    if (!(learning_rate > 0.0)) throw Error("learning_rate must be positive");
    if (!(gradient_clip > 0.0)) throw Error("gradient_clip must be positive");
}

std::vector<std::vector<double> LstmParams::*> lstm_param_fields() {
    return {&LstmParams::w_ia, &LstmParams::w_ih, &LstmParams::b_i, &LstmParams::w_fa,
            &LstmParams::w_fh, &LstmParams::b_f, &LstmParams::w_ca, &LstmParams::w_ch,
            &LstmParams::b_c, &LstmParams::w_oa, &LstmParams::w_oh, &LstmParams::b_o,
            &LstmParams::w_y, &LstmParams::b_y};
}

namespace {

LstmParams make_params(int input_dim, int hidden_dim, int classes) {
    LstmParams p;
    const std::size_t hf = static_cast<std::size_t>(hidden_dim) * input_dim;
    const std::size_t hh = static_cast<std::size_t>(hidden_dim) * hidden_dim;
    const std::size_t h = static_cast<std::size_t>(hidden_dim);
    p.w_ia.assign(hf, 0.0);
    p.w_ih.assign(hh, 0.0);
    p.b_i.assign(h, 0.0);
    p.w_fa.assign(hf, 0.0);
    p.w_fh.assign(hh, 0.0);
    p.b_f.assign(h, 0.0);
    p.w_ca.assign(hf, 0.0);
    p.w_ch.assign(hh, 0.0);
    p.b_c.assign(h, 0.0);
    p.w_oa.assign(hf, 0.0);
    p.w_oh.assign(hh, 0.0);
    p.b_o.assign(h, 0.0);
    p.w_y.assign(static_cast<std::size_t>(classes) * hidden_dim, 0.0);
    p.b_y.assign(static_cast<std::size_t>(classes), 0.0);
    return p;
}

} // namespace

void LstmModel::validate() const {
    if (input_dim < 1 || hidden_dim < 1 || timesteps < 1 || classes < 2)
        throw Error("model dimensions must satisfy F,H,T >= 1 and classes >= 2");
    const LstmParams expect = make_params(input_dim, hidden_dim, classes);
    auto fields = lstm_param_fields();
    for (auto f : fields) {
        if ((params.*f).size() != (expect.*f).size())
            throw Error("model parameter tensor has inconsistent shape");
        for (double v : params.*f)
            if (!std::isfinite(v)) throw Error("model parameter is not finite");
    }
    if (feature_mean.size() != feature_std.size())
        throw Error("standardization vectors have different lengths");
    const std::size_t expected_dim =
        static_cast<std::size_t>(input_dim) * timesteps; // D <= F*T, padded
    if (feature_mean.empty() || feature_mean.size() > expected_dim)
        throw Error("standardization length does not fit F x T");
}

LstmModel init_model(int input_dim, int hidden_dim, int timesteps, int classes,
                     std::uint64_t seed) {
    if (input_dim < 1 || hidden_dim < 1 || timesteps < 1 || classes < 2)
        throw Error("model dimensions must satisfy F,H,T >= 1 and classes >= 2");
    LstmModel m;
    m.input_dim = input_dim;
    m.hidden_dim = hidden_dim;
    m.timesteps = timesteps;
    m.classes = classes;
    m.params = make_params(input_dim, hidden_dim, classes);
    const double bound = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
    Rng rng(mix_seed(seed, kStreamLstmInit, 0));
    auto fill = [&](std::vector<double>& w) {
        for (double& v : w) v = rng.uniform(-bound, bound);
    };
    fill(m.params.w_ia);
    fill(m.params.w_ih);
    fill(m.params.w_fa);
    fill(m.params.w_fh);
    fill(m.params.w_ca);
    fill(m.params.w_ch);
    fill(m.params.w_oa);
    fill(m.params.w_oh);
    fill(m.params.w_y);
    std::fill(m.params.b_f.begin(), m.params.b_f.end(), 1.0);
    return m;
}

std::vector<double> reshape_sequence(const double* row, std::size_t dim, int timesteps) {
    if (timesteps < 1) throw Error("timesteps must be >= 1");
    if (dim == 0) throw Error("cannot reshape an empty feature row");
    const std::size_t per_step =
        (dim + static_cast<std::size_t>(timesteps) - 1) / static_cast<std::size_t>(timesteps);
    std::vector<double> seq(per_step * static_cast<std::size_t>(timesteps), 0.0);
    std::copy(row, row + dim, seq.begin());
    return seq;
}

namespace {

// Everything the backward pass needs from one unrolled forward run.
struct ForwardTrace {
    std::vector<double> i, f, g, o, c, tanh_c, h; // (T+1) x H, index 0 is the zero state
    std::vector<double> h_last;
    std::vector<double> logits;
};

void gate_preactivations(const LstmModel& m, const double* a, const double* h_prev,
                         const std::vector<double>& wa, const std::vector<double>& wh,
                         const std::vector<double>& b, double* out) {
    const int hd = m.hidden_dim, fd = m.input_dim;
    for (int r = 0; r < hd; ++r) {
        double acc = b[static_cast<std::size_t>(r)];
        const double* wa_row = wa.data() + static_cast<std::size_t>(r) * fd;
        for (int k = 0; k < fd; ++k) acc += wa_row[k] * a[k];
        const double* wh_row = wh.data() + static_cast<std::size_t>(r) * hd;
        for (int k = 0; k < hd; ++k) acc += wh_row[k] * h_prev[k];
        out[r] = acc;
    }
}

ForwardTrace run_forward(const std::vector<double>& seq, const LstmModel& m) {
    const int hd = m.hidden_dim, fd = m.input_dim, ts = m.timesteps;
    if (seq.size() != static_cast<std::size_t>(fd) * ts)
        throw Error("sequence length does not match F x T");
    ForwardTrace tr;
    const std::size_t span = static_cast<std::size_t>(ts + 1) * hd;
    tr.i.assign(span, 0.0);
    tr.f.assign(span, 0.0);
    tr.g.assign(span, 0.0);
    tr.o.assign(span, 0.0);
    tr.c.assign(span, 0.0);
    tr.tanh_c.assign(span, 0.0);
    tr.h.assign(span, 0.0);
    std::vector<double> pre(static_cast<std::size_t>(hd));
    for (int t = 1; t <= ts; ++t) {
        const double* a = seq.data() + static_cast<std::size_t>(t - 1) * fd;
        const std::size_t cur = static_cast<std::size_t>(t) * hd;
        const std::size_t prev = static_cast<std::size_t>(t - 1) * hd;
        const double* h_prev = tr.h.data() + prev;
        gate_preactivations(m, a, h_prev, m.params.w_ia, m.params.w_ih, m.params.b_i, pre.data());
        for (int r = 0; r < hd; ++r) tr.i[cur + r] = sigmoid(pre[static_cast<std::size_t>(r)]);
        gate_preactivations(m, a, h_prev, m.params.w_fa, m.params.w_fh, m.params.b_f, pre.data());
        for (int r = 0; r < hd; ++r) tr.f[cur + r] = sigmoid(pre[static_cast<std::size_t>(r)]);
        gate_preactivations(m, a, h_prev, m.params.w_ca, m.params.w_ch, m.params.b_c, pre.data());
        for (int r = 0; r < hd; ++r) tr.g[cur + r] = std::tanh(pre[static_cast<std::size_t>(r)]);
        gate_preactivations(m, a, h_prev, m.params.w_oa, m.params.w_oh, m.params.b_o, pre.data());
        for (int r = 0; r < hd; ++r) tr.o[cur + r] = sigmoid(pre[static_cast<std::size_t>(r)]);
        for (int r = 0; r < hd; ++r) {
            tr.c[cur + r] = tr.f[cur + r] * tr.c[prev + r] + tr.i[cur + r] * tr.g[cur + r];
            tr.tanh_c[cur + r] = std::tanh(tr.c[cur + r]);
            tr.h[cur + r] = tr.o[cur + r] * tr.tanh_c[cur + r];
        }
    }
    tr.h_last.assign(tr.h.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(ts) * hd),
                     tr.h.begin() + static_cast<std::ptrdiff_t>(span));
    tr.logits.resize(static_cast<std::size_t>(m.classes));
    for (int cls = 0; cls < m.classes; ++cls) {
        double acc = m.params.b_y[static_cast<std::size_t>(cls)];
        const double* wy = m.params.w_y.data() + static_cast<std::size_t>(cls) * hd;
        for (int r = 0; r < hd; ++r) acc += wy[r] * tr.h_last[static_cast<std::size_t>(r)];
        tr.logits[static_cast<std::size_t>(cls)] = acc;
    }
    return tr;
}

std::vector<double> softmax_of(const std::vector<double>& logits) {
    double mx = logits[0];
    for (double v : logits) mx = std::max(mx, v);
    std::vector<double> p(logits.size());
    double total = 0.0;
    for (std::size_t k = 0; k < logits.size(); ++k) {
        p[k] = std::exp(logits[k] - mx);
        total += p[k];
    }
    for (double& v : p) v /= total;
    return p;
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> lstm_cell(const std::vector<double>& a,
                                                              const std::vector<double>& h_prev,
                                                              const std::vector<double>& c_prev,
                                                              const LstmModel& model) {
    const int hd = model.hidden_dim;
    if (a.size() != static_cast<std::size_t>(model.input_dim) ||
        h_prev.size() != static_cast<std::size_t>(hd) || c_prev.size() != static_cast<std::size_t>(hd))
        throw Error("cell input shapes do not match the model");
    std::vector<double> pre(static_cast<std::size_t>(hd));
    std::vector<double> i(static_cast<std::size_t>(hd)), f(i), g(i), o(i);
    gate_preactivations(model, a.data(), h_prev.data(), model.params.w_ia, model.params.w_ih,
                        model.params.b_i, pre.data());
    for (int r = 0; r < hd; ++r) i[static_cast<std::size_t>(r)] = sigmoid(pre[static_cast<std::size_t>(r)]);
    gate_preactivations(model, a.data(), h_prev.data(), model.params.w_fa, model.params.w_fh,
                        model.params.b_f, pre.data());
    for (int r = 0; r < hd; ++r) f[static_cast<std::size_t>(r)] = sigmoid(pre[static_cast<std::size_t>(r)]);
    gate_preactivations(model, a.data(), h_prev.data(), model.params.w_ca, model.params.w_ch,
                        model.params.b_c, pre.data());
    for (int r = 0; r < hd; ++r) g[static_cast<std::size_t>(r)] = std::tanh(pre[static_cast<std::size_t>(r)]);
    gate_preactivations(model, a.data(), h_prev.data(), model.params.w_oa, model.params.w_oh,
                        model.params.b_o, pre.data());
    for (int r = 0; r < hd; ++r) o[static_cast<std::size_t>(r)] = sigmoid(pre[static_cast<std::size_t>(r)]);
    std::vector<double> c(static_cast<std::size_t>(hd)), h(static_cast<std::size_t>(hd));
    for (int r = 0; r < hd; ++r) {
        const std::size_t k = static_cast<std::size_t>(r);
        c[k] = f[k] * c_prev[k] + i[k] * g[k];
        h[k] = o[k] * std::tanh(c[k]);
    }
    return {std::move(h), std::move(c)};
}

std::pair<std::vector<double>, std::vector<double>> forward(const std::vector<double>& seq,
                                                            const LstmModel& model) {
    ForwardTrace tr = run_forward(seq, model);
    return {std::move(tr.h_last), std::move(tr.logits)};
}

double cross_entropy(const std::vector<double>& logits, std::uint32_t label) {
    if (label >= logits.size()) throw Error("label out of range for logits");
    double mx = logits[0];
    for (double v : logits) mx = std::max(mx, v);
    double total = 0.0;
    for (double v : logits) total += std::exp(v - mx);
    return std::log(total) - (logits[label] - mx);
}

std::pair<double, LstmParams> backward(const std::vector<double>& seq, std::uint32_t label,
                                       const LstmModel& m) {
    const int hd = m.hidden_dim, fd = m.input_dim, ts = m.timesteps;
    ForwardTrace tr = run_forward(seq, m);
    if (label >= static_cast<std::uint32_t>(m.classes)) throw Error("label out of range");
    const double sample_loss = cross_entropy(tr.logits, label);

    LstmParams grad = make_params(fd, hd, m.classes);
    std::vector<double> dlogits = softmax_of(tr.logits);
    dlogits[label] -= 1.0;
    std::vector<double> dh(static_cast<std::size_t>(hd), 0.0);
    for (int cls = 0; cls < m.classes; ++cls) {
        const std::size_t base = static_cast<std::size_t>(cls) * hd;
        grad.b_y[static_cast<std::size_t>(cls)] = dlogits[static_cast<std::size_t>(cls)];
        for (int r = 0; r < hd; ++r) {
            grad.w_y[base + r] = dlogits[static_cast<std::size_t>(cls)] * tr.h_last[static_cast<std::size_t>(r)];
            dh[static_cast<std::size_t>(r)] +=
                m.params.w_y[base + r] * dlogits[static_cast<std::size_t>(cls)];
        }
    }

    std::vector<double> dc(static_cast<std::size_t>(hd), 0.0);
    std::vector<double> dpre_i(static_cast<std::size_t>(hd)), dpre_f(dpre_i), dpre_g(dpre_i),
        dpre_o(dpre_i);
    for (int t = ts; t >= 1; --t) {
        const std::size_t cur = static_cast<std::size_t>(t) * hd;
        const std::size_t prev = static_cast<std::size_t>(t - 1) * hd;
        const double* a = seq.data() + static_cast<std::size_t>(t - 1) * fd;
        for (int r = 0; r < hd; ++r) {
            const std::size_t k = static_cast<std::size_t>(r);
            const double i_v = tr.i[cur + k], f_v = tr.f[cur + k], g_v = tr.g[cur + k],
                         o_v = tr.o[cur + k], th = tr.tanh_c[cur + k];
            const double dh_v = dh[k];
            dpre_o[k] = dh_v * th * o_v * (1.0 - o_v);
            const double dc_v = dc[k] + dh_v * o_v * (1.0 - th * th);
            dpre_i[k] = dc_v * g_v * i_v * (1.0 - i_v);
            dpre_g[k] = dc_v * i_v * (1.0 - g_v * g_v);
            dpre_f[k] = dc_v * tr.c[prev + k] * f_v * (1.0 - f_v);
            dc[k] = dc_v * f_v;
        }
        const double* h_prev = tr.h.data() + prev;
        auto accumulate = [&](const std::vector<double>& dpre, std::vector<double>& ga,
                              std::vector<double>& gh, std::vector<double>& gb,
                              const std::vector<double>& wh) {
            for (int r = 0; r < hd; ++r) {
                const std::size_t k = static_cast<std::size_t>(r);
                const double d = dpre[k];
                gb[k] += d;
                double* ga_row = ga.data() + k * fd;
                for (int x = 0; x < fd; ++x) ga_row[x] += d * a[x];
                double* gh_row = gh.data() + k * hd;
                for (int x = 0; x < hd; ++x) gh_row[x] += d * h_prev[x];
            }
            for (int x = 0; x < hd; ++x) {
                double acc = 0.0;
                for (int r = 0; r < hd; ++r)
                    acc += wh[static_cast<std::size_t>(r) * hd + x] * dpre[static_cast<std::size_t>(r)];
                dh[static_cast<std::size_t>(x)] += acc;
            }
        };
        std::fill(dh.begin(), dh.end(), 0.0);
        accumulate(dpre_i, grad.w_ia, grad.w_ih, grad.b_i, m.params.w_ih);
        accumulate(dpre_f, grad.w_fa, grad.w_fh, grad.b_f, m.params.w_fh);
        accumulate(dpre_g, grad.w_ca, grad.w_ch, grad.b_c, m.params.w_ch);
        accumulate(dpre_o, grad.w_oa, grad.w_oh, grad.b_o, m.params.w_oh);
    }
    return {sample_loss, std::move(grad)};
}

namespace {

struct Standardizer {
    std::vector<double> mean, stddev;
    void apply(const double* in, double* out, std::size_t dim) const {
        for (std::size_t c = 0; c < dim; ++c) out[c] = (in[c] - mean[c]) / stddev[c];
    }
};

Standardizer make_standardizer(const FeatureMatrix& fm) {
    ColumnStats stats = column_stats(fm);
    for (double& s : stats.stddev)
        if (!(s > 0.0)) s = 1.0;
    return {std::move(stats.mean), std::move(stats.stddev)};
}

} // namespace

TrainResult train_lstm(const FeatureMatrix& train, const TrainConfig& cfg, int timesteps,
                       int hidden_dim) {
    train.validate();
    cfg.validate();
    if (train.rows == 0 || train.cols == 0) throw Error("training matrix is empty");
    std::uint32_t max_label = 0;
    for (std::uint32_t l : train.row_labels) max_label = std::max(max_label, l);
    const int classes = static_cast<int>(max_label) + 1;
    if (classes < 2) throw Error("training needs at least 2 classes");
    if (timesteps < 1) throw Error("timesteps must be >= 1");
    if (hidden_dim < 1) throw Error("hidden_dim must be >= 1");

    const std::size_t dim = train.cols;
    const int input_dim = static_cast<int>((dim + static_cast<std::size_t>(timesteps) - 1) /
                                           static_cast<std::size_t>(timesteps));
    LstmModel model = init_model(input_dim, hidden_dim, timesteps, classes, cfg.seed);
    Standardizer stz = make_standardizer(train);
    model.feature_mean = stz.mean;
    model.feature_std = stz.stddev;

    // Pre-reshaped standardized sequences, one per sample.
    const std::size_t seq_len = static_cast<std::size_t>(input_dim) * timesteps;
    std::vector<double> seqs(train.rows * seq_len, 0.0);
    std::vector<double> std_row(dim);
    for (std::size_t r = 0; r < train.rows; ++r) {
        stz.apply(train.values.data() + r * dim, std_row.data(), dim);
        std::copy(std_row.begin(), std_row.end(), seqs.begin() + static_cast<std::ptrdiff_t>(r * seq_len));
    }

    TrainResult result;
    if (cfg.epochs == 0) {
        result.model = std::move(model);
        return result;
    }

    auto fields = lstm_param_fields();
    LstmParams momentum = make_params(input_dim, hidden_dim, classes);
    LstmParams adam_m = make_params(input_dim, hidden_dim, classes);
    LstmParams adam_v = make_params(input_dim, hidden_dim, classes);
    std::uint64_t adam_step = 0;

    std::vector<std::size_t> order(train.rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t batch = static_cast<std::size_t>(cfg.batch_size);
    std::vector<double> sample_loss(train.rows, 0.0);
    std::vector<LstmParams> sample_grads(std::min(batch, train.rows));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng shuffle_rng(mix_seed(cfg.seed, kStreamShuffle, static_cast<std::uint64_t>(epoch)));
        for (std::size_t i = order.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(shuffle_rng.uniform_int(i));
            std::swap(order[i - 1], order[j]);
        }
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < train.rows; start += batch) {
            const std::size_t count = std::min(batch, train.rows - start);
            parallel_for(count, [&](std::size_t s) {
                const std::size_t row = order[start + s];
                std::vector<double> seq(seqs.begin() + static_cast<std::ptrdiff_t>(row * seq_len),
                                        seqs.begin() + static_cast<std::ptrdiff_t>((row + 1) * seq_len));
                auto [l, g] = backward(seq, train.row_labels[row], model);
                sample_loss[s] = l;
                sample_grads[s] = std::move(g);
            });
            LstmParams batch_grad = make_params(input_dim, hidden_dim, classes);
            double batch_loss = 0.0;
            for (std::size_t s = 0; s < count; ++s) { // fixed reduction order
                batch_loss += sample_loss[s];
                for (auto f : fields) {
                    auto& acc = batch_grad.*f;
                    const auto& g = sample_grads[s].*f;
                    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += g[k];
                }
            }
            if (!std::isfinite(batch_loss))
                throw Error("training diverged: non-finite loss at epoch " +
                            std::to_string(epoch));
            epoch_loss += batch_loss;
            const double inv = 1.0 / static_cast<double>(count);
            double norm2 = 0.0;
            for (auto f : fields) {
                for (double& v : batch_grad.*f) {
                    v *= inv;
                    norm2 += v * v;
                }
            }
            const double norm = std::sqrt(norm2);
            if (norm > cfg.gradient_clip) {
                const double scale = cfg.gradient_clip / norm;
                for (auto f : fields)
                    for (double& v : batch_grad.*f) v *= scale;
            }
            if (cfg.optimizer == Optimizer::sgd_momentum) {
                for (auto f : fields) {
                    auto& p = model.params.*f;
                    auto& vel = momentum.*f;
                    const auto& g = batch_grad.*f;
                    for (std::size_t k = 0; k < p.size(); ++k) {
                        vel[k] = 0.9 * vel[k] - cfg.learning_rate * g[k];
                        p[k] += vel[k];
                    }
                }
            } else {
                ++adam_step;
                const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
                const double bc1 = 1.0 - std::pow(b1, static_cast<double>(adam_step));
                const double bc2 = 1.0 - std::pow(b2, static_cast<double>(adam_step));
                for (auto f : fields) {
                    auto& p = model.params.*f;
                    auto& mm = adam_m.*f;
                    auto& vv = adam_v.*f;
                    const auto& g = batch_grad.*f;
                    for (std::size_t k = 0; k < p.size(); ++k) {
                        mm[k] = b1 * mm[k] + (1.0 - b1) * g[k];
                        vv[k] = b2 * vv[k] + (1.0 - b2) * g[k] * g[k];
                        p[k] -= cfg.learning_rate * (mm[k] / bc1) /
                                (std::sqrt(vv[k] / bc2) + eps);
                    }
                }
            }
        }
        result.epoch_loss.push_back(epoch_loss / static_cast<double>(train.rows));
    }
    model.validate();
    result.model = std::move(model);
    return result;
}

std::vector<std::uint32_t> predict(const LstmModel& model, const FeatureMatrix& features) {
    model.validate();
    features.validate();
    if (features.cols != model.feature_mean.size())
        throw Error("feature dimension " + std::to_string(features.cols) +
                    " does not match the model's expected " +
                    std::to_string(model.feature_mean.size()));
    std::vector<std::uint32_t> labels(features.rows, 0);
    const std::size_t dim = features.cols;
    parallel_for(features.rows, [&](std::size_t r) {
        std::vector<double> std_row(dim);
        for (std::size_t c = 0; c < dim; ++c)
            std_row[c] = (features.at(r, c) - model.feature_mean[c]) / model.feature_std[c];
        std::vector<double> seq = reshape_sequence(std_row.data(), dim, model.timesteps);
        auto [h, logits] = forward(seq, model);
        std::size_t best = 0;
        for (std::size_t k = 1; k < logits.size(); ++k)
            if (logits[k] > logits[best]) best = k;
        labels[r] = static_cast<std::uint32_t>(best);
    });
    return labels;
}

namespace {
constexpr char kModelMagic[7] = {'L', 'U', 'L', 'C', 'M', '1', '\0'};
}

void save_model(const std::filesystem::path& path, const LstmModel& model) {
    model.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open model file for writing: " + path.string());
    out.write(kModelMagic, sizeof kModelMagic);
    write_u32le(out, static_cast<std::uint32_t>(model.input_dim));
    write_u32le(out, static_cast<std::uint32_t>(model.hidden_dim));
    write_u32le(out, static_cast<std::uint32_t>(model.timesteps));
    write_u32le(out, static_cast<std::uint32_t>(model.classes));
    for (auto f : lstm_param_fields())
        for (double v : model.params.*f) write_f64le(out, v);
    write_u32le(out, static_cast<std::uint32_t>(model.feature_mean.size()));
    for (double v : model.feature_mean) write_f64le(out, v);
    for (double v : model.feature_std) write_f64le(out, v);
    if (!out) throw Error("write failed for model file: " + path.string());
}

LstmModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file: " + path.string());
    char magic[sizeof kModelMagic];
    read_exact(in, magic, sizeof kModelMagic, "model magic");
    if (!std::equal(magic, magic + sizeof kModelMagic, kModelMagic))
        throw Error("bad magic in model file (expected LULCM1): " + path.string());
    LstmModel m;
    m.input_dim = static_cast<int>(read_u32le(in, "model input_dim"));
    m.hidden_dim = static_cast<int>(read_u32le(in, "model hidden_dim"));
    m.timesteps = static_cast<int>(read_u32le(in, "model timesteps"));
    m.classes = static_cast<int>(read_u32le(in, "model classes"));
    if (m.input_dim < 1 || m.hidden_dim < 1 || m.timesteps < 1 || m.classes < 2)
        throw Error("model file has invalid dimensions: " + path.string());
    m.params = make_params(m.input_dim, m.hidden_dim, m.classes);
    for (auto f : lstm_param_fields())
        for (double& v : m.params.*f) v = read_f64le(in, "model parameter");
    const std::uint32_t dim = read_u32le(in, "standardization length");
    m.feature_mean.resize(dim);
    m.feature_std.resize(dim);
    for (double& v : m.feature_mean) v = read_f64le(in, "feature mean");
    for (double& v : m.feature_std) v = read_f64le(in, "feature std");
    char extra;
    if (in.read(&extra, 1)) throw Error("trailing bytes in model file: " + path.string());
    m.validate();
    return m;
}

void save_loss_csv(const std::filesystem::path& path, const std::vector<double>& epoch_loss) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open loss file for writing: " + path.string());
    out << "epoch,loss\n";
    for (std::size_t e = 0; e < epoch_loss.size(); ++e) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", epoch_loss[e]);
        out << e << ',' << buf << '\n';
    }
    if (!out) throw Error("write failed for loss file: " + path.string());
}

} // namespace lulc
