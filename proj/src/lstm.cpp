#include "gracefill/lstm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "gracefill/errors.hpp"

namespace gracefill {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Matrix glorot_uniform(std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    Matrix m(fan_in, fan_out);
    for (double& v : m.data) v = dist(rng);
    return m;
}

// Row-orthonormal H x 4H kernel: modified Gram-Schmidt on the columns of a
// (4H x H) standard-normal matrix, then transpose.
Matrix orthogonal_rows(std::size_t h, std::mt19937_64& rng) {
    const std::size_t n = 4 * h;
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix a(n, h);
    for (double& v : a.data) v = dist(rng);

    for (std::size_t j = 0; j < h; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t r = 0; r < n; ++r) dot += a(r, k) * a(r, j);
            for (std::size_t r = 0; r < n; ++r) a(r, j) -= dot * a(r, k);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += a(r, j) * a(r, j);
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw NumericError("degenerate draw in orthogonal init");
        for (std::size_t r = 0; r < n; ++r) a(r, j) /= norm;
    }

    Matrix u(h, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < h; ++c) u(c, r) = a(r, c);
    return u;
}

}  // namespace

const char* to_string(InputLayout layout) {
    return layout == InputLayout::one_step_lookback_features ? "one_step_lookback_features"
                                                             : "lookback_steps_one_feature";
}

InputLayout input_layout_from_string(const std::string& s) {
    if (s == "one_step_lookback_features") return InputLayout::one_step_lookback_features;
    if (s == "lookback_steps_one_feature") return InputLayout::lookback_steps_one_feature;
    throw std::invalid_argument("unknown input layout: " + s);
}

ModelGrads zero_like(const ModelParams& params) {
    ModelGrads g = params;
    g.lstm.w.fill(0.0);
    g.lstm.u.fill(0.0);
    g.lstm.b.assign(g.lstm.b.size(), 0.0);
    for (auto& d : g.dense) {
        d.w.fill(0.0);
        d.b.assign(d.b.size(), 0.0);
    }
    return g;
}

ModelParams init_params(InputLayout layout, std::size_t look_back, std::uint64_t seed) {
    if (look_back == 0) throw std::invalid_argument("look_back must be >= 1");
    std::mt19937_64 rng(seed);

    ModelParams p;
    p.layout = layout;
    p.look_back = look_back;
    p.lstm.input_dim = p.input_dim();
    p.lstm.hidden = kHiddenSize;
    p.lstm.w = glorot_uniform(p.lstm.input_dim, 4 * kHiddenSize, rng);
    p.lstm.u = orthogonal_rows(kHiddenSize, rng);
    p.lstm.b.assign(4 * kHiddenSize, 0.0);
    // unit forget-gate bias (second gate block)
    for (std::size_t j = kHiddenSize; j < 2 * kHiddenSize; ++j) p.lstm.b[j] = 1.0;

    std::size_t in = kHiddenSize;
    for (std::size_t out : kDenseSizes) {
        DenseParams d;
        d.w = glorot_uniform(in, out, rng);
        d.b.assign(out, 0.0);
        p.dense.push_back(std::move(d));
        in = out;
    }
    return p;
}

LstmCache lstm_forward(const LstmParams& params, const Matrix& x_sequence,
                       std::span<const double> h0, std::span<const double> c0) {
    const std::size_t hidden = params.hidden;
    if (x_sequence.cols != params.input_dim)
        throw ShapeMismatch("sequence width " + std::to_string(x_sequence.cols) +
                            " != input_dim " + std::to_string(params.input_dim));
    if (h0.size() != hidden || c0.size() != hidden)
        throw ShapeMismatch("initial state size != hidden size");
    if (params.w.rows != params.input_dim || params.w.cols != 4 * hidden ||
        params.u.rows != hidden || params.u.cols != 4 * hidden || params.b.size() != 4 * hidden)
        throw ShapeMismatch("LSTM kernel shapes inconsistent with configured sizes");

    LstmCache cache;
    cache.steps.resize(x_sequence.rows);
    std::vector<double> h(h0.begin(), h0.end());
    std::vector<double> c(c0.begin(), c0.end());
    std::vector<double> z(4 * hidden);

    for (std::size_t t = 0; t < x_sequence.rows; ++t) {
        LstmStepCache& step = cache.steps[t];
        step.x.assign(x_sequence.row_ptr(t), x_sequence.row_ptr(t) + x_sequence.cols);
        step.h_prev = h;
        step.c_prev = c;

        z.assign(params.b.begin(), params.b.end());
        add_row_times_matrix(step.x.data(), params.w, z.data());
        add_row_times_matrix(h.data(), params.u, z.data());

        step.i.resize(hidden);
        step.f.resize(hidden);
        step.g.resize(hidden);
        step.o.resize(hidden);
        step.c.resize(hidden);
        step.tanh_c.resize(hidden);
        for (std::size_t j = 0; j < hidden; ++j) {
            step.i[j] = sigmoid(z[j]);
            step.f[j] = sigmoid(z[hidden + j]);
            step.g[j] = std::tanh(z[2 * hidden + j]);
            step.o[j] = sigmoid(z[3 * hidden + j]);
            step.c[j] = step.f[j] * c[j] + step.i[j] * step.g[j];
            step.tanh_c[j] = std::tanh(step.c[j]);
            h[j] = step.o[j] * step.tanh_c[j];
        }
        c = step.c;
    }

    cache.h_final = std::move(h);
    return cache;
}

std::vector<double> model_forward(const ModelParams& params, const Matrix& x_batch,
                                  std::vector<SampleCache>* caches) {
    if (x_batch.cols != params.look_back)
        throw ShapeMismatch("window width " + std::to_string(x_batch.cols) + " != look_back " +
                            std::to_string(params.look_back));

    const std::size_t timesteps = params.timesteps();
    const std::size_t input_dim = params.input_dim();
    const std::vector<double> zero_state(params.lstm.hidden, 0.0);

    std::vector<double> preds(x_batch.rows);
    if (caches) caches->assign(x_batch.rows, {});

    Matrix seq(timesteps, input_dim);
    for (std::size_t r = 0; r < x_batch.rows; ++r) {
        // Either 1 x look_back or look_back x 1; same flat contents.
        std::copy(x_batch.row_ptr(r), x_batch.row_ptr(r) + x_batch.cols, seq.data.begin());
        LstmCache lstm_cache = lstm_forward(params.lstm, seq, zero_state, zero_state);

        std::vector<std::vector<double>> dense_in;
        dense_in.reserve(params.dense.size());
        std::vector<double> act = lstm_cache.h_final;
        for (const auto& layer : params.dense) {
            if (layer.w.rows != act.size())
                throw ShapeMismatch("dense input " + std::to_string(act.size()) + " != kernel rows " +
                                    std::to_string(layer.w.rows));
            dense_in.push_back(act);
            std::vector<double> next(layer.b);
            add_row_times_matrix(act.data(), layer.w, next.data());
            act = std::move(next);
        }
        if (act.size() != 1) throw ShapeMismatch("model output dimension != 1");
        preds[r] = act[0];

        if (caches) {
            auto& sc = (*caches)[r];
            sc.lstm = std::move(lstm_cache);
            sc.dense_in = std::move(dense_in);
            sc.pred = preds[r];
        }
    }
    return preds;
}

double mse(std::span<const double> pred, std::span<const double> target) {
    if (pred.empty() || target.empty()) throw EmptyInput("mse");
    if (pred.size() != target.size()) throw LengthMismatch(pred.size(), target.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double r = pred[i] - target[i];
        acc += r * r;
    }
    return acc / static_cast<double>(pred.size());
}

double mae(std::span<const double> pred, std::span<const double> target) {
    if (pred.empty() || target.empty()) throw EmptyInput("mae");
    if (pred.size() != target.size()) throw LengthMismatch(pred.size(), target.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) acc += std::abs(pred[i] - target[i]);
    return acc / static_cast<double>(pred.size());
}

ModelGrads backward(const ModelParams& params, const Matrix& x_batch,
                    std::span<const double> y, const std::vector<SampleCache>& caches) {
    if (y.size() != x_batch.rows) throw LengthMismatch(y.size(), x_batch.rows);
    if (caches.size() != x_batch.rows)
        throw ShapeMismatch("cache count != batch size");

    const std::size_t hidden = params.lstm.hidden;
    const double batch = static_cast<double>(x_batch.rows);
    ModelGrads grads = zero_like(params);

    std::vector<double> dh(hidden), dc(hidden), dh_prev(hidden), dc_prev(hidden);
    std::vector<double> dz(4 * hidden);

    for (std::size_t s = 0; s < x_batch.rows; ++s) {
        const SampleCache& cache = caches[s];

        // dL/dpred for batch-mean squared error
        std::vector<double> dvec{2.0 * (cache.pred - y[s]) / batch};

        for (std::size_t k = params.dense.size(); k-- > 0;) {
            const auto& layer = params.dense[k];
            const auto& in = cache.dense_in[k];
            add_outer(in.data(), in.size(), dvec.data(), dvec.size(), grads.dense[k].w);
            for (std::size_t j = 0; j < dvec.size(); ++j) grads.dense[k].b[j] += dvec[j];
            std::vector<double> dnext(in.size(), 0.0);
            add_row_times_matrix_t(dvec.data(), layer.w, dnext.data());
            dvec = std::move(dnext);
        }

        dh = dvec;  // gradient w.r.t. final hidden state
        std::fill(dc.begin(), dc.end(), 0.0);

        for (std::size_t t = cache.lstm.steps.size(); t-- > 0;) {
            const LstmStepCache& st = cache.lstm.steps[t];
            for (std::size_t j = 0; j < hidden; ++j) {
                const double do_ = dh[j] * st.tanh_c[j];
                const double dct = dc[j] + dh[j] * st.o[j] * (1.0 - st.tanh_c[j] * st.tanh_c[j]);
                const double di = dct * st.g[j];
                const double df = dct * st.c_prev[j];
                const double dg = dct * st.i[j];
                dz[j] = di * st.i[j] * (1.0 - st.i[j]);
                dz[hidden + j] = df * st.f[j] * (1.0 - st.f[j]);
                dz[2 * hidden + j] = dg * (1.0 - st.g[j] * st.g[j]);
                dz[3 * hidden + j] = do_ * st.o[j] * (1.0 - st.o[j]);
                dc_prev[j] = dct * st.f[j];
            }

            add_outer(st.x.data(), st.x.size(), dz.data(), dz.size(), grads.lstm.w);
            add_outer(st.h_prev.data(), hidden, dz.data(), dz.size(), grads.lstm.u);
            for (std::size_t j = 0; j < 4 * hidden; ++j) grads.lstm.b[j] += dz[j];

            std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
            add_row_times_matrix_t(dz.data(), params.lstm.u, dh_prev.data());
            dh = dh_prev;
            dc = dc_prev;
        }
    }
    return grads;
}

}  // namespace gracefill
