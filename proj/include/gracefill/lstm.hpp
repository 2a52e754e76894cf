#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gracefill/linalg.hpp"

namespace gracefill {

/// How a look-back window feeds the LSTM. The default presents the whole
/// window as 15 features of a single timestep, which makes the recurrence
/// degenerate; the alternative runs 15 genuine timesteps of one feature.
enum class InputLayout : std::uint8_t {
    one_step_lookback_features,
    lookback_steps_one_feature,
};

const char* to_string(InputLayout layout);
InputLayout input_layout_from_string(const std::string& s);

constexpr std::size_t kHiddenSize = 8;
constexpr std::array<std::size_t, 3> kDenseSizes{10, 32, 1};

/// LSTM cell weights. Gate order within the 4H axis is fixed:
/// input i, forget f, cell g, output o.
struct LstmParams {
    std::size_t input_dim = 0;
    std::size_t hidden = kHiddenSize;
    Matrix w;               // input kernel, input_dim x 4H
    Matrix u;               // recurrent kernel, H x 4H
    std::vector<double> b;  // 4H
};

struct DenseParams {
    Matrix w;               // in x out, linear activation
    std::vector<double> b;  // out
};

/// All learnable weights of the LSTM(8) -> Dense(10) -> Dense(32) -> Dense(1)
/// stack, plus the input geometry needed to interpret a window row.
struct ModelParams {
    LstmParams lstm;
    std::vector<DenseParams> dense;
    InputLayout layout = InputLayout::one_step_lookback_features;
    std::size_t look_back = 15;

    std::size_t timesteps() const {
        return layout == InputLayout::one_step_lookback_features ? 1 : look_back;
    }
    std::size_t input_dim() const {
        return layout == InputLayout::one_step_lookback_features ? look_back : 1;
    }
};

/// Gradients share the exact parameter shapes.
using ModelGrads = ModelParams;

ModelGrads zero_like(const ModelParams& params);

/// Visit every parameter array in a fixed, documented order:
/// lstm.w, lstm.u, lstm.b, dense0.w, dense0.b, dense1.w, dense1.b, ...
/// fn(name, values, rows, cols); vectors are reported as rows=1.
template <class Params, class Fn>
void for_each_array(Params& p, Fn&& fn) {
    fn("lstm.w", p.lstm.w.data, p.lstm.w.rows, p.lstm.w.cols);
    fn("lstm.u", p.lstm.u.data, p.lstm.u.rows, p.lstm.u.cols);
    fn("lstm.b", p.lstm.b, std::size_t{1}, p.lstm.b.size());
    for (std::size_t k = 0; k < p.dense.size(); ++k) {
        const std::string base = "dense" + std::to_string(k);
        fn((base + ".w").c_str(), p.dense[k].w.data, p.dense[k].w.rows, p.dense[k].w.cols);
        fn((base + ".b").c_str(), p.dense[k].b, std::size_t{1}, p.dense[k].b.size());
    }
}

/// Glorot-uniform input/dense kernels, row-orthonormal recurrent kernel,
/// zero biases except the forget-gate block (set to 1). Fully determined
/// by the seed.
ModelParams init_params(InputLayout layout, std::size_t look_back, std::uint64_t seed);

/// Per-timestep activations retained for backprop.
struct LstmStepCache {
    std::vector<double> x;       // input_dim
    std::vector<double> h_prev;  // H
    std::vector<double> c_prev;  // H
    std::vector<double> i, f, g, o, c, tanh_c;  // H each
};

struct LstmCache {
    std::vector<LstmStepCache> steps;
    std::vector<double> h_final;
};

/// Run the cell over one sequence (timesteps x input_dim).
LstmCache lstm_forward(const LstmParams& params, const Matrix& x_sequence,
                       std::span<const double> h0, std::span<const double> c0);

struct SampleCache {
    LstmCache lstm;
    std::vector<std::vector<double>> dense_in;  // input to each dense layer
    double pred = 0.0;
};

/// Forward pass over a batch of window rows (n x look_back). Pass `caches`
/// to retain activations for backward().
std::vector<double> model_forward(const ModelParams& params, const Matrix& x_batch,
                                  std::vector<SampleCache>* caches = nullptr);

inline std::vector<double> predict(const ModelParams& params, const Matrix& x_batch) {
    return model_forward(params, x_batch);
}

double mse(std::span<const double> pred, std::span<const double> target);
double mae(std::span<const double> pred, std::span<const double> target);

/// Exact gradients of the batch MSE with respect to every parameter.
/// `caches` must come from model_forward on the same batch.
ModelGrads backward(const ModelParams& params, const Matrix& x_batch,
                    std::span<const double> y, const std::vector<SampleCache>& caches);

}  // namespace gracefill
