#include "gracefill/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "gracefill/errors.hpp"
#include "gracefill/rng.hpp"

namespace gracefill {

void TrainConfig::validate() const {
    if (look_back == 0) throw std::invalid_argument("look_back must be >= 1");
    if (epochs == 0) throw std::invalid_argument("epochs must be >= 1");
    if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
        throw std::invalid_argument("validation_fraction must be in (0,1)");
    if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0) || !(adam_beta2 > 0.0 && adam_beta2 < 1.0))
        throw std::invalid_argument("adam betas must be in (0,1)");
    if (!(adam_epsilon > 0.0)) throw std::invalid_argument("adam_epsilon must be > 0");
}

AdamState make_adam_state(const ModelParams& params) {
    AdamState state;
    state.m = zero_like(params);
    state.v = zero_like(params);
    state.t = 0;
    return state;
}

void adam_step(ModelParams& params, const ModelGrads& grads, AdamState& state,
               const TrainConfig& config) {
    state.t += 1;
    const double b1 = config.adam_beta1;
    const double b2 = config.adam_beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));

    auto update = [&](std::vector<double>& theta, const std::vector<double>& g,
                      std::vector<double>& m, std::vector<double>& v) {
        if (theta.size() != g.size() || theta.size() != m.size() || theta.size() != v.size())
            throw ShapeMismatch("adam_step: parameter/gradient/state sizes differ");
        for (std::size_t i = 0; i < theta.size(); ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
            const double m_hat = m[i] / c1;
            const double v_hat = v[i] / c2;
            theta[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_epsilon);
        }
    };

    update(params.lstm.w.data, grads.lstm.w.data, state.m.lstm.w.data, state.v.lstm.w.data);
    update(params.lstm.u.data, grads.lstm.u.data, state.m.lstm.u.data, state.v.lstm.u.data);
    update(params.lstm.b, grads.lstm.b, state.m.lstm.b, state.v.lstm.b);
    for (std::size_t k = 0; k < params.dense.size(); ++k) {
        update(params.dense[k].w.data, grads.dense[k].w.data, state.m.dense[k].w.data,
               state.v.dense[k].w.data);
        update(params.dense[k].b, grads.dense[k].b, state.m.dense[k].b, state.v.dense[k].b);
    }
}

namespace {

void gather_rows(const WindowedDataset& ds, const std::vector<std::size_t>& indices,
                 std::size_t begin, std::size_t end, Matrix& x_out, std::vector<double>& y_out) {
    const std::size_t n = end - begin;
    x_out.rows = n;
    x_out.cols = ds.look_back;
    x_out.data.resize(n * ds.look_back);
    y_out.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t src = indices[begin + r];
        std::copy(ds.row(src).begin(), ds.row(src).end(), x_out.row_ptr(r));
        y_out[r] = ds.y[src];
    }
}

// Exact dataset-level loss/metric with fixed weights, evaluated in batches.
std::pair<double, double> evaluate_set(const ModelParams& params, const WindowedDataset& ds,
                                       std::size_t begin, std::size_t end,
                                       std::size_t batch_size) {
    double se = 0.0, ae = 0.0;
    Matrix x;
    std::vector<double> y;
    std::vector<std::size_t> idx(end - begin);
    std::iota(idx.begin(), idx.end(), begin);
    for (std::size_t pos = 0; pos < idx.size(); pos += batch_size) {
        const std::size_t stop = std::min(pos + batch_size, idx.size());
        gather_rows(ds, idx, pos, stop, x, y);
        const auto preds = model_forward(params, x);
        for (std::size_t i = 0; i < preds.size(); ++i) {
            const double r = preds[i] - y[i];
            se += r * r;
            ae += std::abs(r);
        }
    }
    const double n = static_cast<double>(end - begin);
    return {se / n, ae / n};
}

}  // namespace

std::pair<ModelParams, TrainHistory> fit(const WindowedDataset& train_set,
                                         const TrainConfig& config) {
    config.validate();
    if (train_set.look_back != config.look_back)
        throw ShapeMismatch("dataset look_back != config look_back");
    const std::size_t n = train_set.n_pairs;
    if (n < 2) throw TooFewPairs(n);

    // Tail validation slice, fixed before any shuffling.
    const auto split_at = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * (1.0 - config.validation_fraction)));
    const std::size_t n_train = split_at;
    if (n_train == 0) throw TooFewPairs(n);

    ModelParams params = init_params(config, config.rng_seed);
    AdamState adam = make_adam_state(params);
    // Separate stream from the init draws so both are pinned by the seed.
    constexpr std::uint64_t kShuffleStreamTag = 0x73687566666c65ull;
    std::mt19937_64 shuffle_rng(derive_seed(config.rng_seed, kShuffleStreamTag));

    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), 0);

    TrainHistory history;
    history.loss.reserve(config.epochs);
    history.mae.reserve(config.epochs);
    history.val_loss.reserve(config.epochs);
    history.val_mae.reserve(config.epochs);

    Matrix x_batch;
    std::vector<double> y_batch;
    std::vector<SampleCache> caches;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);

        double loss_sum = 0.0, mae_sum = 0.0;
        for (std::size_t pos = 0; pos < n_train; pos += config.batch_size) {
            const std::size_t stop = std::min(pos + config.batch_size, n_train);
            gather_rows(train_set, order, pos, stop, x_batch, y_batch);

            model_forward(params, x_batch, &caches);
            for (std::size_t i = 0; i < y_batch.size(); ++i) {
                const double r = caches[i].pred - y_batch[i];
                loss_sum += r * r;
                mae_sum += std::abs(r);
            }

            const ModelGrads grads = backward(params, x_batch, y_batch, caches);
            adam_step(params, grads, adam, config);
        }

        const double train_loss = loss_sum / static_cast<double>(n_train);
        const double train_mae = mae_sum / static_cast<double>(n_train);
        auto [val_loss, val_mae] = evaluate_set(params, train_set, split_at, n, config.batch_size);

        if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
            throw NumericError("non-finite loss at epoch " + std::to_string(epoch + 1));

        history.loss.push_back(train_loss);
        history.mae.push_back(train_mae);
        history.val_loss.push_back(val_loss);
        history.val_mae.push_back(val_mae);
    }

    return {std::move(params), std::move(history)};
}

}  // namespace gracefill
