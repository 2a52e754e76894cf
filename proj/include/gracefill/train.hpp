#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gracefill/lstm.hpp"
#include "gracefill/preprocess.hpp"

namespace gracefill {

struct TrainConfig {
    std::size_t look_back = 15;
    std::size_t epochs = 300;
    std::size_t batch_size = 8;
    double learning_rate = 0.001;
    double validation_fraction = 0.15;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-7;
    std::uint64_t rng_seed = 0;
    InputLayout input_layout = InputLayout::one_step_lookback_features;

    void validate() const;
};

inline ModelParams init_params(const TrainConfig& config, std::uint64_t seed) {
    return init_params(config.input_layout, config.look_back, seed);
}

/// Per-epoch training and validation curves; all vectors have `epochs`
/// entries. Training loss/MAE are batch-size-weighted running means over
/// the epoch (the metric shifts as the weights move); validation metrics
/// are computed once per epoch with the end-of-epoch weights.
struct TrainHistory {
    std::vector<double> loss;
    std::vector<double> mae;
    std::vector<double> val_loss;
    std::vector<double> val_mae;
};

/// Adam moment estimates, one slot per parameter array.
struct AdamState {
    ModelParams m;
    ModelParams v;
    std::uint64_t t = 0;
};

AdamState make_adam_state(const ModelParams& params);

/// One bias-corrected Adam update: m <- b1*m + (1-b1)*g,
/// v <- b2*v + (1-b2)*g^2, theta <- theta - lr * m_hat / (sqrt(v_hat) + eps).
void adam_step(ModelParams& params, const ModelGrads& grads, AdamState& state,
               const TrainConfig& config);

/// Train from scratch on windowed pairs. The validation set is the tail
/// `validation_fraction` of the pairs, taken before any shuffling; the
/// remaining pairs are reshuffled every epoch and consumed in batches.
/// Deterministic given (data, config): the init stream and the shuffle
/// stream are both derived from config.rng_seed.
std::pair<ModelParams, TrainHistory> fit(const WindowedDataset& train_set,
                                         const TrainConfig& config);

}  // namespace gracefill
