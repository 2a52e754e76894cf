#include <doctest.h>

#include <cmath>
#include <random>

#include "gracefill/errors.hpp"
#include "gracefill/lstm.hpp"
#include "support/oracles.hpp"

using namespace gracefill;

namespace {

Matrix random_batch(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Matrix m(rows, cols);
    for (double& v : m.data) v = dist(rng);
    return m;
}

std::vector<double> random_targets(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> y(n);
    for (double& v : y) v = dist(rng);
    return y;
}

bool params_equal(const ModelParams& a, const ModelParams& b) {
    bool equal = a.lstm.w.data == b.lstm.w.data && a.lstm.u.data == b.lstm.u.data &&
                 a.lstm.b == b.lstm.b && a.dense.size() == b.dense.size();
    for (std::size_t k = 0; equal && k < a.dense.size(); ++k)
        equal = a.dense[k].w.data == b.dense[k].w.data && a.dense[k].b == b.dense[k].b;
    return equal;
}

}  // namespace

TEST_CASE("init_params is deterministic in the seed") {
    const auto a = init_params(InputLayout::one_step_lookback_features, 15, 42);
    const auto b = init_params(InputLayout::one_step_lookback_features, 15, 42);
    const auto c = init_params(InputLayout::one_step_lookback_features, 15, 43);
    CHECK(params_equal(a, b));
    CHECK_FALSE(params_equal(a, c));
}

TEST_CASE("init_params shapes chain 8 -> 10 -> 32 -> 1") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 1);
    CHECK(p.lstm.w.rows == 15);
    CHECK(p.lstm.w.cols == 32);
    CHECK(p.lstm.u.rows == 8);
    CHECK(p.lstm.u.cols == 32);
    CHECK(p.lstm.b.size() == 32);
    REQUIRE(p.dense.size() == 3);
    CHECK(p.dense[0].w.rows == 8);
    CHECK(p.dense[0].w.cols == 10);
    CHECK(p.dense[1].w.rows == 10);
    CHECK(p.dense[1].w.cols == 32);
    CHECK(p.dense[2].w.rows == 32);
    CHECK(p.dense[2].w.cols == 1);

    const auto q = init_params(InputLayout::lookback_steps_one_feature, 15, 1);
    CHECK(q.lstm.w.rows == 1);
    CHECK(q.timesteps() == 15);
    CHECK(q.input_dim() == 1);
}

TEST_CASE("input kernel stays within the Glorot bound sqrt(6/47)") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 7);
    const double bound = std::sqrt(6.0 / 47.0);
    double max_abs = 0.0;
    for (double v : p.lstm.w.data) {
        CHECK(std::abs(v) <= bound);
        max_abs = std::max(max_abs, std::abs(v));
    }
    CHECK(max_abs > 0.8 * bound);  // draws actually fill the range
}

TEST_CASE("recurrent kernel rows are orthonormal") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 9);
    const auto& u = p.lstm.u;  // 8 x 32
    for (std::size_t r1 = 0; r1 < u.rows; ++r1) {
        for (std::size_t r2 = 0; r2 < u.rows; ++r2) {
            double dot = 0.0;
            for (std::size_t c = 0; c < u.cols; ++c) dot += u(r1, c) * u(r2, c);
            CHECK(std::abs(dot - (r1 == r2 ? 1.0 : 0.0)) <= 1e-10);
        }
    }
}

TEST_CASE("biases are zero except the unit forget-gate block") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 11);
    for (std::size_t j = 0; j < 32; ++j)
        CHECK(p.lstm.b[j] == (j >= 8 && j < 16 ? 1.0 : 0.0));
    for (const auto& d : p.dense)
        for (double b : d.b) CHECK(b == 0.0);
}

TEST_CASE("lstm_forward zero weights and states gives zero output") {
    LstmParams params;
    params.input_dim = 3;
    params.hidden = 4;
    params.w = Matrix(3, 16);
    params.u = Matrix(4, 16);
    params.b.assign(16, 0.0);

    Matrix seq(2, 3);
    seq.fill(0.7);
    const std::vector<double> zeros(4, 0.0);
    const auto cache = lstm_forward(params, seq, zeros, zeros);
    for (double h : cache.h_final) CHECK(h == 0.0);
}

TEST_CASE("lstm_forward single unit matches a hand-computed gate evaluation") {
    LstmParams params;
    params.input_dim = 1;
    params.hidden = 1;
    params.w = Matrix(1, 4);
    params.w.data = {0.1, 0.2, 0.3, 0.4};
    params.u = Matrix(1, 4);
    params.u.data = {0.5, 0.6, 0.7, 0.8};
    params.b = {0.01, 0.02, 0.03, 0.04};

    Matrix seq(1, 1);
    seq.data = {0.5};
    const std::vector<double> h0{0.3}, c0{0.2};
    const auto cache = lstm_forward(params, seq, h0, c0);

    // scalar oracle, gate by gate
    auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    const double zi = 0.5 * 0.1 + 0.3 * 0.5 + 0.01;
    const double zf = 0.5 * 0.2 + 0.3 * 0.6 + 0.02;
    const double zg = 0.5 * 0.3 + 0.3 * 0.7 + 0.03;
    const double zo = 0.5 * 0.4 + 0.3 * 0.8 + 0.04;
    const double c = sig(zf) * 0.2 + sig(zi) * std::tanh(zg);
    const double h = sig(zo) * std::tanh(c);

    REQUIRE(cache.h_final.size() == 1);
    CHECK(cache.h_final[0] == doctest::Approx(h).epsilon(1e-15));
    CHECK(cache.steps[0].c[0] == doctest::Approx(c).epsilon(1e-15));
}

TEST_CASE("lstm_forward rejects shape mismatches") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 1);
    Matrix bad(1, 7);
    const std::vector<double> state(8, 0.0);
    CHECK_THROWS_AS(lstm_forward(p.lstm, bad, state, state), ShapeMismatch);

    Matrix ok(1, 15);
    const std::vector<double> short_state(3, 0.0);
    CHECK_THROWS_AS(lstm_forward(p.lstm, ok, short_state, short_state), ShapeMismatch);
    CHECK_THROWS_AS(model_forward(p, bad), ShapeMismatch);
}

TEST_CASE("single-step layout ignores the recurrent kernel in the forward pass") {
    auto p = init_params(InputLayout::one_step_lookback_features, 15, 41);
    const Matrix batch = random_batch(3, 15, 42);
    const auto before = model_forward(p, batch);
    for (double& v : p.lstm.u.data) v = -v * 3.0 + 0.5;  // mangle U
    CHECK(model_forward(p, batch) == before);
}

TEST_CASE("model_forward with zero parameters predicts zero") {
    auto p = init_params(InputLayout::one_step_lookback_features, 15, 5);
    for_each_array(p, [](const char*, std::vector<double>& data, std::size_t, std::size_t) {
        data.assign(data.size(), 0.0);
    });
    const auto preds = model_forward(p, random_batch(4, 15, 99));
    for (double v : preds) CHECK(v == 0.0);
}

TEST_CASE("model_forward rows are independent of the batch around them") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 21);
    const Matrix batch = random_batch(6, 15, 77);
    const auto all = model_forward(p, batch);
    for (std::size_t r = 0; r < batch.rows; ++r) {
        Matrix one(1, 15);
        std::copy(batch.row_ptr(r), batch.row_ptr(r) + 15, one.data.begin());
        CHECK(model_forward(p, one)[0] == all[r]);
    }
}

TEST_CASE("model_forward matches the independently coded oracle") {
    for (InputLayout layout :
         {InputLayout::one_step_lookback_features, InputLayout::lookback_steps_one_feature}) {
        const auto p = init_params(layout, 15, 31);
        const Matrix batch = random_batch(5, 15, 32);
        const auto preds = model_forward(p, batch);
        for (std::size_t r = 0; r < batch.rows; ++r) {
            const std::vector<double> row(batch.row_ptr(r), batch.row_ptr(r) + 15);
            CHECK(preds[r] == doctest::Approx(oracle::model_forward_row(p, row)).epsilon(1e-13));
        }
    }
}

TEST_CASE("mse and mae") {
    const std::vector<double> a{1, 2}, b{0, 4};
    CHECK(mse(a, a) == 0.0);
    CHECK(mae(a, a) == 0.0);
    CHECK(mse(std::vector<double>{0, 0}, std::vector<double>{1, 1}) == 1.0);
    CHECK(mae(std::vector<double>{0, 0}, std::vector<double>{1, 1}) == 1.0);
    CHECK(mse(a, b) == doctest::Approx(2.5));
    CHECK(mae(a, b) == doctest::Approx(1.5));
    CHECK_THROWS_AS(mse(a, std::vector<double>{1}), LengthMismatch);
    CHECK_THROWS_AS(mae(std::vector<double>{}, std::vector<double>{}), EmptyInput);
}

TEST_CASE("backward is zero at a zero-residual batch") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 17);
    const Matrix batch = random_batch(4, 15, 18);
    std::vector<SampleCache> caches;
    const auto preds = model_forward(p, batch, &caches);

    const auto grads = backward(p, batch, preds, caches);
    for_each_array(const_cast<ModelGrads&>(grads),
                   [](const char*, std::vector<double>& data, std::size_t, std::size_t) {
                       for (double g : data) CHECK(g == 0.0);
                   });
}

TEST_CASE("recurrent-kernel gradient is exactly zero in the single-step layout") {
    const auto p = init_params(InputLayout::one_step_lookback_features, 15, 19);
    const Matrix batch = random_batch(8, 15, 20);
    const auto y = random_targets(8, 21);
    std::vector<SampleCache> caches;
    model_forward(p, batch, &caches);
    const auto grads = backward(p, batch, y, caches);
    for (double g : grads.lstm.u.data) CHECK(g == 0.0);
}

TEST_CASE("analytic gradients match central finite differences") {
    for (InputLayout layout :
         {InputLayout::one_step_lookback_features, InputLayout::lookback_steps_one_feature}) {
        for (std::size_t batch_size : {std::size_t{1}, std::size_t{8}}) {
            const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(layout) * 10 + batch_size;
            const auto p = init_params(layout, 6, seed);
            const Matrix batch = random_batch(batch_size, 6, seed + 1);
            const auto y = random_targets(batch_size, seed + 2);

            std::vector<SampleCache> caches;
            model_forward(p, batch, &caches);
            const auto analytic = backward(p, batch, y, caches);
            const auto numeric = oracle::numeric_gradients(p, batch, y);

            std::vector<const std::vector<double>*> a_arrays, n_arrays;
            for_each_array(const_cast<ModelGrads&>(analytic),
                           [&](const char*, std::vector<double>& d, std::size_t, std::size_t) {
                               a_arrays.push_back(&d);
                           });
            for_each_array(const_cast<ModelParams&>(numeric),
                           [&](const char*, std::vector<double>& d, std::size_t, std::size_t) {
                               n_arrays.push_back(&d);
                           });
            REQUIRE(a_arrays.size() == n_arrays.size());

            double worst = 0.0;
            for (std::size_t k = 0; k < a_arrays.size(); ++k)
                for (std::size_t i = 0; i < a_arrays[k]->size(); ++i)
                    worst = std::max(worst, oracle::gradient_rel_error((*a_arrays[k])[i],
                                                                       (*n_arrays[k])[i]));
            CHECK(worst <= 1e-4);
        }
    }
}
