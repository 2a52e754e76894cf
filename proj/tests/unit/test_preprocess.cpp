#include <doctest.h>

#include <random>

#include "gracefill/errors.hpp"
#include "gracefill/preprocess.hpp"
#include "support/oracles.hpp"

using namespace gracefill;

namespace {

AxisSeries series_of(std::vector<double> values) {
    AxisSeries s;
    s.values = std::move(values);
    return s;
}

}  // namespace

TEST_CASE("percentile interpolates between order statistics") {
    const std::vector<double> v{1, 2, 3, 4, 100};
    CHECK(percentile(v, 25.0) == doctest::Approx(2.0));
    CHECK(percentile(v, 75.0) == doctest::Approx(4.0));
    CHECK(percentile(v, 50.0) == doctest::Approx(3.0));
    CHECK(percentile(v, 100.0) == doctest::Approx(100.0));
    CHECK(percentile(v, 0.0) == doctest::Approx(1.0));
    // position 10*(5-1)/100 = 0.4 -> 1 + 0.4*(2-1)
    CHECK(percentile(v, 10.0) == doctest::Approx(1.4));
    CHECK(percentile(std::vector<double>{7.0}, 30.0) == 7.0);
}

TEST_CASE("remove_outliers drops the spike and reports the fences") {
    const auto [cleaned, report] = remove_outliers(series_of({1, 2, 3, 4, 100}));
    CHECK(cleaned.values == std::vector<double>{1, 2, 3, 4});
    CHECK(report.q1 == doctest::Approx(2.0));
    CHECK(report.q3 == doctest::Approx(4.0));
    CHECK(report.iqr == doctest::Approx(2.0));
    CHECK(report.min_limit == doctest::Approx(-1.0));
    CHECK(report.max_limit == doctest::Approx(7.0));
    CHECK(report.removed_indices == std::vector<std::size_t>{4});
    CHECK(report.retained_count == 4);
    CHECK(cleaned.stage == Stage::cleaned);
}

TEST_CASE("constant series survives cleaning untouched") {
    const auto [cleaned, report] = remove_outliers(series_of({5, 5, 5, 5}));
    CHECK(cleaned.values == std::vector<double>{5, 5, 5, 5});
    CHECK(report.iqr == 0.0);
    CHECK(report.removed_indices.empty());
}

TEST_CASE("remove_outliers matches the brute-force oracle on random arrays") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> len_dist(5, 1000);
    std::normal_distribution<double> val(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> values(len_dist(rng));
        for (double& v : values) {
            v = val(rng);
            if (uni(rng) < 0.05) v *= 50.0;  // sprinkle outliers
        }
        const auto [cleaned, report] = remove_outliers(series_of(values));
        const auto expected = oracle::remove_outliers(values);
        REQUIRE(cleaned.values.size() == expected.size());
        CHECK(cleaned.values == expected);
        CHECK(report.retained_count + report.removed_indices.size() == values.size());
        for (double v : cleaned.values) {
            CHECK(v >= report.min_limit);
            CHECK(v <= report.max_limit);
        }
    }
}

TEST_CASE("fit_scaler minmax") {
    const auto p = fit_scaler(series_of({2, 4, 6}), ScalerKind::minmax);
    CHECK(p.data_min == 2.0);
    CHECK(p.data_max == 6.0);
    CHECK_FALSE(p.degenerate);
}

TEST_CASE("fit_scaler robust matches the percentile oracle") {
    const auto p = fit_scaler(series_of({1, 2, 3, 4, 5}), ScalerKind::robust);
    CHECK(p.center == doctest::Approx(3.0));
    CHECK(p.scale == doctest::Approx(2.0));

    std::mt19937_64 rng(11);
    std::normal_distribution<double> val(0.0, 3.0);
    std::vector<double> values(257);
    for (double& v : values) v = val(rng);
    const auto q = fit_scaler(series_of(values), ScalerKind::robust);
    CHECK(q.center == doctest::Approx(oracle::percentile(values, 50.0)).epsilon(1e-12));
    CHECK(q.scale == doctest::Approx(oracle::percentile(values, 75.0) -
                                     oracle::percentile(values, 25.0)).epsilon(1e-12));
}

TEST_CASE("degenerate scalers are flagged and refuse to transform") {
    const auto p = fit_scaler(series_of({7, 7, 7}), ScalerKind::minmax);
    CHECK(p.degenerate);
    CHECK_THROWS_AS(transform(series_of({7, 7, 7}), p), DegenerateScale);

    const auto r = fit_scaler(series_of({1, 1, 1, 1}), ScalerKind::robust);
    CHECK(r.degenerate);
    CHECK_THROWS_AS(transform(series_of({1}), r), DegenerateScale);
}

TEST_CASE("transform examples") {
    const auto mm = fit_scaler(series_of({2, 4, 6}), ScalerKind::minmax);
    CHECK(transform(series_of({2, 4, 6}), mm).values ==
          std::vector<double>{0.0, 0.5, 1.0});

    const auto rb = fit_scaler(series_of({1, 2, 3, 4, 5}), ScalerKind::robust);
    const auto scaled = transform(series_of({1, 2, 3, 4, 5}), rb);
    const std::vector<double> expect{-1.0, -0.5, 0.0, 0.5, 1.0};
    REQUIRE(scaled.values.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(scaled.values[i] == doctest::Approx(expect[i]));
    CHECK(scaled.stage == Stage::scaled);
}

TEST_CASE("round trip inverse_transform(transform(x)) within 1e-12 relative") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> val(5e-6, 1e-6);
    for (ScalerKind kind : {ScalerKind::minmax, ScalerKind::robust}) {
        std::vector<double> values(501);
        for (double& v : values) v = val(rng);
        const auto s = series_of(values);
        const auto p = fit_scaler(s, kind);
        const auto back = inverse_transform(transform(s, p), p);
        for (std::size_t i = 0; i < values.size(); ++i)
            CHECK(back.values[i] == doctest::Approx(values[i]).epsilon(1e-12));
    }
}

TEST_CASE("downsample stride keeps every factor-th element") {
    AxisSeries s = series_of({0, 1, 2, 3, 4, 5});
    s.sample_interval_s = 1.0;

    const auto d = downsample(s, 2);
    CHECK(d.values == std::vector<double>{0, 2, 4});
    CHECK(d.sample_interval_s == 2.0);
    CHECK(d.stage == Stage::downsampled);

    CHECK(downsample(s, 1).values == s.values);

    AxisSeries big;
    big.values.assign(86400, 1.0);
    CHECK(downsample(big, 10).values.size() == 8640);

    // ceil rule on ragged lengths
    CHECK(downsample(series_of({1, 2, 3, 4, 5, 6, 7}), 3).values.size() == 3);
}

TEST_CASE("downsample mean averages blocks") {
    const auto d = downsample(series_of({0, 1, 2, 3, 4}), 2, DownsampleMode::mean);
    CHECK(d.values == std::vector<double>{0.5, 2.5, 4.0});
}

TEST_CASE("split is contiguous with a floor rule") {
    AxisSeries s;
    s.values.resize(100);
    auto [train, test] = split(s, {0.70});
    CHECK(train.values.size() == 70);
    CHECK(test.values.size() == 30);

    s.values.resize(10);
    std::tie(train, test) = split(s, {0.70});
    CHECK(train.values.size() == 7);
    CHECK(test.values.size() == 3);

    s.values.resize(8548);
    std::tie(train, test) = split(s, {0.70});
    CHECK(train.values.size() == 5983);
    CHECK(test.values.size() == 2565);

    s.values.resize(1);
    CHECK_THROWS_AS(split(s, {0.70}), TooShort);

    // order is preserved
    AxisSeries t = series_of({10, 20, 30, 40});
    auto [head, tail] = split(t, {0.70});
    CHECK(head.values == std::vector<double>{10, 20});
    CHECK(tail.values == std::vector<double>{30, 40});
}

TEST_CASE("create_dataset windows the series") {
    const auto ds = create_dataset(series_of({10, 20, 30, 40, 50}), 2);
    REQUIRE(ds.n_pairs == 3);
    CHECK(std::vector<double>(ds.row(0).begin(), ds.row(0).end()) ==
          std::vector<double>{10, 20});
    CHECK(std::vector<double>(ds.row(1).begin(), ds.row(1).end()) ==
          std::vector<double>{20, 30});
    CHECK(std::vector<double>(ds.row(2).begin(), ds.row(2).end()) ==
          std::vector<double>{30, 40});
    CHECK(ds.y == std::vector<double>{30, 40, 50});
}

TEST_CASE("create_dataset boundaries") {
    AxisSeries s;
    s.values.resize(15);
    CHECK(create_dataset(s, 15).n_pairs == 0);
    s.values.resize(16);
    CHECK(create_dataset(s, 15).n_pairs == 1);
}

TEST_CASE("windowing invariant X[i][j] == source[i+j] on random series") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> len_dist(1, 120);
    std::uniform_int_distribution<std::size_t> lb_dist(1, 20);

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> values(len_dist(rng));
        for (double& v : values) v = val(rng);
        const std::size_t look_back = lb_dist(rng);
        const auto ds = create_dataset(series_of(values), look_back);
        const std::size_t expect_pairs =
            values.size() > look_back ? values.size() - look_back : 0;
        REQUIRE(ds.n_pairs == expect_pairs);
        for (std::size_t i = 0; i < ds.n_pairs; ++i) {
            for (std::size_t j = 0; j < look_back; ++j)
                CHECK(ds.row(i)[j] == values[i + j]);
            CHECK(ds.y[i] == values[i + look_back]);
        }
    }
}

TEST_CASE("empty inputs are rejected") {
    AxisSeries empty;
    CHECK_THROWS_AS(remove_outliers(empty), EmptyInput);
    CHECK_THROWS_AS(fit_scaler(empty, ScalerKind::minmax), EmptyInput);
}
