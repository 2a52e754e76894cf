#include "gracefill/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gracefill/errors.hpp"

namespace gracefill {

double percentile(std::span<const double> values, double p) {
    if (values.empty()) throw EmptyInput("percentile");
    const std::size_t n = values.size();
    if (n == 1) return values[0];

    const double pos = p / 100.0 * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);

    // Selection instead of a full sort: nth_element for the lower order
    // statistic, then the next one is the minimum of the upper partition.
    std::vector<double> work(values.begin(), values.end());
    auto nth = work.begin() + static_cast<std::ptrdiff_t>(lo);
    std::nth_element(work.begin(), nth, work.end());
    const double v_lo = *nth;
    if (frac == 0.0 || lo + 1 >= n) return v_lo;
    const double v_hi = *std::min_element(nth + 1, work.end());
    return v_lo + (v_hi - v_lo) * frac;
}

std::pair<AxisSeries, OutlierReport> remove_outliers(const AxisSeries& series) {
    if (series.values.empty()) throw EmptyInput("remove_outliers");

    OutlierReport report;
    report.q1 = percentile(series.values, 25.0);
    report.q3 = percentile(series.values, 75.0);
    report.iqr = report.q3 - report.q1;
    report.max_limit = report.q3 + 1.5 * report.iqr;
    report.min_limit = report.q1 - 1.5 * report.iqr;

    AxisSeries out = series;
    out.values.clear();
    out.values.reserve(series.values.size());
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        const double v = series.values[i];
        if (v > report.max_limit || v < report.min_limit)
            report.removed_indices.push_back(i);
        else
            out.values.push_back(v);
    }
    report.retained_count = out.values.size();
    out.stage = Stage::cleaned;
    out.provenance.push_back(Stage::cleaned);
    return {std::move(out), report};
}

const char* to_string(ScalerKind kind) {
    return kind == ScalerKind::minmax ? "minmax" : "robust";
}

ScalerKind scaler_kind_from_string(const std::string& s) {
    if (s == "minmax") return ScalerKind::minmax;
    if (s == "robust") return ScalerKind::robust;
    throw std::invalid_argument("unknown scaler kind: " + s);
}

double ScalerParams::forward(double v) const {
    if (kind == ScalerKind::minmax) return (v - data_min) / (data_max - data_min);
    return (v - center) / scale;
}

double ScalerParams::inverse(double v) const {
    if (kind == ScalerKind::minmax) return v * (data_max - data_min) + data_min;
    return v * scale + center;
}

double ScalerParams::span() const {
    return kind == ScalerKind::minmax ? data_max - data_min : scale;
}

ScalerParams fit_scaler(const AxisSeries& series, ScalerKind kind) {
    if (series.values.empty()) throw EmptyInput("fit_scaler");
    ScalerParams params;
    params.kind = kind;
    if (kind == ScalerKind::minmax) {
        auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
        params.data_min = *lo;
        params.data_max = *hi;
        params.degenerate = (params.data_max == params.data_min);
    } else {
        params.center = percentile(series.values, 50.0);
        params.scale = percentile(series.values, 75.0) - percentile(series.values, 25.0);
        params.degenerate = (params.scale == 0.0);
    }
    return params;
}

namespace {

AxisSeries apply_map(const AxisSeries& series, const ScalerParams& params, bool forward) {
    if (params.degenerate)
        throw DegenerateScale(params.kind == ScalerKind::minmax ? "max equals min"
                                                                : "zero IQR");
    AxisSeries out = series;
    for (double& v : out.values) v = forward ? params.forward(v) : params.inverse(v);
    if (forward) {
        out.stage = Stage::scaled;
        out.provenance.push_back(Stage::scaled);
    }
    return out;
}

}  // namespace

AxisSeries transform(const AxisSeries& series, const ScalerParams& params) {
    return apply_map(series, params, true);
}

AxisSeries inverse_transform(const AxisSeries& series, const ScalerParams& params) {
    return apply_map(series, params, false);
}

AxisSeries downsample(const AxisSeries& series, std::size_t factor, DownsampleMode mode) {
    if (factor == 0) throw std::invalid_argument("downsample factor must be >= 1");
    AxisSeries out = series;
    if (factor > 1) {
        out.values.clear();
        const std::size_t n = series.values.size();
        out.values.reserve((n + factor - 1) / factor);
        if (mode == DownsampleMode::stride) {
            for (std::size_t i = 0; i < n; i += factor) out.values.push_back(series.values[i]);
        } else {
            for (std::size_t i = 0; i < n; i += factor) {
                const std::size_t end = std::min(i + factor, n);
                double sum = 0.0;
                for (std::size_t j = i; j < end; ++j) sum += series.values[j];
                out.values.push_back(sum / static_cast<double>(end - i));
            }
        }
        out.sample_interval_s = series.sample_interval_s * static_cast<double>(factor);
    }
    out.stage = Stage::downsampled;
    out.provenance.push_back(Stage::downsampled);
    return out;
}

std::pair<AxisSeries, AxisSeries> split(const AxisSeries& series, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::invalid_argument("train_fraction must be in (0,1)");
    const std::size_t n = series.values.size();
    if (n < 2) throw TooShort(n);
    const auto cut = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(n)));

    AxisSeries train = series;
    AxisSeries test = series;
    train.values.assign(series.values.begin(), series.values.begin() + cut);
    test.values.assign(series.values.begin() + cut, series.values.end());
    return {std::move(train), std::move(test)};
}

WindowedDataset create_dataset(const AxisSeries& series, std::size_t look_back,
                               DatasetOrigin origin) {
    if (look_back == 0) throw std::invalid_argument("look_back must be >= 1");
    WindowedDataset ds;
    ds.look_back = look_back;
    ds.origin = origin;
    const std::size_t n = series.values.size();
    ds.n_pairs = n > look_back ? n - look_back : 0;
    ds.x.reserve(ds.n_pairs * look_back);
    ds.y.reserve(ds.n_pairs);
    for (std::size_t i = 0; i < ds.n_pairs; ++i) {
        for (std::size_t j = 0; j < look_back; ++j) ds.x.push_back(series.values[i + j]);
        ds.y.push_back(series.values[i + look_back]);
    }
    return ds;
}

}  // namespace gracefill
