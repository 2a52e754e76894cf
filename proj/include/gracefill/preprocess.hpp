#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gracefill/types.hpp"

namespace gracefill {

/// Percentile with linear interpolation between order statistics:
/// the value at sorted position p*(n-1)/100. p in [0,100].
double percentile(std::span<const double> values, double p);

struct OutlierReport {
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double min_limit = 0.0;
    double max_limit = 0.0;
    std::vector<std::size_t> removed_indices;
    std::size_t retained_count = 0;
};

/// Drop every point strictly outside [q1 - 1.5*IQR, q3 + 1.5*IQR],
/// order preserved. Points exactly on a limit are retained.
std::pair<AxisSeries, OutlierReport> remove_outliers(const AxisSeries& series);

enum class ScalerKind : std::uint8_t { minmax, robust };

const char* to_string(ScalerKind kind);
ScalerKind scaler_kind_from_string(const std::string& s);

/// Fitted normalization parameters. minmax maps [data_min, data_max]
/// onto [0,1]; robust subtracts the median and divides by the IQR.
struct ScalerParams {
    ScalerKind kind = ScalerKind::minmax;
    double data_min = 0.0;
    double data_max = 0.0;
    double center = 0.0;
    double scale = 0.0;
    bool degenerate = false;  // zero range / zero IQR

    double forward(double v) const;
    double inverse(double v) const;
    /// Width of the affine map; original-unit error = scaled error * span.
    double span() const;
};

ScalerParams fit_scaler(const AxisSeries& series, ScalerKind kind);

/// Throws DegenerateScale when the fitted parameters cannot be inverted.
AxisSeries transform(const AxisSeries& series, const ScalerParams& params);
AxisSeries inverse_transform(const AxisSeries& series, const ScalerParams& params);

enum class DownsampleMode : std::uint8_t { stride, mean };

/// Keep every `factor`-th element (stride) or average consecutive blocks
/// (mean). Output length is ceil(n / factor); the sample interval scales
/// by `factor`.
AxisSeries downsample(const AxisSeries& series, std::size_t factor = 10,
                      DownsampleMode mode = DownsampleMode::stride);

struct SplitSpec {
    double train_fraction = 0.70;
};

/// Contiguous head/tail split at floor(train_fraction * n). No shuffle.
std::pair<AxisSeries, AxisSeries> split(const AxisSeries& series, const SplitSpec& spec = {});

enum class DatasetOrigin : std::uint8_t { train, test };

/// Sliding-window supervision pairs: X[i] = source[i .. i+look_back),
/// Y[i] = source[i + look_back]. Row-major X, n_pairs x look_back.
struct WindowedDataset {
    std::size_t look_back = 0;
    std::size_t n_pairs = 0;
    std::vector<double> x;  // row-major, n_pairs * look_back
    std::vector<double> y;
    DatasetOrigin origin = DatasetOrigin::train;

    std::span<const double> row(std::size_t i) const {
        return {x.data() + i * look_back, look_back};
    }
};

WindowedDataset create_dataset(const AxisSeries& series, std::size_t look_back = 15,
                               DatasetOrigin origin = DatasetOrigin::train);

}  // namespace gracefill
