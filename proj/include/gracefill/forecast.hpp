#pragma once

#include <filesystem>
#include <vector>

#include "gracefill/checkpoint.hpp"
#include "gracefill/preprocess.hpp"
#include "gracefill/train.hpp"
#include "gracefill/types.hpp"

namespace gracefill {

/// Per-axis evaluation results. RMSE values are in original units
/// (m/s^2); reports display them scaled by 1e6.
struct EvalReport {
    SatId sat_id = SatId::A;
    Axis axis = Axis::x;
    std::size_t retained_count = 0;
    double train_rmse = 0.0;
    double test_rmse = 0.0;
    double baseline_rmse = 0.0;  // persistence, same index set as test_rmse
    TrainHistory history;
    std::vector<double> test_truth;  // original units, test pair order
    std::vector<double> test_pred;   // original units, test pair order
};

/// Root mean square error between two equal-length vectors.
double rmse(std::span<const double> pred, std::span<const double> truth);

/// Predict both datasets, inverse-transform to original units, and fill
/// the RMSE fields plus the test prediction trace. Metadata fields
/// (satellite, axis, retained count, history) are the caller's to set.
EvalReport evaluate(const ModelParams& params, const WindowedDataset& train_ds,
                    const WindowedDataset& test_ds, const ScalerParams& scaler);

/// RMSE, in original units, of the forecaster that predicts each target
/// as the last value of its window.
double persistence_baseline(const WindowedDataset& ds, const ScalerParams& scaler);

struct ForecastResult {
    std::vector<double> seed_window;  // scaled values, length look_back
    std::size_t steps = 0;
    std::vector<double> predicted;  // original units, length steps
};

/// Gap filling by iterated single-step prediction: each scaled output is
/// shifted into the window; the whole trajectory is inverse-transformed
/// at the end. Intermediate values are not clamped.
ForecastResult recursive_forecast(const ModelParams& params, std::vector<double> seed_window,
                                  std::size_t steps, const ScalerParams& scaler);

/// Write the full report file set under `out_dir`:
/// per axis {S}_{a}_history.csv, {S}_{a}_predictions.csv, {S}_{a}_loss.svg,
/// {S}_{a}_prediction.svg, plus rmse_summary.csv and rmse_bars.svg.
/// Returns the created paths in a deterministic order.
std::vector<std::filesystem::path> emit_report(const std::vector<EvalReport>& reports,
                                               const std::filesystem::path& out_dir);

}  // namespace gracefill
