#include "gracefill/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gracefill/csv.hpp"
#include "gracefill/errors.hpp"
#include "gracefill/svg.hpp"

namespace gracefill {

namespace {

Matrix to_matrix(const WindowedDataset& ds) {
    Matrix x;
    x.rows = ds.n_pairs;
    x.cols = ds.look_back;
    x.data = ds.x;
    return x;
}

std::vector<double> inverse_all(std::vector<double> values, const ScalerParams& scaler) {
    for (double& v : values) v = scaler.inverse(v);
    return values;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string axis_tag(const EvalReport& r) {
    return std::string(1, to_char(r.sat_id)) + "_" + to_char(r.axis);
}

std::string axis_title(const EvalReport& r) {
    return std::string("GRACE ") + to_char(r.sat_id) + ", " + to_char(r.axis) + " axis";
}

}  // namespace

double rmse(std::span<const double> pred, std::span<const double> truth) {
    return std::sqrt(mse(pred, truth));
}

EvalReport evaluate(const ModelParams& params, const WindowedDataset& train_ds,
                    const WindowedDataset& test_ds, const ScalerParams& scaler) {
    if (scaler.degenerate) throw ScalerMismatch("degenerate scaler cannot be inverted");
    if (train_ds.look_back != params.look_back || test_ds.look_back != params.look_back)
        throw ShapeMismatch("dataset look_back != model look_back");
    if (train_ds.n_pairs == 0 || test_ds.n_pairs == 0)
        throw EmptyInput("evaluate: empty dataset");

    EvalReport report;

    const auto train_pred = inverse_all(predict(params, to_matrix(train_ds)), scaler);
    const auto train_truth = inverse_all(train_ds.y, scaler);
    report.train_rmse = rmse(train_pred, train_truth);

    report.test_pred = inverse_all(predict(params, to_matrix(test_ds)), scaler);
    report.test_truth = inverse_all(test_ds.y, scaler);
    report.test_rmse = rmse(report.test_pred, report.test_truth);

    report.baseline_rmse = persistence_baseline(test_ds, scaler);
    return report;
}

double persistence_baseline(const WindowedDataset& ds, const ScalerParams& scaler) {
    if (ds.n_pairs == 0) throw EmptyInput("persistence_baseline");
    std::vector<double> pred(ds.n_pairs);
    for (std::size_t i = 0; i < ds.n_pairs; ++i)
        pred[i] = scaler.inverse(ds.row(i).back());
    return rmse(pred, inverse_all(ds.y, scaler));
}

ForecastResult recursive_forecast(const ModelParams& params, std::vector<double> seed_window,
                                  std::size_t steps, const ScalerParams& scaler) {
    if (seed_window.size() != params.look_back)
        throw BadWindowLength(seed_window.size(), params.look_back);
    if (scaler.degenerate) throw ScalerMismatch("degenerate scaler cannot be inverted");

    ForecastResult result;
    result.seed_window = seed_window;
    result.steps = steps;
    result.predicted.reserve(steps);

    Matrix window(1, params.look_back);
    std::vector<double> scaled;
    scaled.reserve(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        std::copy(seed_window.begin(), seed_window.end(), window.data.begin());
        const double next = predict(params, window)[0];
        scaled.push_back(next);
        std::rotate(seed_window.begin(), seed_window.begin() + 1, seed_window.end());
        seed_window.back() = next;
    }
    result.predicted = inverse_all(std::move(scaled), scaler);
    return result;
}

std::vector<std::filesystem::path> emit_report(const std::vector<EvalReport>& reports,
                                               const std::filesystem::path& out_dir) {
    if (reports.empty()) throw EmptyInput("emit_report");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> files;

    for (const auto& r : reports) {
        const std::string tag = axis_tag(r);

        const auto history_path = out_dir / (tag + "_history.csv");
        write_history_csv(r.history, history_path);
        files.push_back(history_path);

        const auto pred_path = out_dir / (tag + "_predictions.csv");
        {
            std::ofstream out(pred_path);
            if (!out) throw IoError("cannot write " + pred_path.string());
            out << "index,truth,prediction\n";
            for (std::size_t i = 0; i < r.test_pred.size(); ++i)
                out << i << ',' << format_g17(r.test_truth[i]) << ','
                    << format_g17(r.test_pred[i]) << '\n';
        }
        files.push_back(pred_path);

        const auto loss_path = out_dir / (tag + "_loss.svg");
        write_text_file(loss_path,
                        svg::line_chart(axis_title(r) + ": training loss", "epoch", "MSE (scaled)",
                                        {{"loss", r.history.loss}, {"val_loss", r.history.val_loss}},
                                        /*log_y=*/true));
        files.push_back(loss_path);

        const auto overlay_path = out_dir / (tag + "_prediction.svg");
        std::vector<double> truth_1e6(r.test_truth), pred_1e6(r.test_pred);
        for (double& v : truth_1e6) v *= 1e6;
        for (double& v : pred_1e6) v *= 1e6;
        write_text_file(overlay_path, svg::line_chart(axis_title(r) + ": test predictions",
                                                      "test pair index", "acceleration (1e-6 m/s^2)",
                                                      {{"truth", truth_1e6},
                                                       {"prediction", pred_1e6}}));
        files.push_back(overlay_path);
    }

    const auto summary_path = out_dir / "rmse_summary.csv";
    {
        std::ofstream out(summary_path);
        if (!out) throw IoError("cannot write " + summary_path.string());
        out << "satellite,axis,split,rmse_1e6\n";
        for (const auto& r : reports) {
            out << to_char(r.sat_id) << ',' << to_char(r.axis) << ",train,"
                << format_g17(r.train_rmse * 1e6) << '\n';
            out << to_char(r.sat_id) << ',' << to_char(r.axis) << ",test,"
                << format_g17(r.test_rmse * 1e6) << '\n';
        }
    }
    files.push_back(summary_path);

    std::vector<svg::BarGroup> groups;
    groups.reserve(reports.size());
    for (const auto& r : reports) {
        groups.push_back({std::string(1, to_char(r.sat_id)) + "/" + to_char(r.axis),
                          {r.train_rmse * 1e6, r.test_rmse * 1e6}});
    }
    const auto bars_path = out_dir / "rmse_bars.svg";
    write_text_file(bars_path, svg::bar_chart("RMSE by satellite and axis", "RMSE (1e-6 m/s^2)",
                                              {"train", "test"}, groups));
    files.push_back(bars_path);

    return files;
}

}  // namespace gracefill
