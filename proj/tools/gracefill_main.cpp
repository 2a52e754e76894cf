#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gracefill/acc_ingest.hpp"
#include "gracefill/checkpoint.hpp"
#include "gracefill/csv.hpp"
#include "gracefill/errors.hpp"
#include "gracefill/forecast.hpp"
#include "gracefill/pipeline.hpp"

namespace fs = std::filesystem;
using namespace gracefill;

namespace {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct CliState {
    std::string config_path;
    PipelineConfig cfg;  // defaults, then config file, then flag overrides
};

void load_config_file(CliState& state) {
    if (!state.config_path.empty())
        state.cfg = PipelineConfig::from_ini(IniFile::parse_file(state.config_path));
}

std::vector<std::pair<SatId, Axis>> discover_axes(const fs::path& dir) {
    std::vector<std::pair<SatId, Axis>> found;
    for (SatId sat : {SatId::A, SatId::B}) {
        for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
            if (fs::exists(dir / (axis_file_tag(sat, axis) + "_preprocess.json")))
                found.emplace_back(sat, axis);
        }
    }
    return found;
}

void print_report_line(const EvalReport& r) {
    std::printf("%c/%c  retained=%zu  train_rmse=%.4g  test_rmse=%.4g  persistence=%.4g  (1e-6 m/s^2)\n",
                to_char(r.sat_id), to_char(r.axis), r.retained_count, r.train_rmse * 1e6,
                r.test_rmse * 1e6, r.baseline_rmse * 1e6);
}

// ---- subcommand bodies ----

int cmd_ingest(const CliState& state, const std::string& input, const std::string& out_csv) {
    const DailyAccFile day = parse_acc1b(input, state.cfg.schema);
    std::printf("parsed %zu samples, satellite %c, date %04d-%02d-%02d\n", day.samples.size(),
                to_char(day.sat_id), day.date.year, day.date.month, day.date.day);
    if (!out_csv.empty()) {
        write_day_csv(day, out_csv);
        std::printf("wrote %s\n", out_csv.c_str());
    }
    return kExitOk;
}

int cmd_preprocess(const CliState& state, const std::string& input) {
    const DailyAccFile day = parse_acc1b(input, state.cfg.schema);
    for (Axis axis : state.cfg.axes) {
        const AxisSeries raw = extract_axis(day, axis);
        const AxisArtifacts art = preprocess_axis(raw, state.cfg.preprocess);
        write_preprocess_artifacts(art, state.cfg.preprocess, state.cfg.out_dir);
        std::printf("%c/%c  raw=%zu  retained=%zu  final=%zu  train=%zu  test=%zu\n",
                    to_char(art.sat_id), to_char(art.axis), art.raw_count,
                    art.outlier_report.retained_count, art.final_series.values.size(),
                    art.train_series.values.size(), art.test_series.values.size());
    }
    std::printf("artifacts under %s\n", state.cfg.out_dir.string().c_str());
    return kExitOk;
}

int cmd_train(const CliState& state, char sat_char, char axis_char) {
    const SatId sat = sat_from_char(sat_char);
    const Axis axis = axis_from_char(axis_char);
    const AxisArtifacts art = load_preprocess_artifacts(sat, axis, state.cfg.out_dir);

    TrainConfig train_cfg = state.cfg.train;
    train_cfg.rng_seed = axis_seed(state.cfg.train.rng_seed, sat, axis);
    const WindowedDataset train_ds =
        create_dataset(art.train_series, train_cfg.look_back, DatasetOrigin::train);

    auto [params, history] = fit(train_ds, train_cfg);

    const std::string tag = axis_file_tag(sat, axis);
    const fs::path ckpt_path = state.cfg.out_dir / (tag + "_model.ckpt");
    save_checkpoint({train_cfg, params}, ckpt_path);
    write_history_csv(history, state.cfg.out_dir / (tag + "_history.csv"));
    std::printf("%c/%c  epochs=%zu  final_loss=%.6g  final_val_loss=%.6g\n", to_char(sat),
                to_char(axis), train_cfg.epochs, history.loss.back(), history.val_loss.back());
    std::printf("checkpoint %s\n", ckpt_path.string().c_str());
    return kExitOk;
}

int cmd_evaluate(const CliState& state, const std::string& sat_filter,
                 const std::string& axis_filter, std::size_t look_back_override) {
    auto targets = discover_axes(state.cfg.out_dir);
    if (!sat_filter.empty()) {
        const SatId want = sat_from_char(sat_filter[0]);
        std::erase_if(targets, [&](const auto& t) { return t.first != want; });
    }
    if (!axis_filter.empty()) {
        const Axis want = axis_from_char(axis_filter[0]);
        std::erase_if(targets, [&](const auto& t) { return t.second != want; });
    }
    if (targets.empty()) throw DataError("no preprocessed axes found in " +
                                         state.cfg.out_dir.string());

    std::vector<EvalReport> reports;
    for (const auto& [sat, axis] : targets) {
        const std::string tag = axis_file_tag(sat, axis);
        const AxisArtifacts art = load_preprocess_artifacts(sat, axis, state.cfg.out_dir);
        const Checkpoint ckpt = load_checkpoint(state.cfg.out_dir / (tag + "_model.ckpt"));
        if (look_back_override != 0 && look_back_override != ckpt.config.look_back)
            throw ShapeMismatch("requested look_back " + std::to_string(look_back_override) +
                                " != checkpoint look_back " +
                                std::to_string(ckpt.config.look_back));

        const WindowedDataset train_ds =
            create_dataset(art.train_series, ckpt.config.look_back, DatasetOrigin::train);
        const WindowedDataset test_ds =
            create_dataset(art.test_series, ckpt.config.look_back, DatasetOrigin::test);

        EvalReport report = evaluate(ckpt.params, train_ds, test_ds, art.scaler);
        report.sat_id = sat;
        report.axis = axis;
        report.retained_count = art.outlier_report.retained_count;
        report.history = read_history_csv(state.cfg.out_dir / (tag + "_history.csv"));
        print_report_line(report);
        reports.push_back(std::move(report));
    }

    const auto files = emit_report(reports, state.cfg.out_dir);
    std::printf("wrote %zu report files under %s\n", files.size(),
                state.cfg.out_dir.string().c_str());
    return kExitOk;
}

int cmd_forecast(const CliState& state, char sat_char, char axis_char, std::size_t steps,
                 std::string out_path) {
    const SatId sat = sat_from_char(sat_char);
    const Axis axis = axis_from_char(axis_char);
    const std::string tag = axis_file_tag(sat, axis);

    const AxisArtifacts art = load_preprocess_artifacts(sat, axis, state.cfg.out_dir);
    const Checkpoint ckpt = load_checkpoint(state.cfg.out_dir / (tag + "_model.ckpt"));

    const auto& series = art.final_series.values;
    if (series.size() < ckpt.config.look_back)
        throw BadWindowLength(series.size(), ckpt.config.look_back);
    std::vector<double> seed(series.end() - static_cast<std::ptrdiff_t>(ckpt.config.look_back),
                             series.end());

    const ForecastResult result = recursive_forecast(ckpt.params, std::move(seed), steps,
                                                     art.scaler);
    if (out_path.empty()) out_path = (state.cfg.out_dir / (tag + "_forecast.csv")).string();
    write_series_csv(result.predicted, out_path);
    std::printf("%c/%c  forecast steps=%zu -> %s\n", to_char(sat), to_char(axis), steps,
                out_path.c_str());
    return kExitOk;
}

int cmd_run_all(const CliState& state) {
    const auto reports = run_all(state.cfg);
    for (const auto& r : reports) print_report_line(r);
    std::printf("outputs under %s\n", state.cfg.out_dir.string().c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRACE accelerometer day-file pipeline: parse, clean, scale, train, "
                 "evaluate and gap-fill per-axis series"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CliState state;

    // Global flags; every one of them overrides its config-file key.
    app.add_option("--config", state.config_path, "INI config file (key = value with sections)")
        ->envname("GRACEFILL_CONFIG");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "base RNG seed (config: train.seed)");
    std::string out_dir_flag;
    auto* out_dir_opt =
        app.add_option("--out-dir", out_dir_flag, "output directory (config: io.out_dir)");
    std::size_t jobs_flag = 1;
    auto* jobs_opt = app.add_option("--jobs", jobs_flag,
                                    "parallel satellite/axis jobs for run-all (config: io.jobs)");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse a day file and optionally dump CSV");
    std::string ingest_input, ingest_csv;
    ingest->add_option("--input", ingest_input, "ASCII day file")->required();
    ingest->add_option("--out-csv", ingest_csv, "normalized CSV dump path");
    std::string terminator_flag;
    auto* term_opt = ingest->add_option("--header-terminator", terminator_flag,
                                        "header terminator line (config: ingest.header_terminator)");

    // preprocess
    auto* preprocess = app.add_subcommand("preprocess", "clean/scale/downsample/split one day file");
    std::string pre_input, pre_order, pre_scaler, pre_axes, pre_mode;
    std::size_t pre_factor = 0;
    double pre_fraction = -1.0;
    preprocess->add_option("--input", pre_input, "ASCII day file")->required();
    auto* order_opt = preprocess->add_option(
        "--order", pre_order, "step order, e.g. clean,scale,downsample (config: preprocess.order)");
    auto* scaler_opt = preprocess->add_option("--scaler", pre_scaler,
                                              "minmax | robust (config: preprocess.scaler)");
    auto* axes_opt =
        preprocess->add_option("--axes", pre_axes, "axes to process, e.g. x,y,z (config: io.axes)");
    auto* factor_opt = preprocess->add_option(
        "--factor", pre_factor, "downsample factor (config: preprocess.downsample_factor)");
    auto* mode_opt = preprocess->add_option(
        "--downsample-mode", pre_mode, "stride | mean (config: preprocess.downsample_mode)");
    auto* fraction_opt = preprocess->add_option(
        "--train-fraction", pre_fraction, "contiguous split fraction (config: preprocess.train_fraction)");

    // train
    auto* train = app.add_subcommand("train", "fit the model for one satellite/axis");
    std::string train_sat, train_axis, train_layout;
    std::size_t train_epochs = 0, train_batch = 0, train_look_back = 0;
    double train_lr = -1.0, train_val_fraction = -1.0;
    train->add_option("--sat", train_sat, "satellite, A or B")->required();
    train->add_option("--axis", train_axis, "axis, x|y|z")->required();
    auto* epochs_opt = train->add_option("--epochs", train_epochs, "config: train.epochs");
    auto* batch_opt = train->add_option("--batch-size", train_batch, "config: train.batch_size");
    auto* lb_opt = train->add_option("--look-back", train_look_back, "config: train.look_back");
    auto* lr_opt = train->add_option("--learning-rate", train_lr, "config: train.learning_rate");
    auto* val_opt = train->add_option("--validation-fraction", train_val_fraction,
                                      "config: train.validation_fraction");
    auto* layout_opt = train->add_option(
        "--input-layout", train_layout,
        "one_step_lookback_features | lookback_steps_one_feature (config: train.input_layout)");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "per-axis RMSE report and plots");
    std::string eval_sat, eval_axis;
    std::size_t eval_look_back = 0;
    evaluate->add_option("--sat", eval_sat, "restrict to one satellite");
    evaluate->add_option("--axis", eval_axis, "restrict to one axis");
    evaluate->add_option("--look-back", eval_look_back,
                         "expected checkpoint look_back; mismatch is an error");

    // forecast
    auto* forecast = app.add_subcommand("forecast", "recursive gap-filling forecast");
    std::string fc_sat, fc_axis, fc_out;
    std::size_t fc_steps = 0;
    forecast->add_option("--sat", fc_sat, "satellite, A or B")->required();
    forecast->add_option("--axis", fc_axis, "axis, x|y|z")->required();
    auto* steps_opt = forecast->add_option("--steps", fc_steps, "config: forecast.steps");
    forecast->add_option("--out", fc_out, "output CSV (default {sat}_{axis}_forecast.csv)");

    // run-all
    auto* run_all_cmd = app.add_subcommand("run-all", "full pipeline for both satellites");
    std::string ra_file_a, ra_file_b;
    auto* file_a_opt = run_all_cmd->add_option("--file-a", ra_file_a,
                                               "satellite A day file (config: io.file_a)");
    auto* file_b_opt = run_all_cmd->add_option("--file-b", ra_file_b,
                                               "satellite B day file (config: io.file_b)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        load_config_file(state);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }

    // Bad option/config values are usage errors, distinct from data errors.
    try {
        if (*seed_opt) state.cfg.train.rng_seed = seed_flag;
        if (*out_dir_opt) state.cfg.out_dir = out_dir_flag;
        if (*jobs_opt) state.cfg.jobs = jobs_flag;
        if (*term_opt) state.cfg.schema.header_terminator = terminator_flag;
        if (*order_opt) state.cfg.preprocess.order = parse_order(pre_order);
        if (*scaler_opt) state.cfg.preprocess.scaler = scaler_kind_from_string(pre_scaler);
        if (*axes_opt) state.cfg.axes = parse_axes(pre_axes);
        if (*factor_opt) {
            if (pre_factor == 0) throw DataError("downsample factor must be >= 1");
            state.cfg.preprocess.downsample_factor = pre_factor;
        }
        if (*mode_opt) {
            if (pre_mode == "stride")
                state.cfg.preprocess.downsample_mode = DownsampleMode::stride;
            else if (pre_mode == "mean")
                state.cfg.preprocess.downsample_mode = DownsampleMode::mean;
            else
                throw DataError("unknown downsample mode '" + pre_mode + "'");
        }
        if (*fraction_opt) {
            if (!(pre_fraction > 0.0 && pre_fraction < 1.0))
                throw DataError("train fraction must be in (0,1)");
            state.cfg.preprocess.split_spec.train_fraction = pre_fraction;
        }
        if (*epochs_opt) state.cfg.train.epochs = train_epochs;
        if (*batch_opt) state.cfg.train.batch_size = train_batch;
        if (*lb_opt) state.cfg.train.look_back = train_look_back;
        if (*lr_opt) state.cfg.train.learning_rate = train_lr;
        if (*val_opt) state.cfg.train.validation_fraction = train_val_fraction;
        if (*layout_opt) state.cfg.train.input_layout = input_layout_from_string(train_layout);
        if (*steps_opt) state.cfg.forecast_steps = fc_steps;
        if (*file_a_opt) state.cfg.file_a = ra_file_a;
        if (*file_b_opt) state.cfg.file_b = ra_file_b;

        state.cfg.train.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        std::error_code ec;
        std::filesystem::create_directories(state.cfg.out_dir, ec);
        if (ec) throw IoError("cannot create " + state.cfg.out_dir.string());

        if (*ingest) return cmd_ingest(state, ingest_input, ingest_csv);
        if (*preprocess) return cmd_preprocess(state, pre_input);
        if (*train) {
            if (train_sat.size() != 1 || train_axis.size() != 1)
                throw DataError("--sat/--axis must be single characters");
            return cmd_train(state, train_sat[0], train_axis[0]);
        }
        if (*evaluate) return cmd_evaluate(state, eval_sat, eval_axis, eval_look_back);
        if (*forecast) {
            if (fc_sat.size() != 1 || fc_axis.size() != 1)
                throw DataError("--sat/--axis must be single characters");
            if (!*steps_opt) fc_steps = state.cfg.forecast_steps;
            return cmd_forecast(state, fc_sat[0], fc_axis[0], fc_steps, fc_out);
        }
        if (*run_all_cmd) return cmd_run_all(state);
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
