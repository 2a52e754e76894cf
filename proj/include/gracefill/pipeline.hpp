#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gracefill/acc_ingest.hpp"
#include "gracefill/forecast.hpp"
#include "gracefill/preprocess.hpp"
#include "gracefill/train.hpp"

namespace gracefill {

/// Minimal INI reader: `key = value` lines grouped under `[section]`
/// headers; `#` and `;` start comments. Keys before any header live in
/// the "" section.
class IniFile {
public:
    static IniFile parse_file(const std::filesystem::path& path);
    static IniFile parse_text(const std::string& text, const std::string& origin);

    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

enum class PipelineStep : std::uint8_t { clean, scale, downsample };

const char* to_string(PipelineStep step);

/// Parse an order string like "clean,scale,downsample". The result must
/// be a permutation of the three steps.
std::vector<PipelineStep> parse_order(const std::string& text);

struct PreprocessConfig {
    std::vector<PipelineStep> order{PipelineStep::clean, PipelineStep::scale,
                                    PipelineStep::downsample};
    ScalerKind scaler = ScalerKind::minmax;
    std::size_t downsample_factor = 10;
    DownsampleMode downsample_mode = DownsampleMode::stride;
    SplitSpec split_spec;
};

/// Everything one `run-all` needs; individual subcommands use subsets.
struct PipelineConfig {
    std::filesystem::path file_a;
    std::filesystem::path file_b;
    std::vector<Axis> axes{Axis::x, Axis::y, Axis::z};
    RecordSchema schema;
    PreprocessConfig preprocess;
    TrainConfig train;
    std::size_t forecast_steps = 360;
    std::filesystem::path out_dir = "out";
    std::size_t jobs = 1;

    static PipelineConfig from_ini(const IniFile& ini);
};

std::vector<Axis> parse_axes(const std::string& text);

/// Per-axis preprocessing products. `train_series`/`test_series` hold the
/// scaled values that feed windowing.
struct AxisArtifacts {
    SatId sat_id = SatId::A;
    Axis axis = Axis::x;
    AxisSeries final_series;
    AxisSeries train_series;
    AxisSeries test_series;
    OutlierReport outlier_report;
    ScalerParams scaler;
    std::size_t raw_count = 0;
    std::vector<std::pair<Stage, std::vector<double>>> staged;  // snapshot after each step
};

/// Run the configured preprocessing chain on one raw axis.
AxisArtifacts preprocess_axis(const AxisSeries& raw, const PreprocessConfig& config);

/// Stage files under `dir` for one satellite/axis: staged series CSVs,
/// split CSVs and a JSON metadata sidecar, so later stages can run in
/// isolation.
void write_preprocess_artifacts(const AxisArtifacts& artifacts, const PreprocessConfig& config,
                                const std::filesystem::path& dir);
AxisArtifacts load_preprocess_artifacts(SatId sat, Axis axis, const std::filesystem::path& dir);

std::string axis_file_tag(SatId sat, Axis axis);

/// Seed for one satellite/axis training stream, derived from the base
/// config seed so parallel runs remain reproducible.
std::uint64_t axis_seed(std::uint64_t base_seed, SatId sat, Axis axis);

struct AxisRunResult {
    EvalReport report;
    ForecastResult forecast;
};

/// preprocess + train + evaluate (+ forecast) for one satellite/axis,
/// writing every stage artifact under config.out_dir.
AxisRunResult run_axis(const DailyAccFile& day, Axis axis, const PipelineConfig& config);

/// Full pipeline over both satellites and the configured axes. Axis jobs
/// may run in parallel (`config.jobs`); outputs are identical either way.
std::vector<EvalReport> run_all(const PipelineConfig& config);

}  // namespace gracefill
