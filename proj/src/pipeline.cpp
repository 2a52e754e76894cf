#include "gracefill/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gracefill/csv.hpp"
#include "gracefill/errors.hpp"
#include "gracefill/rng.hpp"

namespace gracefill {

using nlohmann::json;

// ============================================================
// IniFile
// ============================================================

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

IniFile IniFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path.string());
}

IniFile IniFile::parse_text(const std::string& text, const std::string& origin) {
    IniFile ini;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw DataError(origin + ":" + std::to_string(line_no) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError(origin + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw DataError(origin + ":" + std::to_string(line_no) + ": empty key");
        ini.sections_[section][key] = value;
    }
    return ini;
}

std::optional<std::string> IniFile::get(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end()) return std::nullopt;
    const auto it = sec->second.find(key);
    if (it == sec->second.end()) return std::nullopt;
    return it->second;
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    return get(section, key).value_or(fallback);
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw DataError("config key " + section + "." + key + ": bad number '" + *v + "'");
    }
}

std::int64_t IniFile::get_int(const std::string& section, const std::string& key,
                              std::int64_t fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return i;
    } catch (...) {
        throw DataError("config key " + section + "." + key + ": bad integer '" + *v + "'");
    }
}

// ============================================================
// Config parsing
// ============================================================

const char* to_string(PipelineStep step) {
    switch (step) {
        case PipelineStep::clean: return "clean";
        case PipelineStep::scale: return "scale";
        default: return "downsample";
    }
}

std::vector<PipelineStep> parse_order(const std::string& text) {
    std::vector<PipelineStep> order;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item == "clean")
            order.push_back(PipelineStep::clean);
        else if (item == "scale")
            order.push_back(PipelineStep::scale);
        else if (item == "downsample")
            order.push_back(PipelineStep::downsample);
        else
            throw DataError("unknown pipeline step '" + item + "'");
    }
    if (order.size() != 3)
        throw DataError("order must name clean, scale and downsample exactly once");
    for (PipelineStep want :
         {PipelineStep::clean, PipelineStep::scale, PipelineStep::downsample}) {
        if (std::count(order.begin(), order.end(), want) != 1)
            throw DataError("order must name clean, scale and downsample exactly once");
    }
    return order;
}

std::vector<Axis> parse_axes(const std::string& text) {
    std::vector<Axis> axes;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.size() != 1) throw DataError("bad axis '" + item + "'");
        const Axis a = axis_from_char(item[0]);
        if (std::find(axes.begin(), axes.end(), a) != axes.end())
            throw DataError("duplicate axis '" + item + "'");
        axes.push_back(a);
    }
    if (axes.empty()) throw DataError("axis list is empty");
    return axes;
}

PipelineConfig PipelineConfig::from_ini(const IniFile& ini) {
    PipelineConfig cfg;

    cfg.file_a = ini.get_or("io", "file_a", "");
    cfg.file_b = ini.get_or("io", "file_b", "");
    cfg.out_dir = ini.get_or("io", "out_dir", cfg.out_dir.string());
    cfg.jobs = static_cast<std::size_t>(ini.get_int("io", "jobs", 1));

    if (const auto axes = ini.get("io", "axes")) cfg.axes = parse_axes(*axes);

    cfg.schema.header_terminator =
        ini.get_or("ingest", "header_terminator", cfg.schema.header_terminator);
    cfg.schema.time_col = static_cast<int>(ini.get_int("ingest", "time_col", cfg.schema.time_col));
    cfg.schema.sat_col = static_cast<int>(ini.get_int("ingest", "sat_col", cfg.schema.sat_col));
    cfg.schema.acc_x_col =
        static_cast<int>(ini.get_int("ingest", "acc_x_col", cfg.schema.acc_x_col));
    cfg.schema.acc_y_col =
        static_cast<int>(ini.get_int("ingest", "acc_y_col", cfg.schema.acc_y_col));
    cfg.schema.acc_z_col =
        static_cast<int>(ini.get_int("ingest", "acc_z_col", cfg.schema.acc_z_col));
    cfg.schema.qual_col = static_cast<int>(ini.get_int("ingest", "qual_col", cfg.schema.qual_col));

    if (const auto order = ini.get("preprocess", "order"))
        cfg.preprocess.order = parse_order(*order);
    cfg.preprocess.scaler = scaler_kind_from_string(ini.get_or("preprocess", "scaler", "minmax"));
    cfg.preprocess.downsample_factor = static_cast<std::size_t>(
        ini.get_int("preprocess", "downsample_factor",
                    static_cast<std::int64_t>(cfg.preprocess.downsample_factor)));
    const std::string mode = ini.get_or("preprocess", "downsample_mode", "stride");
    if (mode == "stride")
        cfg.preprocess.downsample_mode = DownsampleMode::stride;
    else if (mode == "mean")
        cfg.preprocess.downsample_mode = DownsampleMode::mean;
    else
        throw DataError("unknown downsample_mode '" + mode + "'");
    cfg.preprocess.split_spec.train_fraction =
        ini.get_double("preprocess", "train_fraction", cfg.preprocess.split_spec.train_fraction);

    TrainConfig& t = cfg.train;
    t.look_back = static_cast<std::size_t>(
        ini.get_int("train", "look_back", static_cast<std::int64_t>(t.look_back)));
    t.epochs = static_cast<std::size_t>(
        ini.get_int("train", "epochs", static_cast<std::int64_t>(t.epochs)));
    t.batch_size = static_cast<std::size_t>(
        ini.get_int("train", "batch_size", static_cast<std::int64_t>(t.batch_size)));
    t.learning_rate = ini.get_double("train", "learning_rate", t.learning_rate);
    t.validation_fraction = ini.get_double("train", "validation_fraction", t.validation_fraction);
    t.adam_beta1 = ini.get_double("train", "adam_beta1", t.adam_beta1);
    t.adam_beta2 = ini.get_double("train", "adam_beta2", t.adam_beta2);
    t.adam_epsilon = ini.get_double("train", "adam_epsilon", t.adam_epsilon);
    t.rng_seed = static_cast<std::uint64_t>(
        ini.get_int("train", "seed", static_cast<std::int64_t>(t.rng_seed)));
    t.input_layout = input_layout_from_string(
        ini.get_or("train", "input_layout", to_string(t.input_layout)));

    cfg.forecast_steps = static_cast<std::size_t>(
        ini.get_int("forecast", "steps", static_cast<std::int64_t>(cfg.forecast_steps)));

    return cfg;
}

// ============================================================
// Preprocess orchestration
// ============================================================

std::string axis_file_tag(SatId sat, Axis axis) {
    return std::string(1, to_char(sat)) + "_" + to_char(axis);
}

std::uint64_t axis_seed(std::uint64_t base_seed, SatId sat, Axis axis) {
    const std::uint64_t combo =
        static_cast<std::uint64_t>(sat) * 3 + static_cast<std::uint64_t>(axis);
    return derive_seed(base_seed, combo);
}

AxisArtifacts preprocess_axis(const AxisSeries& raw, const PreprocessConfig& config) {
    AxisArtifacts art;
    art.sat_id = raw.sat_id;
    art.axis = raw.axis;
    art.raw_count = raw.values.size();

    AxisSeries current = raw;
    bool scaled = false;
    for (PipelineStep step : config.order) {
        switch (step) {
            case PipelineStep::clean: {
                auto [cleaned, report] = remove_outliers(current);
                current = std::move(cleaned);
                art.outlier_report = report;
                break;
            }
            case PipelineStep::scale: {
                art.scaler = fit_scaler(current, config.scaler);
                current = transform(current, art.scaler);
                scaled = true;
                break;
            }
            case PipelineStep::downsample:
                current = downsample(current, config.downsample_factor, config.downsample_mode);
                break;
        }
        art.staged.emplace_back(current.stage, current.values);
    }
    if (!scaled) throw DataError("pipeline order must include the scale step");

    art.final_series = current;
    auto [train_s, test_s] = split(current, config.split_spec);
    art.train_series = std::move(train_s);
    art.test_series = std::move(test_s);
    return art;
}

void write_preprocess_artifacts(const AxisArtifacts& art, const PreprocessConfig& config,
                                const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    const std::string tag = axis_file_tag(art.sat_id, art.axis);

    // One staged CSV per applied step, named by the stage it produced.
    for (const auto& [stage, values] : art.staged)
        write_series_csv(values, dir / (tag + "_" + to_string(stage) + ".csv"));

    write_series_csv(art.final_series.values, dir / (tag + "_final.csv"));
    write_series_csv(art.train_series.values, dir / (tag + "_train.csv"));
    write_series_csv(art.test_series.values, dir / (tag + "_test.csv"));

    json meta;
    meta["satellite"] = std::string(1, to_char(art.sat_id));
    meta["axis"] = std::string(1, to_char(art.axis));
    json order = json::array();
    for (PipelineStep s : config.order) order.push_back(to_string(s));
    meta["order"] = order;
    meta["downsample_factor"] = config.downsample_factor;
    meta["downsample_mode"] =
        config.downsample_mode == DownsampleMode::stride ? "stride" : "mean";
    meta["train_fraction"] = config.split_spec.train_fraction;
    meta["sample_interval_s"] = art.final_series.sample_interval_s;

    meta["scaler"] = {{"kind", to_string(art.scaler.kind)},
                      {"data_min", art.scaler.data_min},
                      {"data_max", art.scaler.data_max},
                      {"center", art.scaler.center},
                      {"scale", art.scaler.scale},
                      {"degenerate", art.scaler.degenerate}};
    meta["outliers"] = {{"q1", art.outlier_report.q1},
                        {"q3", art.outlier_report.q3},
                        {"iqr", art.outlier_report.iqr},
                        {"min_limit", art.outlier_report.min_limit},
                        {"max_limit", art.outlier_report.max_limit},
                        {"removed", art.outlier_report.removed_indices.size()},
                        {"retained", art.outlier_report.retained_count}};

    json counts;
    counts["raw"] = art.raw_count;
    json stages = json::array();
    for (const auto& [stage, values] : art.staged)
        stages.push_back({{"stage", to_string(stage)}, {"count", values.size()}});
    counts["stages"] = stages;
    counts["final"] = art.final_series.values.size();
    counts["train"] = art.train_series.values.size();
    counts["test"] = art.test_series.values.size();
    meta["counts"] = counts;

    std::ofstream out(dir / (tag + "_preprocess.json"));
    if (!out) throw IoError("cannot write preprocess metadata for " + tag);
    out << meta.dump(2) << '\n';
}

AxisArtifacts load_preprocess_artifacts(SatId sat, Axis axis, const std::filesystem::path& dir) {
    const std::string tag = axis_file_tag(sat, axis);
    const auto meta_path = dir / (tag + "_preprocess.json");
    std::ifstream in(meta_path);
    if (!in) throw IoError("cannot open " + meta_path.string());
    json meta;
    try {
        in >> meta;
    } catch (const json::exception& e) {
        throw DataError("bad preprocess metadata " + meta_path.string() + ": " + e.what());
    }

    AxisArtifacts art;
    art.sat_id = sat;
    art.axis = axis;

    try {
        const auto& scaler = meta.at("scaler");
        art.scaler.kind = scaler_kind_from_string(scaler.at("kind").get<std::string>());
        art.scaler.data_min = scaler.at("data_min").get<double>();
        art.scaler.data_max = scaler.at("data_max").get<double>();
        art.scaler.center = scaler.at("center").get<double>();
        art.scaler.scale = scaler.at("scale").get<double>();
        art.scaler.degenerate = scaler.at("degenerate").get<bool>();

        const auto& outliers = meta.at("outliers");
        art.outlier_report.q1 = outliers.at("q1").get<double>();
        art.outlier_report.q3 = outliers.at("q3").get<double>();
        art.outlier_report.iqr = outliers.at("iqr").get<double>();
        art.outlier_report.min_limit = outliers.at("min_limit").get<double>();
        art.outlier_report.max_limit = outliers.at("max_limit").get<double>();
        art.outlier_report.retained_count = outliers.at("retained").get<std::size_t>();

        art.raw_count = meta.at("counts").at("raw").get<std::size_t>();
    } catch (const json::exception& e) {
        throw DataError("bad preprocess metadata " + meta_path.string() + ": " + e.what());
    }

    const double interval = meta.value("sample_interval_s", 1.0);
    auto load_series = [&](const std::string& name) {
        AxisSeries s;
        s.sat_id = sat;
        s.axis = axis;
        s.stage = Stage::scaled;
        s.sample_interval_s = interval;
        s.values = read_series_csv(dir / (tag + "_" + name + ".csv"));
        return s;
    };
    art.final_series = load_series("final");
    art.train_series = load_series("train");
    art.test_series = load_series("test");
    return art;
}

// ============================================================
// Full per-axis run
// ============================================================

AxisRunResult run_axis(const DailyAccFile& day, Axis axis, const PipelineConfig& config) {
    const AxisSeries raw = extract_axis(day, axis);
    AxisArtifacts art = preprocess_axis(raw, config.preprocess);
    write_preprocess_artifacts(art, config.preprocess, config.out_dir);

    const std::string tag = axis_file_tag(art.sat_id, art.axis);

    TrainConfig train_cfg = config.train;
    train_cfg.rng_seed = axis_seed(config.train.rng_seed, art.sat_id, art.axis);

    const WindowedDataset train_ds =
        create_dataset(art.train_series, train_cfg.look_back, DatasetOrigin::train);
    const WindowedDataset test_ds =
        create_dataset(art.test_series, train_cfg.look_back, DatasetOrigin::test);

    auto [params, history] = fit(train_ds, train_cfg);
    save_checkpoint({train_cfg, params}, config.out_dir / (tag + "_model.ckpt"));
    write_history_csv(history, config.out_dir / (tag + "_history.csv"));

    AxisRunResult result;
    result.report = evaluate(params, train_ds, test_ds, art.scaler);
    result.report.sat_id = art.sat_id;
    result.report.axis = art.axis;
    result.report.retained_count = art.outlier_report.retained_count;
    result.report.history = std::move(history);

    if (config.forecast_steps > 0) {
        std::vector<double> seed(art.final_series.values.end() -
                                     static_cast<std::ptrdiff_t>(train_cfg.look_back),
                                 art.final_series.values.end());
        result.forecast =
            recursive_forecast(params, std::move(seed), config.forecast_steps, art.scaler);
        write_series_csv(result.forecast.predicted, config.out_dir / (tag + "_forecast.csv"));
    }
    return result;
}

std::vector<EvalReport> run_all(const PipelineConfig& config) {
    struct Job {
        const std::filesystem::path* file;
        Axis axis;
    };
    std::vector<Job> jobs;
    for (const auto* file : {&config.file_a, &config.file_b}) {
        if (file->empty()) continue;
        for (Axis axis : config.axes) jobs.push_back({file, axis});
    }
    if (jobs.empty()) throw DataError("no input files configured");

    // Parse each day file once.
    std::map<const std::filesystem::path*, DailyAccFile> days;
    for (const auto& job : jobs)
        if (!days.count(job.file)) days.emplace(job.file, parse_acc1b(*job.file, config.schema));

    std::vector<AxisRunResult> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, jobs.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                results[i] = run_axis(days.at(jobs[i].file), jobs[i].axis, config);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < jobs.size(); ++i)
        if (!errors[i].empty()) throw DataError(errors[i]);

    std::vector<EvalReport> reports;
    reports.reserve(results.size());
    for (auto& r : results) reports.push_back(std::move(r.report));
    emit_report(reports, config.out_dir);
    return reports;
}

}  // namespace gracefill
