#include "gracefill/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "gracefill/errors.hpp"
#include "gracefill/rng.hpp"

namespace gracefill {

namespace {

// Per-sample values for one axis, spikes included.
std::vector<double> synth_axis(const SynthDaySpec& day, std::size_t axis_idx) {
    const SynthAxisSpec& ax = day.axes[axis_idx];
    std::mt19937_64 rng(derive_seed(day.seed, 100 + axis_idx));
    std::normal_distribution<double> noise(0.0, ax.noise_sd);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const double w = 2.0 * std::numbers::pi / day.orbital_period_s;
    std::vector<double> values(day.n_samples);
    for (std::size_t t = 0; t < day.n_samples; ++t) {
        const double ts = static_cast<double>(t);
        double v = ax.bias + ax.amp_orbital * std::sin(w * ts + ax.phase) +
                   ax.amp_second * std::sin(2.0 * w * ts + 2.3 * ax.phase + 0.7) + noise(rng);
        if (uni(rng) < ax.outlier_prob) {
            const double sign = uni(rng) < 0.5 ? -1.0 : 1.0;
            v += sign * ax.outlier_magnitude * (0.5 + uni(rng));
        }
        values[t] = v;
    }
    return values;
}

}  // namespace

SynthDaySpec reference_day_spec(SatId sat, std::uint64_t seed) {
    SynthDaySpec spec;
    spec.sat = sat;
    spec.seed = seed;

    // Spike rates chosen so the expected retained counts of a 10 s
    // decimated day reproduce the reference 2005-05-30 processing
    // (A: 8548/8618/8608, B: 8545/8634/8613 of 8640).
    if (sat == SatId::A) {
        spec.axes[0] = {1.0e-6, 1.6e-6, 0.35e-6, 0.0, 0.05e-6, 92.0 / 8640.0, 25e-6};
        spec.axes[1] = {-0.8e-6, 1.2e-6, 0.30e-6, 1.1, 0.25e-6, 22.0 / 8640.0, 25e-6};
        spec.axes[2] = {0.5e-6, 1.4e-6, 0.25e-6, 2.3, 0.20e-6, 32.0 / 8640.0, 25e-6};
    } else {
        spec.axes[0] = {0.9e-6, 1.5e-6, 0.30e-6, 0.4, 0.04e-6, 95.0 / 8640.0, 25e-6};
        spec.axes[1] = {-0.7e-6, 1.3e-6, 0.35e-6, 1.6, 0.28e-6, 6.0 / 8640.0, 25e-6};
        spec.axes[2] = {0.6e-6, 1.3e-6, 0.20e-6, 2.9, 0.22e-6, 27.0 / 8640.0, 25e-6};
    }
    return spec;
}

DailyAccFile make_synthetic_day(const SynthDaySpec& spec) {
    if (spec.n_samples == 0) throw EmptyInput("make_synthetic_day");

    DailyAccFile day;
    day.sat_id = spec.sat;
    day.date = spec.date;

    const std::array<std::vector<double>, 3> axes = {synth_axis(spec, 0), synth_axis(spec, 1),
                                                     synth_axis(spec, 2)};
    const GpsSeconds start = gps_seconds_at_midnight(spec.date);

    day.samples.resize(spec.n_samples);
    for (std::size_t t = 0; t < spec.n_samples; ++t) {
        AccSample& s = day.samples[t];
        s.gps_time = start + static_cast<GpsSeconds>(t);
        s.sat_id = spec.sat;
        s.lin_acc = {axes[0][t], axes[1][t], axes[2][t]};
    }
    return day;
}

void write_synthetic_acc1b(const SynthDaySpec& spec, const std::filesystem::path& path) {
    const DailyAccFile day = make_synthetic_day(spec);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());

    char date_buf[16];
    std::snprintf(date_buf, sizeof(date_buf), "%04d-%02d-%02d", spec.date.year, spec.date.month,
                  spec.date.day);

    out << "PRODUCER AGENCY               : synthetic\n";
    out << "PRODUCT                       : accelerometer level-1B (synthetic)\n";
    out << "SATELLITE NAME                : GRACE " << to_char(spec.sat) << "\n";
    out << "TIME EPOCH (GPS TIME)         : 2000-01-01 12:00:00\n";
    out << "TIME FIRST OBS (SEC PAST EPOCH): " << day.samples.front().gps_time << " (" << date_buf
        << " 00:00:00.00)\n";
    out << "NUMBER OF DATA RECORDS        : " << day.samples.size() << "\n";
    out << "END OF HEADER\n";

    char line[256];
    for (const auto& s : day.samples) {
        std::snprintf(line, sizeof(line),
                      "%lld %c %.15e %.15e %.15e %.6e %.6e %.6e %.6e %.6e %.6e 0\n",
                      static_cast<long long>(s.gps_time), to_char(s.sat_id), s.lin_acc[0],
                      s.lin_acc[1], s.lin_acc[2], 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        out << line;
    }
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace gracefill
