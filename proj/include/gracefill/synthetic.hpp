#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "gracefill/types.hpp"

namespace gracefill {

/// Recipe for one synthetic axis: a biased two-harmonic orbital signal
/// with white noise and sparse large spikes.
struct SynthAxisSpec {
    double bias = 0.0;             // m/s^2
    double amp_orbital = 1.5e-6;   // primary harmonic amplitude
    double amp_second = 0.3e-6;    // second harmonic amplitude
    double phase = 0.0;            // radians
    double noise_sd = 0.1e-6;      // white noise
    double outlier_prob = 0.01;    // per-sample spike probability
    double outlier_magnitude = 25e-6;  // spike scale, far outside the IQR fence
};

/// One satellite-day of synthetic 1 Hz data in the day-file layout.
struct SynthDaySpec {
    SatId sat = SatId::A;
    Date date{2005, 5, 30};
    std::uint64_t seed = 1;
    std::size_t n_samples = 86400;
    double orbital_period_s = 5670.0;
    std::array<SynthAxisSpec, 3> axes;
};

/// Tuned per-satellite defaults whose expected post-cleaning counts match
/// the reference 2005-05-30 processing.
SynthDaySpec reference_day_spec(SatId sat, std::uint64_t seed);

DailyAccFile make_synthetic_day(const SynthDaySpec& spec);

/// Write a full ASCII day file: header terminated by END OF HEADER, then
/// records `gps_time sat lin_x lin_y lin_z ang_x ang_y ang_z res_x res_y
/// res_z qualflg` (one per second).
void write_synthetic_acc1b(const SynthDaySpec& spec, const std::filesystem::path& path);

}  // namespace gracefill
