#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gracefill {

enum class SatId : std::uint8_t { A, B };
enum class Axis : std::uint8_t { x, y, z };

/// Pipeline stage a series has most recently passed through.
enum class Stage : std::uint8_t { raw, cleaned, scaled, downsampled };

char to_char(SatId sat);
char to_char(Axis axis);
SatId sat_from_char(char c);
Axis axis_from_char(char c);
const char* to_string(Stage stage);

/// Calendar date, derived from the first sample timestamp of a day file.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    bool operator==(const Date&) const = default;
};

/// y-m-d <-> days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);
Date civil_from_days(std::int64_t days);

/// Seconds past the GPS-time epoch 2000-01-01T12:00:00.
using GpsSeconds = std::int64_t;

Date date_of_gps_seconds(GpsSeconds secs);
GpsSeconds gps_seconds_at_midnight(const Date& date);

/// One 1 Hz accelerometer sample: timestamp, satellite, and the three
/// linear acceleration components in m/s^2 (magnitudes around 1e-6).
struct AccSample {
    GpsSeconds gps_time = 0;
    SatId sat_id = SatId::A;
    std::array<double, 3> lin_acc{0.0, 0.0, 0.0};
    bool flagged_bad = false;  // quality flag, retained but never dropped here

    bool operator==(const AccSample&) const = default;
};

/// One satellite-day of parsed samples. The raw header text is kept for
/// audit; gaps in the record stream are allowed, duplicates are not.
struct DailyAccFile {
    SatId sat_id = SatId::A;
    Date date;
    std::vector<AccSample> samples;
    std::vector<std::string> header_lines;
};

/// A single axis of a day, at some stage of the pipeline. `provenance`
/// records the stages actually applied, in order.
struct AxisSeries {
    SatId sat_id = SatId::A;
    Axis axis = Axis::x;
    std::vector<double> values;
    Stage stage = Stage::raw;
    double sample_interval_s = 1.0;
    std::vector<Stage> provenance{Stage::raw};
};

}  // namespace gracefill
