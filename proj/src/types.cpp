#include "gracefill/types.hpp"

#include <stdexcept>

namespace gracefill {

char to_char(SatId sat) { return sat == SatId::A ? 'A' : 'B'; }

char to_char(Axis axis) {
    switch (axis) {
        case Axis::x: return 'x';
        case Axis::y: return 'y';
        default: return 'z';
    }
}

SatId sat_from_char(char c) {
    if (c == 'A' || c == 'a') return SatId::A;
    if (c == 'B' || c == 'b') return SatId::B;
    throw std::invalid_argument(std::string("unknown satellite id: ") + c);
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'x': case 'X': return Axis::x;
        case 'y': case 'Y': return Axis::y;
        case 'z': case 'Z': return Axis::z;
        default: throw std::invalid_argument(std::string("unknown axis: ") + c);
    }
}

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::raw: return "raw";
        case Stage::cleaned: return "cleaned";
        case Stage::scaled: return "scaled";
        default: return "downsampled";
    }
}

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : static_cast<unsigned>(-9));
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

namespace {
// GPS epoch used for file timestamps: 2000-01-01T12:00:00.
const std::int64_t kEpochDays = days_from_civil(2000, 1, 1);
constexpr std::int64_t kHalfDay = 43200;
}  // namespace

Date date_of_gps_seconds(GpsSeconds secs) {
    const std::int64_t total = secs + kHalfDay;  // seconds since 2000-01-01T00:00:00
    std::int64_t days = total / 86400;
    if (total < 0 && total % 86400 != 0) --days;
    return civil_from_days(kEpochDays + days);
}

GpsSeconds gps_seconds_at_midnight(const Date& date) {
    const std::int64_t days = days_from_civil(date.year, date.month, date.day) - kEpochDays;
    return days * 86400 - kHalfDay;
}

}  // namespace gracefill
