#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gracefill/types.hpp"

namespace gracefill {

/// Column layout of an ASCII day file. Values are zero-based column
/// indices into each whitespace-separated record; extra columns are
/// ignored. The defaults follow the ACC1B Level-1B convention.
struct RecordSchema {
    std::string header_terminator = "END OF HEADER";
    int time_col = 0;
    int sat_col = 1;
    int acc_x_col = 2;
    int acc_y_col = 3;
    int acc_z_col = 4;
    int qual_col = -1;  // -1: no quality flag column

    int min_columns() const;
};

/// Parse one satellite-day ASCII accelerometer file.
///
/// The header is kept as opaque text up to (and excluding) the terminator
/// line. Records flagged bad by the quality column are retained and marked;
/// dropping points is the preprocess module's job.
///
/// Throws MissingHeaderTerminator, MalformedRecord, NonMonotonicTime.
DailyAccFile parse_acc1b(const std::filesystem::path& path, const RecordSchema& schema = {});
DailyAccFile parse_acc1b(std::istream& in, const std::string& origin,
                         const RecordSchema& schema = {});

/// Project one acceleration component of a day into a raw 1 Hz series.
AxisSeries extract_axis(const DailyAccFile& day, Axis axis);

/// Format the samples back into record lines laid out per `schema`
/// (columns the schema does not name are written as 0). Reparsing the
/// result with the same schema reproduces the samples exactly.
std::string serialize_records(const DailyAccFile& day, const RecordSchema& schema = {});

/// Normalized CSV dump: gps_time,sat_id,acc_x,acc_y,acc_z.
void write_day_csv(const DailyAccFile& day, const std::filesystem::path& path);

}  // namespace gracefill
