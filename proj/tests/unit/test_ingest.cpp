#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "gracefill/acc_ingest.hpp"
#include "gracefill/errors.hpp"
#include "gracefill/synthetic.hpp"

using namespace gracefill;

namespace {

const char* kSmallFile =
    "PRODUCT: test day\n"
    "DIMENSION: 3\n"
    "END OF HEADER\n"
    "100 A 1.5e-06 -2.5e-07 3e-06\n"
    "101 A 1.6e-06 -2.6e-07 3.1e-06\n"
    "102 A 1.7e-06 -2.7e-07 3.2e-06\n";

DailyAccFile parse_text(const std::string& text, const RecordSchema& schema = {}) {
    std::istringstream in(text);
    return parse_acc1b(in, "<memory>", schema);
}

}  // namespace

TEST_CASE("parse_acc1b reads header and records") {
    const DailyAccFile day = parse_text(kSmallFile);
    REQUIRE(day.samples.size() == 3);
    CHECK(day.header_lines.size() == 2);
    CHECK(day.sat_id == SatId::A);
    CHECK(day.samples[0].gps_time == 100);
    CHECK(day.samples[2].lin_acc[2] == doctest::Approx(3.2e-6));
    CHECK(day.samples[1].lin_acc[0] == doctest::Approx(1.6e-6));
}

TEST_CASE("parse_acc1b derives the calendar date from the first timestamp") {
    // 2005-05-30 00:00:00 is 170683200 s past the 2000-01-01T12:00:00 epoch
    std::string text = "END OF HEADER\n170683200 B 1e-06 2e-06 3e-06\n";
    const DailyAccFile day = parse_text(text);
    CHECK(day.date == Date{2005, 5, 30});
    CHECK(day.sat_id == SatId::B);
}

TEST_CASE("missing terminator") {
    CHECK_THROWS_AS(parse_text("HEADER ONLY\nNO TERMINATOR\n"), MissingHeaderTerminator);
}

TEST_CASE("custom terminator") {
    RecordSchema schema;
    schema.header_terminator = "--data--";
    const DailyAccFile day = parse_text("x\n--data--\n5 A 1 2 3\n", schema);
    CHECK(day.samples.size() == 1);
}

TEST_CASE("malformed records carry the line number") {
    try {
        parse_text("END OF HEADER\n100 A 1 2 3\n101 A 1 2\n");
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(e.line_no == 3);
    }

    CHECK_THROWS_AS(parse_text("END OF HEADER\n100 A 1 2 nope\n"), MalformedRecord);
    CHECK_THROWS_AS(parse_text("END OF HEADER\n100 Q 1 2 3\n"), MalformedRecord);
    CHECK_THROWS_AS(parse_text("END OF HEADER\n-5 A 1 2 3\n"), MalformedRecord);
    CHECK_THROWS_AS(parse_text("END OF HEADER\n100 A 1 2 inf\n"), MalformedRecord);
}

TEST_CASE("non-monotonic time") {
    try {
        parse_text("END OF HEADER\n100 A 1 2 3\n100 A 1 2 3\n");
        FAIL("expected NonMonotonicTime");
    } catch (const NonMonotonicTime& e) {
        CHECK(e.line_no == 3);
    }
}

TEST_CASE("quality flag column is retained, not dropped") {
    RecordSchema schema;
    schema.qual_col = 5;
    const DailyAccFile day =
        parse_text("END OF HEADER\n1 A 1 2 3 0\n2 A 4 5 6 1\n3 A 7 8 9 0\n", schema);
    REQUIRE(day.samples.size() == 3);
    CHECK_FALSE(day.samples[0].flagged_bad);
    CHECK(day.samples[1].flagged_bad);
}

TEST_CASE("extra columns beyond the schema are ignored") {
    const DailyAccFile day =
        parse_text("END OF HEADER\n1 A 1 2 3 9.9e9 8.8e8 junk-is-not-parsed 4\n");
    REQUIRE(day.samples.size() == 1);
    CHECK(day.samples[0].lin_acc[1] == 2.0);
}

TEST_CASE("extract_axis projects one component in order") {
    const DailyAccFile day = parse_text(kSmallFile);

    const AxisSeries sx = extract_axis(day, Axis::x);
    REQUIRE(sx.values.size() == 3);
    CHECK(sx.stage == Stage::raw);
    CHECK(sx.sample_interval_s == 1.0);

    const AxisSeries sy = extract_axis(day, Axis::y);
    const AxisSeries sz = extract_axis(day, Axis::z);
    for (std::size_t i = 0; i < day.samples.size(); ++i) {
        CHECK(sx.values[i] == day.samples[i].lin_acc[0]);
        CHECK(sy.values[i] == day.samples[i].lin_acc[1]);
        CHECK(sz.values[i] == day.samples[i].lin_acc[2]);
    }
}

TEST_CASE("serialize + reparse round-trips the structure") {
    RecordSchema schema;
    schema.qual_col = 5;
    const DailyAccFile day =
        parse_text("END OF HEADER\n1 A 0.1234567890123456 -2e-06 3e-06 1\n"
                    "2 A 1.5e-06 2.5e-06 -3.5e-06 0\n",
                    schema);

    const std::string lines = serialize_records(day, schema);
    const DailyAccFile again = parse_text("END OF HEADER\n" + lines, schema);

    REQUIRE(again.samples.size() == day.samples.size());
    CHECK(again.samples == day.samples);
}

TEST_CASE("a full day file parses to <= 86400 samples at 1e-6-scale accelerations") {
    const auto path = std::filesystem::temp_directory_path() / "gracefill_test_fullday.asc";
    SynthDaySpec spec = reference_day_spec(SatId::A, 530);
    write_synthetic_acc1b(spec, path);

    const DailyAccFile day = parse_acc1b(path);
    CHECK(day.samples.size() == 86400);
    CHECK(day.date == Date{2005, 5, 30});

    const AxisSeries x = extract_axis(day, Axis::x);
    double mean_abs = 0.0;
    for (double v : x.values) mean_abs += std::abs(v);
    mean_abs /= static_cast<double>(x.values.size());
    CHECK(mean_abs > 1e-7);
    CHECK(mean_abs < 1e-5);
    std::filesystem::remove(path);
}

TEST_CASE("csv dump has the normalized columns") {
    const DailyAccFile day = parse_text(kSmallFile);
    const auto path = std::filesystem::temp_directory_path() / "gracefill_test_day.csv";
    write_day_csv(day, path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "gps_time,sat_id,acc_x,acc_y,acc_z");
    std::string row;
    std::getline(in, row);
    CHECK(row.substr(0, 6) == "100,A,");
    std::filesystem::remove(path);
}
