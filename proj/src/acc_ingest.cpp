#include "gracefill/acc_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gracefill/errors.hpp"

namespace gracefill {

namespace {

// Split a record line into whitespace-separated tokens (views into `line`).
std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

double parse_double_token(std::string_view tok, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw MalformedRecord(line_no, "bad number '" + std::string(tok) + "'");
    return v;
}

std::int64_t parse_int_token(std::string_view tok, std::size_t line_no) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw MalformedRecord(line_no, "bad integer '" + std::string(tok) + "'");
    return v;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int RecordSchema::min_columns() const {
    int max_col = std::max({time_col, sat_col, acc_x_col, acc_y_col, acc_z_col, qual_col});
    return max_col + 1;
}

DailyAccFile parse_acc1b(const std::filesystem::path& path, const RecordSchema& schema) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_acc1b(in, path.string(), schema);
}

DailyAccFile parse_acc1b(std::istream& in, const std::string& origin,
                         const RecordSchema& schema) {
    DailyAccFile day;
    std::string line;
    std::size_t line_no = 0;

    bool terminated = false;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line == schema.header_terminator) {
            terminated = true;
            break;
        }
        day.header_lines.push_back(line);
    }
    if (!terminated) throw MissingHeaderTerminator(origin);

    const std::size_t need = static_cast<std::size_t>(schema.min_columns());
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;  // blank line
        if (tokens.size() < need)
            throw MalformedRecord(line_no, "expected at least " + std::to_string(need) +
                                               " columns, got " + std::to_string(tokens.size()));

        AccSample s;
        s.gps_time = parse_int_token(tokens[schema.time_col], line_no);
        if (s.gps_time < 0) throw MalformedRecord(line_no, "negative timestamp");

        const auto sat_tok = tokens[schema.sat_col];
        if (sat_tok.size() != 1 || (sat_tok[0] != 'A' && sat_tok[0] != 'B'))
            throw MalformedRecord(line_no, "bad satellite id '" + std::string(sat_tok) + "'");
        s.sat_id = sat_from_char(sat_tok[0]);

        s.lin_acc[0] = parse_double_token(tokens[schema.acc_x_col], line_no);
        s.lin_acc[1] = parse_double_token(tokens[schema.acc_y_col], line_no);
        s.lin_acc[2] = parse_double_token(tokens[schema.acc_z_col], line_no);
        for (double a : s.lin_acc)
            if (!std::isfinite(a)) throw MalformedRecord(line_no, "non-finite acceleration");

        if (schema.qual_col >= 0)
            s.flagged_bad = parse_int_token(tokens[schema.qual_col], line_no) != 0;

        if (!day.samples.empty() && s.gps_time <= day.samples.back().gps_time)
            throw NonMonotonicTime(line_no);

        day.samples.push_back(s);
    }

    if (!day.samples.empty()) {
        day.sat_id = day.samples.front().sat_id;
        day.date = date_of_gps_seconds(day.samples.front().gps_time);
    }
    return day;
}

AxisSeries extract_axis(const DailyAccFile& day, Axis axis) {
    if (day.samples.empty()) throw EmptyInput("extract_axis");
    AxisSeries series;
    series.sat_id = day.sat_id;
    series.axis = axis;
    series.stage = Stage::raw;
    series.sample_interval_s = 1.0;
    series.values.reserve(day.samples.size());
    const std::size_t k = static_cast<std::size_t>(axis);
    for (const auto& s : day.samples) series.values.push_back(s.lin_acc[k]);
    return series;
}

std::string serialize_records(const DailyAccFile& day, const RecordSchema& schema) {
    const int ncols = schema.min_columns();
    std::string out;
    out.reserve(day.samples.size() * 80);
    for (const auto& s : day.samples) {
        for (int col = 0; col < ncols; ++col) {
            if (col > 0) out += ' ';
            if (col == schema.time_col)
                out += std::to_string(s.gps_time);
            else if (col == schema.sat_col)
                out += to_char(s.sat_id);
            else if (col == schema.acc_x_col)
                out += format_g17(s.lin_acc[0]);
            else if (col == schema.acc_y_col)
                out += format_g17(s.lin_acc[1]);
            else if (col == schema.acc_z_col)
                out += format_g17(s.lin_acc[2]);
            else if (col == schema.qual_col)
                out += s.flagged_bad ? '1' : '0';
            else
                out += '0';
        }
        out += '\n';
    }
    return out;
}

void write_day_csv(const DailyAccFile& day, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "gps_time,sat_id,acc_x,acc_y,acc_z\n";
    for (const auto& s : day.samples) {
        out << s.gps_time << ',' << to_char(s.sat_id) << ',' << format_g17(s.lin_acc[0]) << ','
            << format_g17(s.lin_acc[1]) << ',' << format_g17(s.lin_acc[2]) << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace gracefill
