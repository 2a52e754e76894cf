#include "gracefill/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "gracefill/errors.hpp"

namespace gracefill {

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::vector<double>& values, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i << ',' << format_g17(values[i]) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<double> read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty series file " + path.string());

    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw MalformedRecord(line_no, "expected index,value in " + path.string());
        double v = 0.0;
        const char* first = line.data() + comma + 1;
        const char* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
            throw MalformedRecord(line_no, "bad value in " + path.string());
        values.push_back(v);
    }
    return values;
}

TrainHistory read_history_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty history file " + path.string());

    TrainHistory history;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double cols[4];
        const char* p = line.data();
        const char* last = line.data() + line.size();
        // skip the epoch column
        while (p < last && *p != ',') ++p;
        for (double& col : cols) {
            if (p >= last || *p != ',')
                throw MalformedRecord(line_no, "expected 5 columns in " + path.string());
            ++p;
            auto [next, ec] = std::from_chars(p, last, col);
            if (ec != std::errc{})
                throw MalformedRecord(line_no, "bad value in " + path.string());
            p = next;
        }
        history.loss.push_back(cols[0]);
        history.mae.push_back(cols[1]);
        history.val_loss.push_back(cols[2]);
        history.val_mae.push_back(cols[3]);
    }
    return history;
}

void write_history_csv(const TrainHistory& history, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "epoch,loss,mae,val_loss,val_mae\n";
    for (std::size_t e = 0; e < history.loss.size(); ++e) {
        out << (e + 1) << ',' << format_g17(history.loss[e]) << ',' << format_g17(history.mae[e])
            << ',' << format_g17(history.val_loss[e]) << ',' << format_g17(history.val_mae[e])
            << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace gracefill
