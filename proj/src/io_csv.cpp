#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "midgap/io.hpp"

namespace midgap {

std::string fmt_sci(double v, int precision) {
    // to_chars is locale free and round-trips at precision 16, which keeps
    // output files byte-stable across runs and machines.
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific,
                                   precision);
    if (ec != std::errc{}) throw invalid_input("number formatting failed");
    return std::string(buf, end);
}

std::string format_csv(const Table& t) {
    for (const auto& row : t.rows)
        if (row.size() != t.columns.size())
            throw invalid_input("csv row width does not match the header");

    std::string out;
    for (const auto& c : t.comments) {
        out += "# ";
        out += c;
        out += "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ",";
        out += t.columns[i];
    }
    out += "\n";
    auto is_int_col = [&](std::size_t i) {
        return std::find(t.int_cols.begin(), t.int_cols.end(), static_cast<int>(i)) !=
               t.int_cols.end();
    };
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            if (is_int_col(i))
                out += std::to_string(static_cast<long long>(std::llround(row[i])));
            else
                out += fmt_sci(row[i], 11);
        }
        out += "\n";
    }
    return out;
}

void write_csv(const std::string& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << format_csv(t);
    if (!out) throw invalid_input("write failed for '" + path + "'");
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace midgap
