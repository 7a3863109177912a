#include "klpoly/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "klpoly/errors.hpp"

namespace klpoly {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 12);
    if (ec != std::errc{}) throw Error("failed to format double");
    return std::string(buf, ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::pair<double, double>> parse_two_column_csv(const std::string& text) {
    std::vector<std::pair<double, double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("CSV line " + std::to_string(lineno) + ": expected two comma-separated columns");
        const std::string c0 = line.substr(0, comma);
        const std::string c1 = line.substr(comma + 1);
        double x = 0, v = 0;
        auto r0 = std::from_chars(c0.data(), c0.data() + c0.size(), x);
        auto r1 = std::from_chars(c1.data(), c1.data() + c1.size(), v);
        const bool ok = r0.ec == std::errc{} && r1.ec == std::errc{} &&
                        r0.ptr == c0.data() + c0.size() && r1.ptr == c1.data() + c1.size();
        if (!ok) {
            if (lineno == 1 && rows.empty()) continue;  // optional header row
            throw ParseError("CSV line " + std::to_string(lineno) + ": non-numeric field");
        }
        rows.emplace_back(x, v);
    }
    if (rows.empty()) throw ParseError("CSV contained no data rows");
    return rows;
}

} // namespace klpoly
