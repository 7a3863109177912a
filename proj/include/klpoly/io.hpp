#ifndef KLPOLY_IO_HPP
#define KLPOLY_IO_HPP

#include <string>
#include <utility>
#include <vector>

namespace klpoly {

// Locale-independent, 12 significant digits.
std::string format_double(double v);

// Write via temp file + rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

// Two-or-more column CSV, header row, '.' decimal separator, LF endings.
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

// Parses a two-column CSV (x,value); the header row is optional.
std::vector<std::pair<double, double>> parse_two_column_csv(const std::string& text);

std::string read_text_file(const std::string& path);

} // namespace klpoly

#endif
