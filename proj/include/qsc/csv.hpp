#pragma once

#include "qsc/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qsc::csv {

/// Splits one CSV record on commas. Double-quoted fields may contain commas;
/// surrounding whitespace and a trailing '\r' are stripped.
std::vector<std::string> split_line(std::string_view line);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

/// Numeric matrix, one row per line; `skip_header` drops the first line.
Matrix read_matrix(const std::string& path, bool skip_header = false);
void write_matrix(const Matrix& m, const std::string& path);

/// Single integer column per row, with a header; `column` selects which field.
Labels read_int_column(const std::string& path, const std::string& column);

}  // namespace qsc::csv
