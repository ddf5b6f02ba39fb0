#include "qsc/csv.hpp"

#include "qsc/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qsc::csv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view text, std::size_t row, std::size_t col, const std::string& path) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(path + ": row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": not a number: '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.emplace_back(trim(current));
    return fields;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

Matrix read_matrix(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t row = 0;
    if (skip_header && std::getline(in, line)) ++row;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_line(line);
        std::vector<double> values;
        values.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            values.push_back(parse_double(fields[c], row, c + 1, path));
        }
        if (!rows.empty() && values.size() != rows.front().size()) {
            throw ParseError(path + ": row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                             " columns, expected " + std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(values));
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

void write_matrix(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Labels read_int_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    const auto header = split_line(line);
    std::size_t idx = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == column) idx = c;
    }
    if (idx == header.size()) throw ParseError(path + ": no column named '" + column + "'");
    Labels out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_line(line);
        if (idx >= fields.size()) throw ParseError(path + ": row " + std::to_string(row) + " is short");
        int v = 0;
        const auto& f = fields[idx];
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc{} || ptr != f.data() + f.size()) {
            throw ParseError(path + ": row " + std::to_string(row) + ", column " + column + ": not an integer");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace qsc::csv
