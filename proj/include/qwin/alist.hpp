#pragma once

// alist interchange format (MacKay):
//
//   n m                      (columns, rows)
//   max_col_degree max_row_degree
//   <n column degrees>
//   <m row degrees>
//   n lines: 1-based row indices of each column (zero padding allowed)
//   m lines: 1-based column indices of each row (zero padding allowed)

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace qwin {

class AlistError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::size_t> read_index_line(std::istream& in, std::size_t degree,
                                                std::size_t bound, const std::string& what)
{
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            break;
    }
    if (!in)
        throw AlistError("alist: unexpected end of input reading " + what);
    std::istringstream ls(line);
    std::vector<std::size_t> out;
    long long value = 0;
    while (ls >> value) {
        if (value < 0 || static_cast<std::size_t>(value) > bound)
            throw AlistError("alist: index " + std::to_string(value) + " out of range in " + what);
        if (value != 0)
            out.push_back(static_cast<std::size_t>(value) - 1);
    }
    if (!ls.eof())
        throw AlistError("alist: non-numeric token in " + what);
    if (out.size() != degree)
        throw AlistError("alist: " + what + " lists " + std::to_string(out.size()) +
                         " entries, degree says " + std::to_string(degree));
    return out;
}

} // namespace detail

inline BinaryMatrix read_alist(std::istream& in)
{
    std::size_t n = 0, m = 0, max_col = 0, max_row = 0;
    if (!(in >> n >> m))
        throw AlistError("alist: missing 'n m' header");
    if (!(in >> max_col >> max_row))
        throw AlistError("alist: missing maximum degree line");
    std::vector<std::size_t> col_deg(n), row_deg(m);
    for (auto& d : col_deg)
        if (!(in >> d) || d > max_col)
            throw AlistError("alist: bad column degree");
    for (auto& d : row_deg)
        if (!(in >> d) || d > max_row)
            throw AlistError("alist: bad row degree");
    std::string rest;
    std::getline(in, rest);

    std::vector<std::vector<std::size_t>> cols(n), rows(m);
    for (std::size_t j = 0; j < n; ++j)
        cols[j] = detail::read_index_line(in, col_deg[j], m, "column " + std::to_string(j + 1));
    for (std::size_t i = 0; i < m; ++i)
        rows[i] = detail::read_index_line(in, row_deg[i], n, "row " + std::to_string(i + 1));

    BinaryMatrix from_rows;
    try {
        from_rows = BinaryMatrix::from_rows(m, n, rows);
    } catch (const std::invalid_argument& e) {
        throw AlistError(std::string("alist: ") + e.what());
    }
    auto check = from_rows.column_supports();
    for (std::size_t j = 0; j < n; ++j) {
        std::sort(cols[j].begin(), cols[j].end());
        if (cols[j] != check[j])
            throw AlistError("alist: column " + std::to_string(j + 1) +
                             " list disagrees with the row lists");
    }
    return from_rows;
}

inline void write_alist(std::ostream& out, const BinaryMatrix& h)
{
    auto cols = h.column_supports();
    auto col_w = h.column_weights();
    auto row_w = h.row_weights();
    std::size_t max_col = 0, max_row = 0;
    for (auto w : col_w)
        max_col = std::max(max_col, w);
    for (auto w : row_w)
        max_row = std::max(max_row, w);

    out << h.cols() << ' ' << h.rows() << '\n' << max_col << ' ' << max_row << '\n';
    auto write_list = [&out](const auto& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out << (i ? " " : "") << values[i];
        out << '\n';
    };
    write_list(col_w);
    write_list(row_w);
    auto write_padded = [&out](auto indices, std::size_t width) {
        std::size_t written = 0;
        for (auto idx : indices)
            out << (written++ ? " " : "") << idx + 1;
        for (; written < width; ++written)
            out << (written ? " " : "") << 0;
        out << '\n';
    };
    // Empty lines would be skipped on read, so zero-degree lists carry a single 0.
    for (const auto& c : cols)
        write_padded(c, std::max<std::size_t>(max_col, 1));
    for (std::size_t i = 0; i < h.rows(); ++i)
        write_padded(h.row(i), std::max<std::size_t>(max_row, 1));
}

inline BinaryMatrix load_alist(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw AlistError("alist: cannot open " + path);
    try {
        return read_alist(in);
    } catch (const AlistError& e) {
        throw AlistError(path + ": " + e.what());
    }
}

inline void store_alist(const std::string& path, const BinaryMatrix& h)
{
    std::ofstream out(path);
    if (!out)
        throw AlistError("alist: cannot write " + path);
    write_alist(out, h);
}

} // namespace qwin
