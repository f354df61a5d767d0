#ifndef OSA_IO_HPP
#define OSA_IO_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "osa/common.hpp"
#include "osa/geometry.hpp"

namespace osa {

// Points CSV: one point per row, comma-separated decimals. Rows starting
// with '#' are comments/headers. Row order is index identity.

namespace detail {

inline Matrix parse_csv_matrix(std::istream& in, const std::string& source_name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  Index width = -1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t consumed = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &consumed);
      } catch (const std::exception&) {
        throw DataFormatError(source_name + ": cannot parse '" + cell + "' as a number",
                              line_number);
      }
      while (consumed < cell.size() &&
             (cell[consumed] == ' ' || cell[consumed] == '\t')) {
        ++consumed;
      }
      if (consumed != cell.size()) {
        throw DataFormatError(source_name + ": trailing characters in '" + cell + "'",
                              line_number);
      }
      if (!std::isfinite(value)) {
        throw DataFormatError(source_name + ": non-finite value '" + cell + "'",
                              line_number);
      }
      row.push_back(value);
    }
    if (row.empty()) {
      throw DataFormatError(source_name + ": empty row", line_number);
    }
    if (width < 0) {
      width = static_cast<Index>(row.size());
    } else if (static_cast<Index>(row.size()) != width) {
      throw DataFormatError(source_name + ": row has " + std::to_string(row.size()) +
                                " columns, expected " + std::to_string(width),
                            line_number);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataFormatError(source_name + ": no data rows");
  Matrix m(static_cast<Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Index j = 0; j < width; ++j) {
      m(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline PointSet read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open " + path);
  return PointSet(detail::parse_csv_matrix(in, path));
}

inline void write_points_csv(const std::string& path, const PointSet& points) {
  std::ofstream out(path);
  if (!out) throw DataFormatError("cannot open " + path + " for writing");
  out << "# d=" << points.dim() << " n=" << points.size() << "\n";
  for (Index i = 0; i < points.size(); ++i) {
    for (Index j = 0; j < points.dim(); ++j) {
      if (j) out << ",";
      out << detail::format_double(points.data()(i, j));
    }
    out << "\n";
  }
}

// Basis CSV: one vector per row. Rows need not be orthonormal on input;
// callers decide whether to orthonormalize.
inline Matrix read_vectors_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open " + path);
  return detail::parse_csv_matrix(in, path);
}

inline void write_basis_csv(const std::string& path, const Basis& basis) {
  std::ofstream out(path);
  if (!out) throw DataFormatError("cannot open " + path + " for writing");
  out << "# d=" << basis.ambient_dim() << " dim=" << basis.dim() << "\n";
  for (Index j = 0; j < basis.dim(); ++j) {
    for (Index i = 0; i < basis.ambient_dim(); ++i) {
      if (i) out << ",";
      out << detail::format_double(basis.vectors()(i, j));
    }
    out << "\n";
  }
}

// FNV-1a over the raw bytes of a file; manifests record this so a run can
// be tied to its exact input.
inline std::string file_checksum_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFormatError("cannot open " + path + " for checksum");
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace osa

#endif  // OSA_IO_HPP
