#include "ktau/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ktau/errors.hpp"

namespace ktau::csv {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, const std::filesystem::path& path, std::size_t line) {
  cell = trim(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    throw ValidationError(path.string() + ":" + std::to_string(line) + ": cannot parse '" + std::string(cell) + "'");
  }
  return value;
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = view.find(',', start);
      row.push_back(parse_cell(view.substr(start, comma - start), path, line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(path.string() + ": no data");
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

Matrix read_matrix(const std::filesystem::path& path) { return Matrix::from_rows(read_rows(path)); }

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_for_write(path);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
  finish(out, path);
}

DataMatrix read_data(const std::filesystem::path& path) {
  const Matrix m = read_matrix(path);
  std::vector<double> column_major(m.rows() * m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) column_major[c * m.rows() + r] = m(r, c);
  return DataMatrix(m.rows(), m.cols(), std::move(column_major));
}

std::vector<double> read_eigenvalues(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (values.empty() && line_no == 1 && view == "eigenvalue") continue;
    values.push_back(parse_cell(view, path, line_no));
  }
  if (values.empty()) throw ValidationError(path.string() + ": no eigenvalues");
  return values;
}

void write_eigenvalues(const std::filesystem::path& path, std::span<const double> values) {
  auto out = open_for_write(path);
  out << "eigenvalue\n";
  for (double v : values) out << format_double(v) << '\n';
  finish(out, path);
}

void write_histogram(const std::filesystem::path& path, std::span<const HistogramBin> bins) {
  auto out = open_for_write(path);
  out << "bin_center,density\n";
  for (const auto& b : bins) out << format_double(b.center) << ',' << format_double(b.density) << '\n';
  finish(out, path);
}

void write_density(const std::filesystem::path& path, std::span<const CurvePoint> curve) {
  auto out = open_for_write(path);
  out << "x,density\n";
  for (const auto& pt : curve) out << format_double(pt.x) << ',' << format_double(pt.density) << '\n';
  finish(out, path);
}

}  // namespace ktau::csv
