#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ktau/datagen.hpp"
#include "ktau/matrix.hpp"
#include "ktau/spectra.hpp"

namespace ktau::csv {

// Lossless text for a double: 17 significant digits.
std::string format_double(double v);

// Comma-separated rows, no header. Blank lines are skipped; ragged rows or
// unparsable cells raise ValidationError, a missing file raises IoError.
Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

// n rows × p columns, no header.
DataMatrix read_data(const std::filesystem::path& path);

// One column with header `eigenvalue`. The header is optional on read.
std::vector<double> read_eigenvalues(const std::filesystem::path& path);
void write_eigenvalues(const std::filesystem::path& path, std::span<const double> values);

// Header `bin_center,density`.
void write_histogram(const std::filesystem::path& path, std::span<const HistogramBin> bins);

struct CurvePoint {
  double x = 0.0;
  double density = 0.0;
};
// Header `x,density`.
void write_density(const std::filesystem::path& path, std::span<const CurvePoint> curve);

}  // namespace ktau::csv
