#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ktau/matrix.hpp"

namespace ktau {

// Uniform probability measure on the eigenvalues of a p×p symmetric matrix.
class SpectralDistribution {
 public:
  // Sorts the input; throws ValidationError on empty or non-finite input.
  explicit SpectralDistribution(std::vector<double> eigenvalues);

  std::size_t p() const { return eigenvalues_.size(); }
  std::span<const double> eigenvalues() const { return eigenvalues_; }
  double min() const { return eigenvalues_.front(); }
  double max() const { return eigenvalues_.back(); }

  // #{λ_k <= x} / p.
  double cdf(double x) const;
  // #{λ_k < x} / p.
  double cdf_left(double x) const;

 private:
  std::vector<double> eigenvalues_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

// Eigenvalues only. Householder reduction to tridiagonal form, then
// implicitly shifted QL with a budget of 30·p iterations in total.
SpectralDistribution eigenvalues_symmetric(const Matrix& m);

// Same algorithm with eigenvector accumulation.
EigenDecomposition eigen_symmetric(const Matrix& m);

double esd_cdf(const SpectralDistribution& dist, double x);

struct HistogramBin {
  double center = 0.0;
  double density = 0.0;
};

// Bins [lo, hi) into equal widths, the last bin closed at hi. Densities are
// count / (p · width), so the total area is the in-range fraction.
std::vector<HistogramBin> histogram(const SpectralDistribution& dist, std::size_t bins, double lo, double hi);

}  // namespace ktau
