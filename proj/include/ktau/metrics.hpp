#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ktau/matrix.hpp"
#include "ktau/mplaw.hpp"
#include "ktau/spectra.hpp"

namespace ktau {

// A right-continuous distribution function together with the points where
// it may jump or bend. Distances are evaluated on those points, so for step
// functions the breakpoints must contain every jump.
class CdfFunction {
 public:
  using Eval = std::function<double(double)>;

  CdfFunction(Eval value, Eval left_limit, std::vector<double> breakpoints);

  static CdfFunction empirical(std::span<const double> samples);
  static CdfFunction of(const SpectralDistribution& dist);
  // Breakpoints: `grid` equally spaced points across the continuous support
  // plus the atom location.
  static CdfFunction of(const LimitLaw& law, std::size_t grid = 2000);

  double operator()(double x) const { return value_(x); }
  double left(double x) const { return left_(x); }
  std::span<const double> breakpoints() const { return breakpoints_; }
  // Below lo the function is 0, at or above hi it is 1.
  double lo() const { return breakpoints_.front(); }
  double hi() const { return breakpoints_.back(); }

 private:
  Eval value_;
  Eval left_;
  std::vector<double> breakpoints_;
};

// Smallest ε with F(x-ε) - ε <= G(x) <= F(x+ε) + ε for all x, by bisection
// on ε down to `tolerance`. The returned value is always feasible.
double levy_distance(const CdfFunction& f, const CdfFunction& g, double tolerance = 1e-8);

// sup_x |F(x) - G(x)| over both CDFs' breakpoints, including left limits.
double ks_distance(const CdfFunction& f, const CdfFunction& g);

// ‖A - B‖²_F / p.
double frobenius_distance_sq_normalized(const Matrix& a, const Matrix& b);

struct LevyFrobeniusCheck {
  double levy_cubed = 0.0;
  double frob_norm = 0.0;
  bool holds = false;
};

// Compares L(μ^A, μ^B)³ against ‖A - B‖²_F / p for symmetric A, B.
LevyFrobeniusCheck check_levy_frobenius_bound(const Matrix& a, const Matrix& b);

}  // namespace ktau
