#include "ktau/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ktau/errors.hpp"

namespace ktau {

CdfFunction::CdfFunction(Eval value, Eval left_limit, std::vector<double> breakpoints)
    : value_(std::move(value)), left_(std::move(left_limit)), breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw ValidationError("cdf: need at least one breakpoint");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

CdfFunction CdfFunction::empirical(std::span<const double> samples) {
  return of(SpectralDistribution(std::vector<double>(samples.begin(), samples.end())));
}

CdfFunction CdfFunction::of(const SpectralDistribution& dist) {
  auto shared = std::make_shared<const SpectralDistribution>(dist);
  std::vector<double> jumps(dist.eigenvalues().begin(), dist.eigenvalues().end());
  return CdfFunction([shared](double x) { return shared->cdf(x); },
                     [shared](double x) { return shared->cdf_left(x); }, std::move(jumps));
}

CdfFunction CdfFunction::of(const LimitLaw& law, std::size_t grid) {
  if (grid < 2) throw ValidationError("cdf: law grid needs at least 2 points");
  auto shared = std::make_shared<const LimitLaw>(law);
  const auto [lo, hi] = law.support();
  std::vector<double> points(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    points[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
  }
  if (law.point_mass() > 0.0) points.push_back(law.atom_location());
  return CdfFunction([shared](double x) { return shared->cdf(x); },
                     [shared](double x) { return shared->cdf_left(x); }, std::move(points));
}

namespace {

bool levy_feasible(const CdfFunction& f, const CdfFunction& g, double eps) {
  auto check_at = [&](double x) {
    if (g(x) > f(x + eps) + eps) return false;
    if (g.left(x) > f.left(x + eps) + eps) return false;
    if (f(x - eps) - eps > g(x)) return false;
    if (f.left(x - eps) - eps > g.left(x)) return false;
    return true;
  };
  for (const CdfFunction* h : {&f, &g}) {
    for (double x : h->breakpoints()) {
      if (!check_at(x) || !check_at(x - eps) || !check_at(x + eps)) return false;
    }
  }
  return true;
}

}  // namespace

double levy_distance(const CdfFunction& f, const CdfFunction& g, double tolerance) {
  if (!(tolerance > 0.0)) throw ValidationError("levy_distance: tolerance must be positive");
  if (levy_feasible(f, g, 0.0)) return 0.0;
  // ε = 1 is always feasible for distribution functions.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (levy_feasible(f, g, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double ks_distance(const CdfFunction& f, const CdfFunction& g) {
  double worst = 0.0;
  for (const CdfFunction* h : {&f, &g}) {
    for (double x : h->breakpoints()) {
      worst = std::max(worst, std::abs(f(x) - g(x)));
      worst = std::max(worst, std::abs(f.left(x) - g.left(x)));
    }
  }
  return worst;
}

double frobenius_distance_sq_normalized(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("frobenius distance: dimension mismatch");
  if (a.rows() == 0) throw ValidationError("frobenius distance: empty matrices");
  return frobenius_sq(a - b) / static_cast<double>(a.rows());
}

LevyFrobeniusCheck check_levy_frobenius_bound(const Matrix& a, const Matrix& b) {
  const double frob = frobenius_distance_sq_normalized(a, b);
  const double levy = levy_distance(CdfFunction::of(eigenvalues_symmetric(a)),
                                    CdfFunction::of(eigenvalues_symmetric(b)), 1e-12);
  LevyFrobeniusCheck out;
  out.levy_cubed = levy * levy * levy;
  out.frob_norm = frob;
  out.holds = out.levy_cubed <= frob + 1e-9;
  return out;
}

}  // namespace ktau
