#include "ktau/mplaw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "ktau/datagen.hpp"
#include "ktau/errors.hpp"

namespace ktau {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr std::size_t kMinPanels = 16;
constexpr std::size_t kMaxPanels = 8192;
constexpr double kMassTolerance = 1e-13;

}  // namespace

LimitLaw::LimitLaw(double gamma, double scale, double shift) : gamma_(gamma), scale_(scale), shift_(shift) {
  if (!std::isfinite(gamma) || gamma <= 0.0) throw ValidationError("limit law: gamma must be positive");
  if (!std::isfinite(scale) || scale == 0.0) throw ValidationError("limit law: scale must be nonzero");
  if (!std::isfinite(shift)) throw ValidationError("limit law: shift must be finite");
  const double root = std::sqrt(gamma);
  a_ = (1.0 - root) * (1.0 - root);
  b_ = (1.0 + root) * (1.0 + root);

  // Refine the uniform θ panels until the total continuous mass matches
  // min(1, 1/γ); near γ = 1 the integrand peaks sharply at θ = 0.
  const double expected = std::min(1.0, 1.0 / gamma);
  for (std::size_t count = kMinPanels;; count *= 2) {
    panel_cumulative_.assign(count + 1, 0.0);
    const double width = kHalfPi / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double lo = width * static_cast<double>(k);
      panel_cumulative_[k + 1] = panel_cumulative_[k] + integrate_theta(lo, lo + width);
    }
    if (std::abs(panel_cumulative_.back() - expected) <= kMassTolerance || count >= kMaxPanels) break;
  }
}

double LimitLaw::integrate_theta(double lo, double hi) const {
  const double span = b_ - a_;
  const double coef = span * span / (std::numbers::pi * gamma_);
  return Gauss::integrate(
      [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double s2 = s * s;
        return coef * s2 * c * c / (a_ + span * s2);
      },
      lo, hi);
}

double LimitLaw::standard_density(double y) const {
  if (y < a_ || y > b_ || y <= 0.0) return 0.0;
  return std::sqrt((b_ - y) * (y - a_)) / (2.0 * std::numbers::pi * y * gamma_);
}

double LimitLaw::standard_continuous_cdf(double y) const {
  if (y <= a_) return 0.0;
  if (y >= b_) return continuous_mass();
  const double theta = std::asin(std::sqrt((y - a_) / (b_ - a_)));
  const std::size_t count = panels();
  const double width = kHalfPi / static_cast<double>(count);
  const auto k = std::min(count - 1, static_cast<std::size_t>(theta / width));
  const double panel_lo = width * static_cast<double>(k);
  return panel_cumulative_[k] + integrate_theta(panel_lo, theta);
}

double LimitLaw::standard_cdf(double y, bool inclusive) const {
  double value = standard_continuous_cdf(y);
  if (point_mass() > 0.0 && (inclusive ? y >= 0.0 : y > 0.0)) value += point_mass();
  return std::clamp(value, 0.0, 1.0);
}

double LimitLaw::density(double x) const { return standard_density((x - shift_) / scale_) / std::abs(scale_); }

double LimitLaw::cdf(double x) const {
  const double y = (x - shift_) / scale_;
  return scale_ > 0.0 ? standard_cdf(y, true) : 1.0 - standard_cdf(y, false);
}

double LimitLaw::cdf_left(double x) const {
  const double y = (x - shift_) / scale_;
  return scale_ > 0.0 ? standard_cdf(y, false) : 1.0 - standard_cdf(y, true);
}

std::pair<double, double> LimitLaw::support() const {
  const double lo = shift_ + scale_ * a_;
  const double hi = shift_ + scale_ * b_;
  return {std::min(lo, hi), std::max(lo, hi)};
}

double mp_density(const LimitLaw& law, double x) { return law.density(x); }
double mp_cdf(const LimitLaw& law, double x) { return law.cdf(x); }
std::pair<double, double> support(const LimitLaw& law) { return law.support(); }

SpectralDistribution wishart_esd_reference(std::size_t n, std::size_t p, std::uint64_t seed, unsigned threads) {
  if (n < 1 || p < 1) throw ValidationError("wishart_esd_reference: need n, p >= 1");
  Matrix x(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < p; ++k) x(i, k) = sample_cell(Marginal::StandardGaussian, seed, i, k);
  Matrix w = (1.0 / static_cast<double>(n)) * transpose_times(x, x, threads);
  // Exact symmetry; the products above agree only up to rounding order.
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = k + 1; l < p; ++l) w(l, k) = w(k, l);
  return eigenvalues_symmetric(w);
}

}  // namespace ktau
