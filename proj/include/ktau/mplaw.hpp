#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ktau/spectra.hpp"

namespace ktau {

// Law of shift + scale·Y, Y standard Marčenko-Pastur with ratio gamma:
// density (1/(2πxγ))·√((b-x)(x-a)) on [a, b], a = (1-√γ)², b = (1+√γ)²,
// plus an atom of mass 1 - 1/γ at the origin when γ > 1.
//
// The continuous part is integrated in θ after x = a + (b-a)sin²θ, which
// removes the square-root edge behaviour; the integrand becomes
// (b-a)² sin²θ cos²θ / (πγ x(θ)). Panel sums over [0, π/2] are computed once
// at construction, so the object is immutable and safe to share.
class LimitLaw {
 public:
  // Throws ValidationError if gamma <= 0, scale == 0 or values are non-finite.
  LimitLaw(double gamma, double scale = 1.0, double shift = 0.0);

  static LimitLaw standard(double gamma) { return LimitLaw(gamma); }
  // Limit of the Kendall τ spectrum: (2/3)Y + 1/3.
  static LimitLaw kendall(double gamma) { return LimitLaw(gamma, 2.0 / 3.0, 1.0 / 3.0); }

  double gamma() const { return gamma_; }
  double scale() const { return scale_; }
  double shift() const { return shift_; }
  double a() const { return a_; }
  double b() const { return b_; }
  // Mass of the atom located at `shift`.
  double point_mass() const { return gamma_ > 1.0 ? 1.0 - 1.0 / gamma_ : 0.0; }

  // Continuous-part density; the atom is not included.
  double density(double x) const;
  double cdf(double x) const;
  // P(X < x).
  double cdf_left(double x) const;
  // Continuous support [shift + scale·a, shift + scale·b] (ordered).
  std::pair<double, double> support() const;
  // Location of the atom (meaningful when point_mass() > 0).
  double atom_location() const { return shift_; }

  // ∫ of the standard continuous density over [a, b] by the cached panels.
  double continuous_mass() const { return panel_cumulative_.back(); }
  std::size_t panels() const { return panel_cumulative_.size() - 1; }

 private:
  double standard_density(double y) const;
  // Continuous mass of the standard law on (-inf, y].
  double standard_continuous_cdf(double y) const;
  double standard_cdf(double y, bool inclusive) const;
  double integrate_theta(double lo, double hi) const;

  double gamma_;
  double scale_;
  double shift_;
  double a_;
  double b_;
  std::vector<double> panel_cumulative_;
};

double mp_density(const LimitLaw& law, double x);
double mp_cdf(const LimitLaw& law, double x);
std::pair<double, double> support(const LimitLaw& law);

// Spectrum of (1/n) Σ X_i⊗X_i for n i.i.d. standard Gaussian vectors in R^p.
SpectralDistribution wishart_esd_reference(std::size_t n, std::size_t p, std::uint64_t seed, unsigned threads = 0);

}  // namespace ktau
