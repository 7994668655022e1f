#include "ktau/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "ktau/errors.hpp"

namespace ktau {

SpectralDistribution::SpectralDistribution(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) throw ValidationError("spectral distribution needs at least one eigenvalue");
  for (double v : eigenvalues_) {
    if (!std::isfinite(v)) throw ValidationError("spectral distribution: non-finite eigenvalue");
  }
  std::sort(eigenvalues_.begin(), eigenvalues_.end());
}

double SpectralDistribution::cdf(double x) const {
  const auto count = std::upper_bound(eigenvalues_.begin(), eigenvalues_.end(), x) - eigenvalues_.begin();
  return static_cast<double>(count) / static_cast<double>(p());
}

double SpectralDistribution::cdf_left(double x) const {
  const auto count = std::lower_bound(eigenvalues_.begin(), eigenvalues_.end(), x) - eigenvalues_.begin();
  return static_cast<double>(count) / static_cast<double>(p());
}

namespace {

void require_symmetric(const Matrix& m) {
  if (!m.is_square() || m.rows() == 0) throw ValidationError("eigensolver: need a non-empty square matrix");
  for (double v : m.values()) {
    if (!std::isfinite(v)) throw ValidationError("eigensolver: non-finite entry");
  }
  if (asymmetry(m) > 1e-12 * std::max(1.0, max_abs(m))) throw ValidationError("eigensolver: matrix is not symmetric");
}

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> sub;  // sub[i] couples rows i and i+1; sub[p-1] = 0
};

// Reduces a (symmetrized copy of) m to tridiagonal form T = QᵀMQ. When q is
// supplied it receives Q.
Tridiagonal tridiagonalize(const Matrix& m, Matrix* q) {
  const std::size_t p = m.rows();
  Matrix a(p, p);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) a(r, c) = 0.5 * (m(r, c) + m(c, r));

  std::vector<std::vector<double>> reflectors;
  std::vector<double> betas;
  std::vector<double> v, pv, w;
  for (std::size_t k = 0; k + 2 < p; ++k) {
    const std::size_t len = p - k - 1;
    v.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) v[t] = a(k + 1 + t, k);
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    double beta = 0.0;
    if (norm > 0.0) {
      const double alpha = v[0] >= 0.0 ? -norm : norm;
      v[0] -= alpha;
      const double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
      if (vv > 0.0) beta = 2.0 / vv;
      a(k + 1, k) = a(k, k + 1) = alpha;
      for (std::size_t t = 1; t < len; ++t) a(k + 1 + t, k) = a(k, k + 1 + t) = 0.0;
    }
    if (q) {
      reflectors.push_back(v);
      betas.push_back(beta);
    }
    if (beta == 0.0) continue;

    // Trailing block update A ← A - v wᵀ - w vᵀ, w = βAv - (β²/2)(vᵀAv) v.
    pv.assign(len, 0.0);
    for (std::size_t r = 0; r < len; ++r) {
      const auto row = a.row(k + 1 + r).subspan(k + 1, len);
      pv[r] = beta * std::inner_product(row.begin(), row.end(), v.begin(), 0.0);
    }
    const double half = 0.5 * beta * std::inner_product(pv.begin(), pv.end(), v.begin(), 0.0);
    w.resize(len);
    for (std::size_t t = 0; t < len; ++t) w[t] = pv[t] - half * v[t];
    for (std::size_t r = 0; r < len; ++r) {
      auto row = a.row(k + 1 + r).subspan(k + 1, len);
      const double vr = v[r];
      const double wr = w[r];
      for (std::size_t c = 0; c < len; ++c) row[c] -= vr * w[c] + wr * v[c];
    }
  }

  Tridiagonal t;
  t.diag.resize(p);
  t.sub.assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) t.diag[i] = a(i, i);
  for (std::size_t i = 0; i + 1 < p; ++i) t.sub[i] = a(i + 1, i);

  if (q) {
    // Q = H_0 H_1 ... H_{p-3}, applied right-to-left onto the identity.
    *q = Matrix::identity(p);
    for (std::size_t idx = reflectors.size(); idx-- > 0;) {
      const auto& h = reflectors[idx];
      const double beta = betas[idx];
      if (beta == 0.0) continue;
      const std::size_t off = idx + 1;
      std::vector<double> proj(p, 0.0);
      for (std::size_t r = 0; r < h.size(); ++r) {
        const auto row = q->row(off + r);
        for (std::size_t c = 0; c < p; ++c) proj[c] += h[r] * row[c];
      }
      for (std::size_t r = 0; r < h.size(); ++r) {
        auto row = q->row(off + r);
        const double s = beta * h[r];
        for (std::size_t c = 0; c < p; ++c) row[c] -= s * proj[c];
      }
    }
  }
  return t;
}

// Implicit QL with Wilkinson-type shifts on (diag, sub). Rotations are
// accumulated into the columns of z when supplied.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
  const int p = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  const long budget = 30L * p;
  long iterations = 0;
  for (int l = 0; l < p; ++l) {
    int m;
    do {
      for (m = l; m < p - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iterations > budget) throw NumericError("eigensolver: QL iteration did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, shift = 0.0;
      bool deflated = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= shift;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - shift;
        r = (d[i] - g) * s + 2.0 * c * b;
        shift = s * r;
        d[i + 1] = g + shift;
        g = c * r - b;
        if (z) {
          for (std::size_t k = 0; k < z->rows(); ++k) {
            f = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
            (*z)(k, i) = c * (*z)(k, i) - s * f;
          }
        }
      }
      if (deflated) continue;
      d[l] -= shift;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

}  // namespace

SpectralDistribution eigenvalues_symmetric(const Matrix& m) {
  require_symmetric(m);
  Tridiagonal t = tridiagonalize(m, nullptr);
  tridiagonal_ql(t.diag, t.sub, nullptr);
  return SpectralDistribution(std::move(t.diag));
}

EigenDecomposition eigen_symmetric(const Matrix& m) {
  require_symmetric(m);
  Matrix q;
  Tridiagonal t = tridiagonalize(m, &q);
  tridiagonal_ql(t.diag, t.sub, &q);

  const std::size_t p = m.rows();
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.diag[a] < t.diag[b]; });
  EigenDecomposition out{std::vector<double>(p), Matrix(p, p)};
  for (std::size_t k = 0; k < p; ++k) {
    out.values[k] = t.diag[order[k]];
    for (std::size_t r = 0; r < p; ++r) out.vectors(r, k) = q(r, order[k]);
  }
  return out;
}

double esd_cdf(const SpectralDistribution& dist, double x) { return dist.cdf(x); }

std::vector<HistogramBin> histogram(const SpectralDistribution& dist, std::size_t bins, double lo, double hi) {
  if (bins == 0) throw ValidationError("histogram: need at least one bin");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("histogram: degenerate range");
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : dist.eigenvalues()) {
    if (v < lo || v > hi) continue;
    const auto idx = std::min<std::size_t>(bins - 1, static_cast<std::size_t>((v - lo) / width));
    ++counts[idx];
  }
  std::vector<HistogramBin> out(bins);
  const double scale = 1.0 / (static_cast<double>(dist.p()) * width);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].center = lo + (static_cast<double>(b) + 0.5) * width;
    out[b].density = static_cast<double>(counts[b]) * scale;
  }
  return out;
}

}  // namespace ktau
