#include "ktau/hoeffding.hpp"

#include <cmath>

#include "ktau/errors.hpp"
#include "ktau/parallel.hpp"

namespace ktau {

Matrix replace_diagonal(const Matrix& m, double r) {
  if (!m.is_square()) throw ValidationError("replace_diagonal: matrix must be square");
  Matrix out = m;
  for (std::size_t k = 0; k < out.rows(); ++k) out(k, k) = r;
  return out;
}

ScoreMatrix::ScoreMatrix(Matrix values, CdfMode mode) : values_(std::move(values)), mode_(mode) {
  for (double v : values_.values()) {
    if (!(v >= -1.0 && v <= 1.0)) throw ValidationError("scores must lie in [-1, 1]");
  }
}

ScoreMatrix compute_scores(const DataMatrix& data, CdfMode mode) {
  const std::size_t n = data.n();
  const std::size_t p = data.p();
  Matrix u(n, p);
  if (mode == CdfMode::TrueCDF) {
    if (!data.marginal()) throw ValidationError("compute_scores: TrueCDF needs a known marginal");
    const Marginal m = *data.marginal();
    for (std::size_t k = 0; k < p; ++k) {
      const auto col = data.column(k);
      for (std::size_t i = 0; i < n; ++i) u(i, k) = 2.0 * true_cdf(m, col[i]) - 1.0;
    }
  } else {
    if (n < 2) throw ValidationError("compute_scores: EmpiricalCDF needs n >= 2");
    const double denom = static_cast<double>(n + 1);
    for (std::size_t k = 0; k < p; ++k) {
      const auto ranks = strict_ranks(data.column(k));
      for (std::size_t i = 0; i < n; ++i) u(i, k) = 2.0 * static_cast<double>(ranks[i] + 1) / denom - 1.0;
    }
  }
  return ScoreMatrix(std::move(u), mode);
}

PairDecomposition decompose_pair(const DataMatrix& data, const ScoreMatrix& scores, std::size_t i, std::size_t j) {
  if (i == j) throw ValidationError("decompose_pair: indices must differ");
  if (i >= data.n() || j >= data.n()) throw ValidationError("decompose_pair: index out of range");
  if (scores.n() != data.n() || scores.p() != data.p()) throw ValidationError("decompose_pair: score shape mismatch");
  const std::size_t p = data.p();
  std::vector<double> xi(p), xj(p);
  for (std::size_t k = 0; k < p; ++k) {
    xi[k] = data(i, k);
    xj[k] = data(j, k);
  }
  PairDecomposition out{SignVector::of_difference(xi, xj), std::vector<double>(p)};
  for (std::size_t k = 0; k < p; ++k) out.residual[k] = out.sign[k] - scores(i, k) + scores(j, k);
  return out;
}

namespace {

std::vector<double> column_sums(const Matrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += r[k];
  }
  return sums;
}

Matrix outer(const std::vector<double>& v) {
  Matrix out(v.size(), v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    for (std::size_t l = 0; l < v.size(); ++l) out(k, l) = v[k] * v[l];
  return out;
}

double pairs_of(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

// Σ_{i≠j} U_i⊗U_j = (ΣU)⊗(ΣU) - ΣU_i⊗U_i.
Matrix cross_gram(const Matrix& gram, const Matrix& scores) { return outer(column_sums(scores)) - gram; }

}  // namespace

Matrix m1_sum(const ScoreMatrix& scores, unsigned threads) {
  const std::size_t n = scores.n();
  if (n < 2) throw ValidationError("m1_sum: need n >= 2");
  const Matrix gram = transpose_times(scores.matrix(), scores.matrix(), threads);
  return Matrix::identity(scores.p()) + (2.0 / static_cast<double>(n)) * replace_diagonal(gram, 0.0) -
         (1.0 / pairs_of(n)) * replace_diagonal(cross_gram(gram, scores.matrix()), 0.0);
}

namespace {

HigherOrderSums higher_order_sums(const CorrelationMatrix& tau, const DataMatrix& data, const ScoreMatrix& scores,
                                  unsigned threads) {
  const std::size_t n = data.n();
  const std::size_t p = data.p();

  Matrix sign_sums(n, p);
  for (std::size_t k = 0; k < p; ++k) {
    const auto ranks = strict_ranks(data.column(k));
    for (std::size_t i = 0; i < n; ++i) {
      sign_sums(i, k) = 2.0 * static_cast<double>(ranks[i]) - static_cast<double>(n - 1);
    }
  }

  const Matrix& u = scores.matrix();
  const Matrix gram = transpose_times(u, u, threads);
  // Σ_{i<j} A⊗w and Σ_{i<j} w⊗w with w = U_i - U_j.
  const Matrix sign_score = transpose_times(sign_sums, u, threads);
  const Matrix score_score = static_cast<double>(n) * gram - outer(column_sums(u));
  const double inv_pairs = 1.0 / pairs_of(n);

  HigherOrderSums out;
  out.m2 = inv_pairs * replace_diagonal(sign_score - score_score, 0.0);
  out.m3 = replace_diagonal(tau.matrix(), 0.0) -
           inv_pairs * replace_diagonal(sign_score + sign_score.transposed() - score_score, 0.0);
  return out;
}

}  // namespace

HigherOrderSums m2_m3_sums(const DataMatrix& data, const ScoreMatrix& scores, unsigned threads) {
  if (data.n() < 2) throw ValidationError("m2_m3_sums: need n >= 2");
  if (scores.n() != data.n() || scores.p() != data.p()) throw ValidationError("m2_m3_sums: score shape mismatch");
  return higher_order_sums(tau_matrix(data, threads), data, scores, threads);
}

DecompositionReport residual_report(const DataMatrix& data, unsigned threads) {
  const std::size_t n = data.n();
  const std::size_t p = data.p();
  if (n < 2) throw ValidationError("residual_report: need n >= 2");
  const ScoreMatrix scores = compute_scores(data, CdfMode::TrueCDF);
  const Matrix gram = transpose_times(scores.matrix(), scores.matrix(), threads);
  const double inv_p = 1.0 / static_cast<double>(p);

  DecompositionReport report;
  report.n = n;
  report.p = p;
  report.seed = data.seed();

  double diag = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    const double d = 2.0 * gram(k, k) / static_cast<double>(n) - 2.0 / 3.0;
    diag += d * d;
  }
  report.m1_residual_diag = diag * inv_p;
  report.m1_residual_cross =
      frobenius_sq((1.0 / pairs_of(n)) * replace_diagonal(cross_gram(gram, scores.matrix()), 0.0)) * inv_p;

  const CorrelationMatrix tau = tau_matrix(data, threads);
  report.tau_vs_m1 = frobenius_sq(tau.matrix() - m1_sum(scores, threads)) * inv_p;

  const HigherOrderSums higher = higher_order_sums(tau, data, scores, threads);
  report.m2_frobenius = frobenius_sq(higher.m2) * inv_p;
  report.m3_frobenius = frobenius_sq(higher.m3) * inv_p;
  return report;
}

}  // namespace ktau
