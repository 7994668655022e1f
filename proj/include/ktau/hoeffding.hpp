#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ktau/datagen.hpp"
#include "ktau/matrix.hpp"
#include "ktau/rankcorr.hpp"

namespace ktau {

// Replaces every diagonal entry of a square matrix by r.
Matrix replace_diagonal(const Matrix& m, double r);

enum class CdfMode { TrueCDF, EmpiricalCDF };

// n×p matrix of uniform scores U_i(k) = 2F_k(X_i(k)) - 1; row i is U_i.
class ScoreMatrix {
 public:
  ScoreMatrix(Matrix values, CdfMode mode);

  std::size_t n() const { return values_.rows(); }
  std::size_t p() const { return values_.cols(); }
  double operator()(std::size_t i, std::size_t k) const { return values_(i, k); }
  std::span<const double> row(std::size_t i) const { return values_.row(i); }
  const Matrix& matrix() const { return values_; }
  CdfMode mode() const { return mode_; }

 private:
  Matrix values_;
  CdfMode mode_;
};

// TrueCDF uses the data's marginal (ValidationError if unknown).
// EmpiricalCDF uses F(x) = rank(x) / (n + 1) with 1-based ranks.
ScoreMatrix compute_scores(const DataMatrix& data, CdfMode mode);

// A = sign(X_i - X_j) and the degenerate part A - U_i + U_j.
struct PairDecomposition {
  SignVector sign;
  std::vector<double> residual;
};

PairDecomposition decompose_pair(const DataMatrix& data, const ScoreMatrix& scores, std::size_t i, std::size_t j);

// I + (2/n) Σ D₀[U_i⊗U_i] - (1/C(n,2)) D₀[Σ_{i≠j} U_i⊗U_j], evaluated through
// the Gram identity Σ_{i≠j} U_i⊗U_j = (ΣU_i)⊗(ΣU_i) - ΣU_i⊗U_i.
Matrix m1_sum(const ScoreMatrix& scores, unsigned threads = 0);

// Pair averages (1/C(n,2)) Σ_{i<j} of D₀[Ā⊗(U_i - U_j)] and D₀[Ā⊗Ā].
struct HigherOrderSums {
  Matrix m2;
  Matrix m3;
};

// Uses Σ_{i<j} A_(i,j)⊗(U_i - U_j) = Σ_i c_i⊗U_i with
// c_i(k) = Σ_{j≠i} sign(X_i(k) - X_j(k)) = 2·rank_k(i) - (n - 1),
// so the cost is O(n p²) rather than one outer product per pair.
HigherOrderSums m2_m3_sums(const DataMatrix& data, const ScoreMatrix& scores, unsigned threads = 0);

// Single-realization Frobenius statistics, all normalized by 1/p.
struct DecompositionReport {
  // ‖(2/n) Σ diag(U_i⊗U_i) - (2/3) I‖²_F / p
  double m1_residual_diag = 0.0;
  // ‖(1/C(n,2)) D₀[Σ_{i≠j} U_i⊗U_j]‖²_F / p
  double m1_residual_cross = 0.0;
  // ‖τ - M1sum‖²_F / p
  double tau_vs_m1 = 0.0;
  double m2_frobenius = 0.0;
  double m3_frobenius = 0.0;
  std::size_t n = 0;
  std::size_t p = 0;
  std::uint64_t seed = 0;
};

// Computes every statistic with TrueCDF scores.
DecompositionReport residual_report(const DataMatrix& data, unsigned threads = 0);

}  // namespace ktau
