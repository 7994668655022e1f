#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ktau/datagen.hpp"
#include "ktau/matrix.hpp"

namespace ktau {

// sign() with the convention sign(0) = +1.
constexpr int sign_of(double x) { return x >= 0.0 ? 1 : -1; }

// Vector of ±1 entries.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<std::int8_t> signs);

  // Entrywise sign(x - y).
  static SignVector of_difference(std::span<const double> x, std::span<const double> y);

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t k) const { return signs_[k]; }
  SignVector operator-() const;

  bool operator==(const SignVector&) const = default;

 private:
  std::vector<std::int8_t> signs_;
};

// p×p symmetric matrix with unit diagonal and entries in [-1, 1].
class CorrelationMatrix {
 public:
  // Throws ValidationError if the invariants do not hold exactly.
  explicit CorrelationMatrix(Matrix entries);

  std::size_t p() const { return entries_.rows(); }
  double operator()(std::size_t k, std::size_t l) const { return entries_(k, l); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

// Concordant and discordant pair counts over all C(n,2) index pairs, using
// sign(0) = +1 for each coordinate difference.
struct PairCounts {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;

  std::int64_t pairs() const { return concordant + discordant; }
  // (C - D) / C(n,2); the only floating-point operation.
  double tau() const { return static_cast<double>(concordant - discordant) / static_cast<double>(pairs()); }

  bool operator==(const PairCounts&) const = default;
};

// Permutation r of 0..n-1 such that, for i < j, sign(x_i - x_j) = sign(r_i - r_j)
// under the sign(0) = +1 convention (ties ranked lower for later indices).
std::vector<std::uint32_t> strict_ranks(std::span<const double> x);

// Number of index pairs t < u with seq[t] > seq[u]. O(n log n); `seq` is
// reordered, `scratch` must be at least as long as `seq`.
std::int64_t count_inversions(std::span<std::uint32_t> seq, std::span<std::uint32_t> scratch);

// O(n log n): sort by y, count inversions of z in that order.
PairCounts concordance_counts(std::span<const double> y, std::span<const double> z);
// O(n²) double loop over i < j.
PairCounts concordance_counts_bruteforce(std::span<const double> y, std::span<const double> z);

double tau_pair(std::span<const double> y, std::span<const double> z);
double tau_pair_bruteforce(std::span<const double> y, std::span<const double> z);

// Full Kendall τ matrix; upper triangle computed in parallel then mirrored.
// The result is identical for any `threads`.
CorrelationMatrix tau_matrix(const DataMatrix& data, unsigned threads = 0);

// (3/2)τ - (1/2)I: off-diagonal entries scaled by 3/2, unit diagonal kept.
Matrix rescale_tau(const CorrelationMatrix& tau);

// Pearson correlation of within-column ranks. Throws ValidationError on ties.
CorrelationMatrix spearman_matrix(const DataMatrix& data, unsigned threads = 0);

}  // namespace ktau
