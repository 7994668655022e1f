#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ktau {

// Absolutely continuous coordinate laws with closed-form CDFs.
enum class Marginal { Uniform01, StandardGaussian, StandardCauchy, Exponential1 };

std::string_view to_string(Marginal m);
// Accepts the canonical names above and the short CLI aliases
// (uniform, gaussian/normal, cauchy, exponential).
Marginal parse_marginal(std::string_view name);

double true_cdf(Marginal m, double x);

// Philox4x32-10 counter-based generator. Every draw is a pure function of
// (key, counter), so any cell can be produced independently.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t key)
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)} {}

  Block operator()(Block counter) const;

 private:
  std::array<std::uint32_t, 2> key_;
};

// Two independent doubles, each uniform on the open interval (0, 1), for the
// (stream, index) cell.
std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// The value of cell (row, col) for a given marginal and seed.
double sample_cell(Marginal m, std::uint64_t seed, std::uint64_t row, std::uint64_t col);

// Immutable n×p sample matrix; rows are observations. Stored column-major so
// that per-coordinate work reads contiguous memory.
class DataMatrix {
 public:
  DataMatrix(std::size_t n, std::size_t p, std::vector<double> column_major,
             std::optional<Marginal> marginal = std::nullopt, std::uint64_t seed = 0);

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  double operator()(std::size_t row, std::size_t col) const { return values_[col * n_ + row]; }
  std::span<const double> column(std::size_t col) const { return {values_.data() + col * n_, n_}; }
  std::span<const double> values() const { return values_; }
  // Unset for data read from files.
  const std::optional<Marginal>& marginal() const { return marginal_; }
  std::uint64_t seed() const { return seed_; }

  bool operator==(const DataMatrix&) const = default;

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> values_;
  std::optional<Marginal> marginal_;
  std::uint64_t seed_;
};

// Requires n >= 2 and p >= 1. Output does not depend on `threads`.
DataMatrix generate_samples(std::size_t n, std::size_t p, Marginal marginal, std::uint64_t seed,
                            unsigned threads = 0);

}  // namespace ktau
