#include "ktau/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ktau/errors.hpp"
#include "ktau/parallel.hpp"

namespace ktau {

std::string_view to_string(Marginal m) {
  switch (m) {
    case Marginal::Uniform01: return "Uniform01";
    case Marginal::StandardGaussian: return "StandardGaussian";
    case Marginal::StandardCauchy: return "StandardCauchy";
    case Marginal::Exponential1: return "Exponential1";
  }
  return "unknown";
}

Marginal parse_marginal(std::string_view name) {
  if (name == "Uniform01" || name == "uniform") return Marginal::Uniform01;
  if (name == "StandardGaussian" || name == "gaussian" || name == "normal") return Marginal::StandardGaussian;
  if (name == "StandardCauchy" || name == "cauchy") return Marginal::StandardCauchy;
  if (name == "Exponential1" || name == "exponential") return Marginal::Exponential1;
  throw ValidationError("unknown marginal '" + std::string(name) + "'");
}

double true_cdf(Marginal m, double x) {
  switch (m) {
    case Marginal::Uniform01: return std::clamp(x, 0.0, 1.0);
    case Marginal::StandardGaussian: return 0.5 * std::erfc(-x / std::numbers::sqrt2);
    case Marginal::StandardCauchy: return 0.5 + std::atan(x) / std::numbers::pi;
    case Marginal::Exponential1: return x <= 0.0 ? 0.0 : -std::expm1(-x);
  }
  return 0.0;
}

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

// 53 random bits mapped to the midpoints of a 2^-53 grid, strictly inside (0,1).
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Block Philox4x32::operator()(Block ctr) const {
  std::uint32_t k0 = key_[0];
  std::uint32_t k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return ctr;
}

std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const Philox4x32 gen(seed);
  const auto out = gen({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)});
  return {to_open_unit(out[0], out[1]), to_open_unit(out[2], out[3])};
}

double sample_cell(Marginal m, std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
  const auto [u, v] = uniform_pair(seed, col, row);
  switch (m) {
    case Marginal::Uniform01: return u;
    case Marginal::StandardGaussian:
      // Box-Muller, cosine branch only so each cell stays self-contained.
      return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    case Marginal::StandardCauchy: return std::tan(std::numbers::pi * (u - 0.5));
    case Marginal::Exponential1: return -std::log1p(-u);
  }
  return 0.0;
}

DataMatrix::DataMatrix(std::size_t n, std::size_t p, std::vector<double> column_major,
                       std::optional<Marginal> marginal, std::uint64_t seed)
    : n_(n), p_(p), values_(std::move(column_major)), marginal_(marginal), seed_(seed) {
  if (values_.size() != n_ * p_) throw ValidationError("data matrix size does not match n*p");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("data matrix contains a non-finite value");
  }
}

DataMatrix generate_samples(std::size_t n, std::size_t p, Marginal marginal, std::uint64_t seed,
                            unsigned threads) {
  if (n < 2) throw ValidationError("generate_samples: need n >= 2 samples");
  if (p < 1) throw ValidationError("generate_samples: need p >= 1 coordinates");
  std::vector<double> values(n * p);
  parallel_for(p, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t col = begin; col < end; ++col)
      for (std::size_t row = 0; row < n; ++row) values[col * n + row] = sample_cell(marginal, seed, row, col);
  });
  return DataMatrix(n, p, std::move(values), marginal, seed);
}

}  // namespace ktau
