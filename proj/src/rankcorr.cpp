#include "ktau/rankcorr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ktau/errors.hpp"
#include "ktau/parallel.hpp"

namespace ktau {

SignVector::SignVector(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  for (auto s : signs_) {
    if (s != 1 && s != -1) throw ValidationError("sign vector entries must be +1 or -1");
  }
}

SignVector SignVector::of_difference(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("sign vector: length mismatch");
  std::vector<std::int8_t> signs(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) signs[k] = static_cast<std::int8_t>(sign_of(x[k] - y[k]));
  return SignVector(std::move(signs));
}

SignVector SignVector::operator-() const {
  SignVector out = *this;
  for (auto& s : out.signs_) s = static_cast<std::int8_t>(-s);
  return out;
}

CorrelationMatrix::CorrelationMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (!entries_.is_square()) throw ValidationError("correlation matrix must be square");
  const std::size_t p = entries_.rows();
  for (std::size_t k = 0; k < p; ++k) {
    if (entries_(k, k) != 1.0) throw ValidationError("correlation matrix must have unit diagonal");
    for (std::size_t l = k + 1; l < p; ++l) {
      const double v = entries_(k, l);
      if (v != entries_(l, k)) throw ValidationError("correlation matrix must be symmetric");
      if (!(v >= -1.0 && v <= 1.0)) throw ValidationError("correlation entries must lie in [-1, 1]");
    }
  }
}

namespace {

void require_pair_input(std::span<const double> y, std::span<const double> z) {
  if (y.size() != z.size()) throw ValidationError("tau: vectors differ in length");
  if (y.size() < 2) throw ValidationError("tau: need at least 2 samples");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(y.begin(), y.end(), finite) || !std::all_of(z.begin(), z.end(), finite)) {
    throw ValidationError("tau: non-finite sample");
  }
}

std::int64_t pair_count(std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  return m * (m - 1) / 2;
}

// order[t] = index whose strict rank is t.
std::vector<std::uint32_t> rank_order(std::span<const double> x) {
  std::vector<std::uint32_t> order(x.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return a > b;
  });
  return order;
}

std::vector<std::uint32_t> invert(const std::vector<std::uint32_t>& order) {
  std::vector<std::uint32_t> ranks(order.size());
  for (std::uint32_t t = 0; t < order.size(); ++t) ranks[order[t]] = t;
  return ranks;
}

// Discordant pairs between the column whose rank order is `order` and the
// column with ranks `other_ranks`.
std::int64_t discordant_pairs(const std::vector<std::uint32_t>& order, const std::vector<std::uint32_t>& other_ranks,
                              std::vector<std::uint32_t>& seq, std::vector<std::uint32_t>& scratch) {
  for (std::size_t t = 0; t < order.size(); ++t) seq[t] = other_ranks[order[t]];
  return count_inversions(seq, scratch);
}

}  // namespace

std::vector<std::uint32_t> strict_ranks(std::span<const double> x) { return invert(rank_order(x)); }

std::int64_t count_inversions(std::span<std::uint32_t> seq, std::span<std::uint32_t> scratch) {
  const std::size_t n = seq.size();
  std::int64_t inversions = 0;
  std::uint32_t* src = seq.data();
  std::uint32_t* dst = scratch.data();
  // Insertion sort on short blocks, then bottom-up merges of width 16, 32, ...
  constexpr std::size_t kBlock = 16;
  for (std::size_t lo = 0; lo < n; lo += kBlock) {
    const std::size_t hi = std::min(lo + kBlock, n);
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const std::uint32_t v = src[i];
      std::size_t j = i;
      while (j > lo && src[j - 1] > v) {
        src[j] = src[j - 1];
        --j;
      }
      inversions += static_cast<std::int64_t>(i - j);
      src[j] = v;
    }
  }
  for (std::size_t width = kBlock; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, out = lo;
      // Branch-free merge step.
      while (a < mid && b < hi) {
        const std::uint32_t va = src[a], vb = src[b];
        const bool take_b = vb < va;
        dst[out++] = take_b ? vb : va;
        inversions += take_b ? static_cast<std::int64_t>(mid - a) : 0;
        a += !take_b;
        b += take_b;
      }
      while (a < mid) dst[out++] = src[a++];
      while (b < hi) dst[out++] = src[b++];
    }
    std::swap(src, dst);
  }
  if (src != seq.data()) std::copy(src, src + n, seq.data());
  return inversions;
}

PairCounts concordance_counts(std::span<const double> y, std::span<const double> z) {
  require_pair_input(y, z);
  const auto order = rank_order(y);
  const auto z_ranks = strict_ranks(z);
  std::vector<std::uint32_t> seq(y.size()), scratch(y.size());
  const std::int64_t discordant = discordant_pairs(order, z_ranks, seq, scratch);
  return {pair_count(y.size()) - discordant, discordant};
}

PairCounts concordance_counts_bruteforce(std::span<const double> y, std::span<const double> z) {
  require_pair_input(y, z);
  PairCounts counts;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      if (sign_of(y[i] - y[j]) * sign_of(z[i] - z[j]) > 0) {
        ++counts.concordant;
      } else {
        ++counts.discordant;
      }
    }
  }
  return counts;
}

double tau_pair(std::span<const double> y, std::span<const double> z) { return concordance_counts(y, z).tau(); }

double tau_pair_bruteforce(std::span<const double> y, std::span<const double> z) {
  return concordance_counts_bruteforce(y, z).tau();
}

CorrelationMatrix tau_matrix(const DataMatrix& data, unsigned threads) {
  const std::size_t n = data.n();
  const std::size_t p = data.p();
  if (n < 2) throw ValidationError("tau_matrix: need at least 2 samples");

  std::vector<std::vector<std::uint32_t>> orders(p), ranks(p);
  parallel_for(p, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      orders[k] = rank_order(data.column(k));
      ranks[k] = invert(orders[k]);
    }
  });

  const std::int64_t pairs = pair_count(n);
  Matrix tau = Matrix::identity(p);
  parallel_for(p, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> seq(n), scratch(n);
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t l = k + 1; l < p; ++l) {
        const std::int64_t discordant = discordant_pairs(orders[k], ranks[l], seq, scratch);
        tau(k, l) = PairCounts{pairs - discordant, discordant}.tau();
      }
    }
  });
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = k + 1; l < p; ++l) tau(l, k) = tau(k, l);
  return CorrelationMatrix(std::move(tau));
}

Matrix rescale_tau(const CorrelationMatrix& tau) {
  Matrix out = 1.5 * tau.matrix();
  for (std::size_t k = 0; k < out.rows(); ++k) out(k, k) = 1.0;
  return out;
}

CorrelationMatrix spearman_matrix(const DataMatrix& data, unsigned threads) {
  const std::size_t n = data.n();
  const std::size_t p = data.p();
  if (n < 2) throw ValidationError("spearman_matrix: need at least 2 samples");

  std::vector<std::vector<std::uint32_t>> ranks(p);
  for (std::size_t k = 0; k < p; ++k) {
    const auto col = data.column(k);
    const auto order = rank_order(col);
    for (std::size_t t = 1; t < n; ++t) {
      if (col[order[t]] == col[order[t - 1]]) throw ValidationError("spearman_matrix: tie within a column");
    }
    ranks[k] = invert(order);
  }

  // Without ties, Pearson of ranks equals 1 - 6 Σd² / (n(n²-1)).
  const double nn = static_cast<double>(n);
  const double denom = nn * (nn * nn - 1.0);
  Matrix rho = Matrix::identity(p);
  parallel_for(p, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t l = k + 1; l < p; ++l) {
        std::int64_t d2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const auto d = static_cast<std::int64_t>(ranks[k][i]) - static_cast<std::int64_t>(ranks[l][i]);
          d2 += d * d;
        }
        rho(k, l) = std::clamp(1.0 - 6.0 * static_cast<double>(d2) / denom, -1.0, 1.0);
      }
    }
  });
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = k + 1; l < p; ++l) rho(l, k) = rho(k, l);
  return CorrelationMatrix(std::move(rho));
}

}  // namespace ktau
