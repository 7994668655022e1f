#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ktau/errors.hpp"
#include "ktau/rankcorr.hpp"
#include "oracles.hpp"

namespace {

using ktau::Marginal;
using V = std::vector<double>;

TEST(TauPairTest, SpecExamples) {
  EXPECT_EQ(ktau::tau_pair(V{1, 2, 3, 4}, V{1, 2, 3, 4}), 1.0);
  EXPECT_EQ(ktau::tau_pair(V{1, 2, 3, 4}, V{4, 3, 2, 1}), -1.0);
  // 5 concordant, 1 discordant of 6 pairs.
  EXPECT_EQ(ktau::tau_pair(V{1, 2, 3, 4}, V{1, 2, 4, 3}), 4.0 / 6.0);
  const auto counts = ktau::concordance_counts(V{1, 2, 3, 4}, V{1, 2, 4, 3});
  EXPECT_EQ(counts.concordant, 5);
  EXPECT_EQ(counts.discordant, 1);
}

TEST(TauPairTest, BruteforceExamples) {
  EXPECT_EQ(ktau::tau_pair_bruteforce(V{3, 1, 2}, V{3, 1, 2}), 1.0);
  EXPECT_EQ(ktau::tau_pair_bruteforce(V{0, 1}, V{1, 0}), -1.0);
}

TEST(TauPairTest, TiesFollowSignZeroIsPlusOne) {
  const V y{1, 1, 2};
  const V z{5, 5, 4};
  // (0,1): (+1)(+1) = +1; (0,2): (-1)(+1) = -1; (1,2): (-1)(+1) = -1.
  EXPECT_EQ(ktau::tau_pair_bruteforce(y, z), -1.0 / 3.0);
  EXPECT_EQ(ktau::tau_pair(y, z), -1.0 / 3.0);
}

TEST(TauPairTest, RejectsBadInput) {
  EXPECT_THROW(ktau::tau_pair(V{1, 2}, V{1, 2, 3}), ktau::ValidationError);
  EXPECT_THROW(ktau::tau_pair(V{1}, V{1}), ktau::ValidationError);
  EXPECT_THROW(ktau::tau_pair_bruteforce(V{1}, V{2}), ktau::ValidationError);
  EXPECT_THROW(ktau::tau_pair(V{1, std::nan("")}, V{1, 2}), ktau::ValidationError);
}

TEST(TauPairProperty, FastKernelEqualsBruteforceExactly) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> len(2, 300);
  std::uniform_int_distribution<int> small(0, 5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    V y(n), z(n);
    // Every third trial uses a tiny integer alphabet so ties are common.
    const bool ties = trial % 3 == 0;
    for (int i = 0; i < n; ++i) {
      y[i] = ties ? small(rng) : normal(rng);
      z[i] = ties ? small(rng) : normal(rng);
    }
    const auto fast = ktau::concordance_counts(y, z);
    const auto slow = ktau::concordance_counts_bruteforce(y, z);
    ASSERT_EQ(fast, slow) << "trial " << trial;
    ASSERT_EQ(fast.pairs(), static_cast<std::int64_t>(n) * (n - 1) / 2);
    ASSERT_EQ(ktau::tau_pair(y, z), ktau::tau_pair_bruteforce(y, z));
  }
}

TEST(CountInversionsTest, MatchesDoubleLoop) {
  std::mt19937 rng(4);
  for (int n : {1, 2, 3, 17, 64, 100}) {
    std::vector<std::uint32_t> seq(n);
    for (auto& v : seq) v = rng() % 50;
    std::int64_t expected = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) expected += seq[i] > seq[j];
    std::vector<std::uint32_t> scratch(n);
    EXPECT_EQ(ktau::count_inversions(seq, scratch), expected);
    EXPECT_TRUE(std::is_sorted(seq.begin(), seq.end()));
  }
}

TEST(StrictRanksTest, EncodesTieConvention) {
  const V x{2.0, 1.0, 2.0, 0.5};
  const auto r = ktau::strict_ranks(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      EXPECT_EQ(ktau::sign_of(x[i] - x[j]), r[i] > r[j] ? 1 : -1) << i << "," << j;
}

TEST(TauMatrixTest, SingleColumnIsIdentity) {
  const auto data = ktau::generate_samples(10, 1, Marginal::Uniform01, 1);
  const auto tau = ktau::tau_matrix(data);
  ASSERT_EQ(tau.p(), 1u);
  EXPECT_EQ(tau(0, 0), 1.0);
}

TEST(TauMatrixTest, DuplicatedColumnGivesPerfectConcordance) {
  const auto base = ktau::generate_samples(40, 1, Marginal::StandardGaussian, 8);
  std::vector<double> values(base.values().begin(), base.values().end());
  values.insert(values.end(), base.values().begin(), base.values().end());
  const ktau::DataMatrix data(40, 2, values);
  EXPECT_EQ(ktau::tau_matrix(data)(0, 1), 1.0);
}

TEST(TauMatrixTest, EqualsOuterProductAccumulationExactly) {
  const auto data = ktau::generate_samples(50, 4, Marginal::Uniform01, 3);
  const auto tau = ktau::tau_matrix(data);
  EXPECT_EQ(tau.matrix(), ktau::oracle::tau_outer_products(data));
}

TEST(TauMatrixTest, IndependentOfThreadCount) {
  const auto data = ktau::generate_samples(300, 37, Marginal::Exponential1, 12);
  EXPECT_EQ(ktau::tau_matrix(data, 1).matrix(), ktau::tau_matrix(data, 8).matrix());
}

TEST(TauMatrixProperty, InvariantUnderStrictlyIncreasingMaps) {
  const auto data = ktau::generate_samples(200, 5, Marginal::StandardGaussian, 21);
  std::vector<double> values(data.values().begin(), data.values().end());
  // Column 2 through x ↦ x³ + exp(x), column 4 through atan.
  for (std::size_t i = 0; i < 200; ++i) {
    double& a = values[2 * 200 + i];
    a = a * a * a + std::exp(a);
    double& b = values[4 * 200 + i];
    b = std::atan(b);
  }
  const ktau::DataMatrix mapped(200, 5, values);
  EXPECT_EQ(ktau::tau_matrix(data).matrix(), ktau::tau_matrix(mapped).matrix());
}

TEST(TauPairProperty, CltVarianceIsFourNinths) {
  constexpr int kReplicates = 2000;
  constexpr std::size_t kN = 200;
  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < kReplicates; ++r) {
    const auto data = ktau::generate_samples(kN, 2, Marginal::Uniform01, 1000 + r);
    const double scaled = std::sqrt(static_cast<double>(kN)) * ktau::tau_pair(data.column(0), data.column(1));
    sum += scaled;
    sum_sq += scaled * scaled;
  }
  const double mean = sum / kReplicates;
  const double variance = (sum_sq - kReplicates * mean * mean) / (kReplicates - 1);
  EXPECT_NEAR(variance, 4.0 / 9.0, 0.1 * 4.0 / 9.0);
}

TEST(RescaleTauTest, AffineMap) {
  const ktau::CorrelationMatrix id(ktau::Matrix::identity(3));
  EXPECT_EQ(ktau::rescale_tau(id), ktau::Matrix::identity(3));
  const ktau::CorrelationMatrix c(ktau::Matrix::from_rows({{1, 0.2}, {0.2, 1}}));
  const auto r = ktau::rescale_tau(c);
  EXPECT_DOUBLE_EQ(r(0, 1), 0.3);
  EXPECT_DOUBLE_EQ(r(1, 0), 0.3);
  EXPECT_EQ(r(0, 0), 1.0);
  const ktau::CorrelationMatrix neg(ktau::Matrix::from_rows({{1, -1}, {-1, 1}}));
  EXPECT_EQ(ktau::rescale_tau(neg)(0, 1), -1.5);
}

TEST(CorrelationMatrixTest, EnforcesInvariants) {
  EXPECT_THROW(ktau::CorrelationMatrix(ktau::Matrix::from_rows({{1, 0.2}, {0.3, 1}})), ktau::ValidationError);
  EXPECT_THROW(ktau::CorrelationMatrix(ktau::Matrix::from_rows({{0.9, 0}, {0, 1}})), ktau::ValidationError);
  EXPECT_THROW(ktau::CorrelationMatrix(ktau::Matrix::from_rows({{1, 1.2}, {1.2, 1}})), ktau::ValidationError);
}

TEST(SpearmanTest, SpecExamples) {
  const ktau::DataMatrix monotone(5, 2, {1, 2, 3, 4, 5, 10, 20, 30, 40, 50});
  EXPECT_DOUBLE_EQ(ktau::spearman_matrix(monotone)(0, 1), 1.0);
  const ktau::DataMatrix reversed(5, 2, {1, 2, 3, 4, 5, 5, 4, 3, 2, 1});
  EXPECT_DOUBLE_EQ(ktau::spearman_matrix(reversed)(0, 1), -1.0);
  const ktau::DataMatrix swapped(5, 2, {1, 2, 3, 4, 5, 1, 3, 2, 5, 4});
  EXPECT_DOUBLE_EQ(ktau::spearman_matrix(swapped)(0, 1), 0.8);
}

TEST(SpearmanTest, RejectsTies) {
  const ktau::DataMatrix tied(4, 2, {1, 2, 2, 3, 1, 2, 3, 4});
  EXPECT_THROW(ktau::spearman_matrix(tied), ktau::ValidationError);
}

TEST(SignVectorTest, EntriesAreUnitSigns) {
  const auto s = ktau::SignVector::of_difference(V{1, 2, 3}, V{1, 3, 2});
  EXPECT_EQ(s[0], 1);
  EXPECT_EQ(s[1], -1);
  EXPECT_EQ(s[2], 1);
  EXPECT_EQ((-s)[1], 1);
  EXPECT_THROW(ktau::SignVector({1, 0}), ktau::ValidationError);
}

}  // namespace
