#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ktau/csv.hpp"
#include "ktau/errors.hpp"
#include "ktau/harness.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ktau_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ktau::ExperimentConfig small_config(const std::string& name) {
  ktau::ExperimentConfig c;
  c.n = 120;
  c.p = 40;
  c.seed = 7;
  c.bins = 20;
  c.outputs = scratch_dir(name);
  return c;
}

TEST(ConfigTest, JsonRoundTrip) {
  ktau::ExperimentConfig c;
  c.n = 321;
  c.p = 17;
  c.marginal = ktau::Marginal::StandardCauchy;
  c.seed = 99;
  c.replicates = 3;
  c.bins = 11;
  c.law = ktau::LawChoice::StandardMp;
  c.outputs = "somewhere/else";
  c.threads = 4;
  c.diagnostics = true;
  const json j = ktau::to_json(c);
  EXPECT_EQ(ktau::to_json(ktau::config_from_json(j)), j);
}

TEST(ConfigTest, PartialJsonKeepsDefaults) {
  const auto c = ktau::config_from_json(json{{"n", 500}, {"marginal", "exponential"}});
  EXPECT_EQ(c.n, 500u);
  EXPECT_EQ(c.p, 100u);
  EXPECT_EQ(c.marginal, ktau::Marginal::Exponential1);
  EXPECT_EQ(c.law, ktau::LawChoice::KendallAffine);
}

TEST(ConfigTest, RejectsUnknownKeysAndInvalidValues) {
  EXPECT_THROW(ktau::config_from_json(json{{"gamma", 0.5}}), ktau::ValidationError);
  ktau::ExperimentConfig c;
  c.n = 1;
  EXPECT_THROW(c.validate(), ktau::ValidationError);
  c = {};
  c.replicates = 0;
  EXPECT_THROW(c.validate(), ktau::ValidationError);
  EXPECT_THROW(ktau::parse_law("wigner"), ktau::ValidationError);
  EXPECT_EQ(ktau::parse_law("auto"), ktau::LawChoice::Auto);
}

TEST(ConfigTest, GammaHatIsPOverN) {
  ktau::ExperimentConfig c;
  c.n = 2000;
  c.p = 1000;
  EXPECT_DOUBLE_EQ(c.gamma_hat(), 0.5);
}

TEST(ReplicateSeedTest, FirstReplicateUsesMasterSeed) {
  EXPECT_EQ(ktau::replicate_seed(42, 0), 42u);
  EXPECT_NE(ktau::replicate_seed(42, 1), ktau::replicate_seed(42, 2));
  EXPECT_NE(ktau::replicate_seed(42, 1), 42u);
}

TEST(ReferenceLawTest, ChoosesTransform) {
  const auto k = ktau::reference_law(ktau::LawChoice::KendallAffine, 0.5);
  EXPECT_DOUBLE_EQ(k.scale(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(k.shift(), 1.0 / 3.0);
  const auto a = ktau::reference_law(ktau::LawChoice::Auto, 0.5);
  EXPECT_DOUBLE_EQ(a.scale(), 2.0 / 3.0);
  const auto s = ktau::reference_law(ktau::LawChoice::StandardMp, 0.5);
  EXPECT_EQ(s.scale(), 1.0);
  EXPECT_EQ(s.shift(), 0.0);
}

TEST(RunExperimentTest, WritesEveryReferencedFile) {
  const auto config = small_config("files");
  const auto result = ktau::run_experiment(config);
  const json summary = json::parse(slurp(result.summary_path));
  for (const auto& [key, name] : summary.at("files").items()) {
    const fs::path path = config.outputs / name.get<std::string>();
    ASSERT_TRUE(fs::exists(path)) << key;
    EXPECT_GT(fs::file_size(path), 0u) << key;
  }
  EXPECT_TRUE(fs::exists(result.eigenvalues_path));
  EXPECT_TRUE(fs::exists(result.histogram_path));
  EXPECT_TRUE(fs::exists(result.density_path));
  EXPECT_EQ(ktau::csv::read_eigenvalues(result.eigenvalues_path).size(), 40u);
  EXPECT_GE(result.ks_to_limit, 0.0);
  EXPECT_LE(result.ks_to_limit, 1.0);
  EXPECT_LE(result.levy_to_limit, result.ks_to_limit + 1e-6);
  EXPECT_DOUBLE_EQ(summary.at("gamma_hat").get<double>(), 40.0 / 120.0);
}

TEST(RunExperimentTest, CsvHeaders) {
  const auto result = ktau::run_experiment(small_config("headers"));
  auto first_line = [](const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
  };
  EXPECT_EQ(first_line(result.eigenvalues_path), "eigenvalue");
  EXPECT_EQ(first_line(result.histogram_path), "bin_center,density");
  EXPECT_EQ(first_line(result.density_path), "x,density");
}

TEST(RunExperimentProperty, SummaryRoundTrips) {
  auto config = small_config("roundtrip");
  config.replicates = 3;
  config.diagnostics = true;
  const auto result = ktau::run_experiment(config);
  ASSERT_TRUE(result.decomposition.has_value());
  const std::string text = slurp(result.summary_path);
  const json parsed = json::parse(text);
  EXPECT_EQ(json::parse(parsed.dump(2)), parsed);
  EXPECT_EQ(parsed.dump(2) + "\n", text);
  EXPECT_EQ(parsed.at("replicates").size(), 3u);
  EXPECT_EQ(ktau::config_from_json(parsed.at("config")).seed, config.seed);
}

TEST(RunExperimentProperty, DeterministicAcrossThreadCounts) {
  auto one = small_config("threads1");
  one.threads = 1;
  auto eight = small_config("threads8");
  eight.threads = 8;
  const auto a = ktau::run_experiment(one);
  const auto b = ktau::run_experiment(eight);
  EXPECT_EQ(slurp(a.eigenvalues_path), slurp(b.eigenvalues_path));
  EXPECT_EQ(slurp(a.histogram_path), slurp(b.histogram_path));
  EXPECT_EQ(a.ks_to_limit, b.ks_to_limit);
}

TEST(RunExperimentTest, RescaledViewMatchesAffineView) {
  auto affine = small_config("affine");
  auto rescaled = small_config("rescaled");
  rescaled.law = ktau::LawChoice::StandardMp;
  const auto a = ktau::run_experiment(affine);
  const auto b = ktau::run_experiment(rescaled);
  // The two views are the same statement up to an affine change of variable.
  EXPECT_NEAR(a.ks_to_limit, b.ks_to_limit, 1e-9);
}

TEST(RunDiagnosticsTest, GuardAndOutput) {
  auto config = small_config("diag");
  const auto report = ktau::run_diagnostics(config);
  EXPECT_GE(report.tau_vs_m1, 0.0);
  EXPECT_TRUE(fs::exists(config.outputs / "diagnostics.json"));

  config.p = 1;
  EXPECT_EQ(ktau::run_diagnostics(config).tau_vs_m1, 0.0);

  config.n = ktau::kDiagnosticsMaxN + 1;
  EXPECT_THROW(ktau::run_diagnostics(config), ktau::ValidationError);
  config.diagnostics = true;
  EXPECT_THROW(ktau::run_experiment(config), ktau::ValidationError);
}

TEST(RunExperimentProperty, KsShrinksAsNGrows) {
  ktau::ExperimentConfig small;
  small.n = 400;
  small.p = 100;
  small.replicates = 10;
  small.seed = 1;
  small.outputs = scratch_dir("trend400");
  auto large = small;
  large.n = 1600;
  large.outputs = scratch_dir("trend1600");
  EXPECT_LT(ktau::run_experiment(large).ks_to_limit, ktau::run_experiment(small).ks_to_limit);
}

}  // namespace
