#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ktau/datagen.hpp"
#include "ktau/hoeffding.hpp"
#include "ktau/mplaw.hpp"

namespace ktau {

// Which matrix/law pair an experiment compares.
//   KendallAffine: spectrum of τ against (2/3)Y + 1/3.
//   StandardMp:    spectrum of (3/2)τ - (1/2)I against Y.
//   Auto:          same as KendallAffine.
enum class LawChoice { KendallAffine, StandardMp, Auto };

std::string to_string(LawChoice law);
LawChoice parse_law(const std::string& name);

struct ExperimentConfig {
  std::size_t n = 200;
  std::size_t p = 100;
  Marginal marginal = Marginal::Uniform01;
  std::uint64_t seed = 0;
  std::size_t replicates = 1;
  std::size_t bins = 60;
  LawChoice law = LawChoice::KendallAffine;
  std::filesystem::path outputs = "results";
  // 0 selects every hardware thread. Results do not depend on it.
  unsigned threads = 0;
  // Also compute the decomposition residuals for replicate 0.
  bool diagnostics = false;

  double gamma_hat() const { return static_cast<double>(p) / static_cast<double>(n); }
  // Throws ValidationError.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

nlohmann::json to_json(const DecompositionReport& report);

struct ReplicateResult {
  std::uint64_t seed = 0;
  double ks = 0.0;
  double levy = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  double gamma_hat = 0.0;
  std::filesystem::path eigenvalues_path;
  std::filesystem::path histogram_path;
  std::filesystem::path density_path;
  std::filesystem::path summary_path;
  // Medians over replicates.
  double ks_to_limit = 0.0;
  double levy_to_limit = 0.0;
  std::vector<ReplicateResult> replicates;
  std::optional<DecompositionReport> decomposition;
  double wall_time_seconds = 0.0;
};

// Seed of replicate r: the master seed for r = 0, otherwise a SplitMix64
// mix of (master, r).
std::uint64_t replicate_seed(std::uint64_t master, std::size_t replicate);

// The law an experiment compares against at ratio gamma.
LimitLaw reference_law(LawChoice law, double gamma);

// Generates data, computes τ, its spectrum and the KS/Lévy distances to the
// reference law at γ̂ = p/n for every replicate. Replicate 0's spectrum is
// written to eigenvalues.csv/histogram.csv alongside density.csv and
// summary.json in config.outputs.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Upper limit on n for the decomposition diagnostics.
inline constexpr std::size_t kDiagnosticsMaxN = 2000;

// Residual statistics for the config's seed; writes diagnostics.json.
DecompositionReport run_diagnostics(const ExperimentConfig& config);

nlohmann::json summary_json(const ExperimentResult& result);

}  // namespace ktau
