#include "ktau/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "ktau/csv.hpp"
#include "ktau/errors.hpp"
#include "ktau/metrics.hpp"
#include "ktau/rankcorr.hpp"
#include "ktau/spectra.hpp"

namespace ktau {

using nlohmann::json;

std::string to_string(LawChoice law) {
  switch (law) {
    case LawChoice::KendallAffine: return "kendall_affine";
    case LawChoice::StandardMp: return "standard_mp";
    case LawChoice::Auto: return "auto";
  }
  return "auto";
}

LawChoice parse_law(const std::string& name) {
  if (name == "kendall_affine") return LawChoice::KendallAffine;
  if (name == "standard_mp") return LawChoice::StandardMp;
  if (name == "auto") return LawChoice::Auto;
  throw ValidationError("unknown law '" + name + "' (expected kendall_affine, standard_mp or auto)");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw ValidationError("config: n must be at least 2");
  if (p < 1) throw ValidationError("config: p must be at least 1");
  if (replicates < 1) throw ValidationError("config: replicates must be at least 1");
  if (bins < 1) throw ValidationError("config: bins must be at least 1");
  if (outputs.empty()) throw ValidationError("config: outputs directory must be set");
}

json to_json(const ExperimentConfig& c) {
  return json{{"n", c.n},
              {"p", c.p},
              {"marginal", std::string(to_string(c.marginal))},
              {"seed", c.seed},
              {"replicates", c.replicates},
              {"bins", c.bins},
              {"law", to_string(c.law)},
              {"outputs", c.outputs.string()},
              {"threads", c.threads},
              {"diagnostics", c.diagnostics}};
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n") c.n = value.get<std::size_t>();
      else if (key == "p") c.p = value.get<std::size_t>();
      else if (key == "marginal") c.marginal = parse_marginal(value.get<std::string>());
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "replicates") c.replicates = value.get<std::size_t>();
      else if (key == "bins") c.bins = value.get<std::size_t>();
      else if (key == "law") c.law = parse_law(value.get<std::string>());
      else if (key == "outputs") c.outputs = value.get<std::string>();
      else if (key == "threads") c.threads = value.get<unsigned>();
      else if (key == "diagnostics") c.diagnostics = value.get<bool>();
      else throw ValidationError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(j, std::move(base));
}

json to_json(const DecompositionReport& r) {
  return json{{"m1_residual_diag", r.m1_residual_diag},
              {"m1_residual_cross", r.m1_residual_cross},
              {"tau_vs_m1", r.tau_vs_m1},
              {"m2_frobenius", r.m2_frobenius},
              {"m3_frobenius", r.m3_frobenius},
              {"n", r.n},
              {"p", r.p},
              {"seed", r.seed}};
}

std::uint64_t replicate_seed(std::uint64_t master, std::size_t replicate) {
  if (replicate == 0) return master;
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(replicate) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

LimitLaw reference_law(LawChoice law, double gamma) {
  return law == LawChoice::StandardMp ? LimitLaw::standard(gamma) : LimitLaw::kendall(gamma);
}

namespace {

constexpr double kLevyTolerance = 1e-7;
constexpr std::size_t kCurvePoints = 512;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.diagnostics && config.n > kDiagnosticsMaxN) {
    throw ValidationError("diagnostics requested but n exceeds " + std::to_string(kDiagnosticsMaxN));
  }
  const auto started = std::chrono::steady_clock::now();
  ensure_directory(config.outputs);

  ExperimentResult result;
  result.config = config;
  result.gamma_hat = config.gamma_hat();
  const LimitLaw law = reference_law(config.law, result.gamma_hat);
  const CdfFunction law_cdf = CdfFunction::of(law);

  std::optional<SpectralDistribution> first;
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const std::uint64_t seed = replicate_seed(config.seed, r);
    const DataMatrix data = generate_samples(config.n, config.p, config.marginal, seed, config.threads);
    const CorrelationMatrix tau = tau_matrix(data, config.threads);
    const Matrix& target = config.law == LawChoice::StandardMp ? rescale_tau(tau) : tau.matrix();
    SpectralDistribution esd = eigenvalues_symmetric(target);
    const CdfFunction esd_cdf = CdfFunction::of(esd);

    ReplicateResult rep;
    rep.seed = seed;
    rep.ks = ks_distance(esd_cdf, law_cdf);
    rep.levy = levy_distance(esd_cdf, law_cdf, kLevyTolerance);
    rep.min_eigenvalue = esd.min();
    rep.max_eigenvalue = esd.max();
    result.replicates.push_back(rep);

    if (r == 0) {
      if (config.diagnostics) result.decomposition = residual_report(data, config.threads);
      first.emplace(std::move(esd));
    }
  }

  std::vector<double> ks, levy;
  for (const auto& rep : result.replicates) {
    ks.push_back(rep.ks);
    levy.push_back(rep.levy);
  }
  result.ks_to_limit = median(ks);
  result.levy_to_limit = median(levy);

  // Plot range: union of the law's support (and atom) with the observed spectrum.
  auto [lo, hi] = law.support();
  if (law.point_mass() > 0.0) lo = std::min(lo, law.atom_location());
  lo = std::min(lo, first->min());
  hi = std::max(hi, first->max());
  const double pad = 0.02 * (hi - lo);
  lo -= pad;
  hi += pad;

  result.eigenvalues_path = config.outputs / "eigenvalues.csv";
  result.histogram_path = config.outputs / "histogram.csv";
  result.density_path = config.outputs / "density.csv";
  result.summary_path = config.outputs / "summary.json";

  csv::write_eigenvalues(result.eigenvalues_path, first->eigenvalues());
  csv::write_histogram(result.histogram_path, histogram(*first, config.bins, lo, hi));
  std::vector<csv::CurvePoint> curve(kCurvePoints);
  for (std::size_t k = 0; k < kCurvePoints; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kCurvePoints - 1);
    curve[k] = {x, law.density(x)};
  }
  csv::write_density(result.density_path, curve);

  result.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_json(result.summary_path, summary_json(result));
  return result;
}

DecompositionReport run_diagnostics(const ExperimentConfig& config) {
  config.validate();
  if (config.n > kDiagnosticsMaxN) {
    throw ValidationError("diagnostics: n = " + std::to_string(config.n) + " exceeds the limit of " +
                          std::to_string(kDiagnosticsMaxN));
  }
  ensure_directory(config.outputs);
  const DataMatrix data = generate_samples(config.n, config.p, config.marginal, config.seed, config.threads);
  const DecompositionReport report = residual_report(data, config.threads);
  write_json(config.outputs / "diagnostics.json", json{{"config", to_json(config)}, {"decomposition", to_json(report)}});
  return report;
}

json summary_json(const ExperimentResult& r) {
  const LimitLaw law = reference_law(r.config.law, r.gamma_hat);
  const auto [lo, hi] = law.support();
  json reps = json::array();
  for (std::size_t i = 0; i < r.replicates.size(); ++i) {
    const auto& rep = r.replicates[i];
    reps.push_back({{"index", i},
                    {"seed", rep.seed},
                    {"ks", rep.ks},
                    {"levy", rep.levy},
                    {"min_eigenvalue", rep.min_eigenvalue},
                    {"max_eigenvalue", rep.max_eigenvalue}});
  }
  json j{{"config", to_json(r.config)},
         {"gamma_hat", r.gamma_hat},
         {"law",
          {{"kind", to_string(r.config.law)},
           {"gamma", law.gamma()},
           {"scale", law.scale()},
           {"shift", law.shift()},
           {"support", {lo, hi}},
           {"point_mass", law.point_mass()}}},
         {"ks_to_limit", r.ks_to_limit},
         {"levy_to_limit", r.levy_to_limit},
         {"replicates", reps},
         {"files",
          {{"eigenvalues", r.eigenvalues_path.filename().string()},
           {"histogram", r.histogram_path.filename().string()},
           {"density", r.density_path.filename().string()}}},
         {"wall_time_seconds", r.wall_time_seconds}};
  if (r.decomposition) j["decomposition"] = to_json(*r.decomposition);
  return j;
}

}  // namespace ktau
