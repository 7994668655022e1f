#include "ktau/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include "CLI11.hpp"

#include "ktau/csv.hpp"
#include "ktau/errors.hpp"
#include "ktau/harness.hpp"
#include "ktau/metrics.hpp"
#include "ktau/mplaw.hpp"
#include "ktau/rankcorr.hpp"
#include "ktau/spectra.hpp"

namespace ktau {

namespace {

using nlohmann::json;

// Flags shared by `simulate` and `diagnose`; unset options leave the config
// file (or default) value alone.
struct ExperimentFlags {
  std::optional<std::size_t> n, p, replicates, bins;
  std::optional<std::string> marginal, law, out, config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool diagnostics = false;

  void attach(CLI::App& cmd, bool full) {
    cmd.add_option("--n", n, "Sample count");
    cmd.add_option("--p", p, "Dimension");
    cmd.add_option("--marginal", marginal, "uniform | gaussian | cauchy | exponential");
    cmd.add_option("--seed", seed, "Master seed");
    cmd.add_option("--threads", threads, "Worker threads (0 = all)");
    cmd.add_option("--out", out, "Output directory");
    cmd.add_option("--config", config, "JSON config file");
    if (full) {
      cmd.add_option("--replicates", replicates, "Independent replicates");
      cmd.add_option("--bins", bins, "Histogram bins");
      cmd.add_option("--law", law, "kendall_affine | standard_mp | auto");
      cmd.add_flag("--diagnostics", diagnostics, "Also compute decomposition residuals");
    }
  }

  ExperimentConfig resolve() const {
    ExperimentConfig c;
    if (config) c = load_config(*config, c);
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) c.outputs = env;
    if (n) c.n = *n;
    if (p) c.p = *p;
    if (replicates) c.replicates = *replicates;
    if (bins) c.bins = *bins;
    if (marginal) c.marginal = parse_marginal(*marginal);
    if (law) c.law = parse_law(*law);
    if (seed) c.seed = *seed;
    if (threads) c.threads = *threads;
    if (out) c.outputs = *out;
    if (diagnostics) c.diagnostics = true;
    c.validate();
    return c;
  }
};

void emit_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *path + "' for writing");
  file << text;
  if (!file) throw IoError("failed writing '" + *path + "'");
}

std::string matrix_text(const Matrix& m) {
  std::string text;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) text += ',';
      text += csv::format_double(m(r, c));
    }
    text += '\n';
  }
  return text;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kendall tau spectra against the Marchenko-Pastur law", "ktau"};
  app.require_subcommand(1);

  ExperimentFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded spectrum experiment");
  sim_flags.attach(*simulate, true);

  ExperimentFlags diag_flags;
  auto* diagnose = app.add_subcommand("diagnose", "Decomposition residual statistics");
  diag_flags.attach(*diagnose, false);

  std::string tau_input;
  std::optional<std::string> tau_out;
  unsigned tau_threads = 0;
  auto* tau = app.add_subcommand("tau", "Kendall tau matrix of a CSV data matrix");
  tau->add_option("--input", tau_input, "n x p data CSV")->required();
  tau->add_option("--out", tau_out, "Output CSV (default stdout)");
  tau->add_option("--threads", tau_threads, "Worker threads (0 = all)");

  std::string spec_input;
  std::optional<std::string> spec_out;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of a symmetric CSV matrix");
  spectrum->add_option("--input", spec_input, "p x p symmetric matrix CSV")->required();
  spectrum->add_option("--out", spec_out, "Output CSV (default stdout)");

  std::string law_name = "kendall_affine";
  double law_gamma = 0.5;
  std::size_t law_points = 401;
  std::optional<double> law_lo, law_hi;
  std::optional<std::string> law_out;
  auto* law = app.add_subcommand("law", "Tabulate the limit law density and CDF");
  law->add_option("--law", law_name, "kendall_affine | standard_mp | auto");
  law->add_option("--gamma", law_gamma, "Ratio p/n")->required();
  law->add_option("--points", law_points, "Number of grid points");
  law->add_option("--lo", law_lo, "Grid start (default: support start)");
  law->add_option("--hi", law_hi, "Grid end (default: support end)");
  law->add_option("--out", law_out, "Output CSV (default stdout)");

  std::string cmp_esd;
  std::optional<std::string> cmp_against, cmp_law;
  std::optional<double> cmp_gamma;
  auto* compare = app.add_subcommand("compare", "KS and Levy distance between spectra or to a law");
  compare->add_option("--esd", cmp_esd, "Eigenvalue CSV")->required();
  compare->add_option("--against", cmp_against, "Second eigenvalue CSV");
  compare->add_option("--law", cmp_law, "kendall_affine | standard_mp | auto");
  compare->add_option("--gamma", cmp_gamma, "Ratio p/n for --law");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*simulate) {
      const ExperimentResult result = run_experiment(sim_flags.resolve());
      out << json{{"summary", result.summary_path.string()},
                  {"ks_to_limit", result.ks_to_limit},
                  {"levy_to_limit", result.levy_to_limit}}
                 .dump()
          << '\n';
    } else if (*diagnose) {
      const DecompositionReport report = run_diagnostics(diag_flags.resolve());
      out << to_json(report).dump() << '\n';
    } else if (*tau) {
      const DataMatrix data = csv::read_data(tau_input);
      emit_text(tau_out, matrix_text(tau_matrix(data, tau_threads).matrix()), out);
    } else if (*spectrum) {
      const SpectralDistribution dist = eigenvalues_symmetric(csv::read_matrix(spec_input));
      if (spec_out) {
        csv::write_eigenvalues(*spec_out, dist.eigenvalues());
      } else {
        out << "eigenvalue\n";
        for (double v : dist.eigenvalues()) out << csv::format_double(v) << '\n';
      }
    } else if (*law) {
      if (law_points < 2) throw ValidationError("law: need at least 2 points");
      const LimitLaw limit = reference_law(parse_law(law_name), law_gamma);
      const auto [s_lo, s_hi] = limit.support();
      const double lo = law_lo.value_or(s_lo);
      const double hi = law_hi.value_or(s_hi);
      if (!(lo < hi)) throw ValidationError("law: need lo < hi");
      std::string text = "x,density,cdf\n";
      for (std::size_t k = 0; k < law_points; ++k) {
        const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(law_points - 1);
        text += csv::format_double(x) + ',' + csv::format_double(limit.density(x)) + ',' +
                csv::format_double(limit.cdf(x)) + '\n';
      }
      emit_text(law_out, text, out);
    } else if (*compare) {
      if (cmp_against.has_value() == (cmp_law.has_value() || cmp_gamma.has_value())) {
        throw ValidationError("compare: give either --against or --law with --gamma");
      }
      const CdfFunction lhs = CdfFunction::empirical(csv::read_eigenvalues(cmp_esd));
      std::optional<CdfFunction> rhs;
      if (cmp_against) {
        rhs = CdfFunction::empirical(csv::read_eigenvalues(*cmp_against));
      } else {
        if (!cmp_law || !cmp_gamma) throw ValidationError("compare: --law needs --gamma");
        rhs = CdfFunction::of(reference_law(parse_law(*cmp_law), *cmp_gamma));
      }
      out << json{{"ks", ks_distance(lhs, *rhs)}, {"levy", levy_distance(lhs, *rhs, 1e-7)}}.dump() << '\n';
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace ktau
