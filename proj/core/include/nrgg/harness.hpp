#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nrgg/clique.hpp"
#include "nrgg/model.hpp"
#include "nrgg/theory.hpp"

namespace nrgg {

enum class Measure { Omega, EdgeOmegaLong, MW1, MW3, MWHalf, WscpSize, DenoisePR };
std::string to_string(Measure m);
Measure parse_measure(const std::string& text);

/// q as a function of the instance:
///   const:<v>                       q = v
///   pow:<e> or pow:n^<e>            q = n^e
///   scaled:<c> or scaled:(nr^d/logn)^<c>   q = (n r^d / ln n)^c
struct QRule {
  enum class Kind { Const, Pow, Scaled };
  Kind kind = Kind::Const;
  double value = 0.0;
  std::string text = "const:0";

  static QRule parse(const std::string& text);
  /// ArgumentError if the value leaves [0, 1).
  double eval(double n, double nrd) const;
};

struct ExperimentConfig {
  PerturbModel model = PerturbModel::InsertionOnly;
  Regime regime = Regime::Supercritical;
  std::string case_tag;  // empty: inferred per row with unit constants
  std::vector<std::size_t> n_list;
  int d = 2;
  Norm norm = Norm::L2;
  double p = 0.0;
  QRule q_rule;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::set<Measure> measures{Measure::Omega};
  double alpha = 0.0;
  double t = 0.0;
  ThermoSchedule schedule;
  std::uint64_t node_budget = 1'000'000'000ULL;
  std::string denoise_threshold = "auto";

  /// Parses the JSON config format; unknown keys are rejected.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  std::string to_json_text() const;
  /// ArgumentError on an invalid configuration.
  void validate() const;
  RegimeParams regime_params(std::size_t n) const;
};

/// Largest n accepted for pure Erdős–Rényi and for geometric sweeps.
inline constexpr std::size_t kMaxDenseN = 4096;
inline constexpr std::size_t kMaxGeometricN = std::size_t{1} << 16;

struct TrialRow {
  std::size_t n = 0;
  int d = 2;
  double r = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> omega;
  std::optional<std::size_t> omega_base;
  std::optional<std::size_t> mw1, mw3, mwhalf;
  std::optional<std::size_t> long_edges;
  std::optional<double> precision, recall;
  std::optional<double> lower_pred, upper_pred;
  bool timeout = false;
  std::int64_t wall_ms = 0;

  // Reported in the summary only.
  std::optional<std::size_t> max_long_edge_omega;
  std::optional<std::size_t> wscp_size;
  std::vector<Vertex> witness;
};

/// Seeds: trial = mix(master, n, index); cloud = mix(trial, 1); perturbation = mix(trial, 2).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, std::size_t trial_index);

/// Regenerates the trial's perturbed graph (same seeds as run_trial).
PerturbedGraph trial_graph(const ExperimentConfig& cfg, std::size_t n, std::size_t trial_index);

TrialRow run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial_index);

enum class Scaling { NRD, LogNRD, Log1QN, ThermoInsertion, ThermoDeletion, One };
std::string to_string(Scaling s);
Scaling parse_scaling(const std::string& text);
/// Scaling function matching the configured model and case.
Scaling default_scaling(PerturbModel model, const std::string& case_tag);
double scaling_value(Scaling s, const TrialRow& row);

struct RatioFit {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double spread = 0.0;  // max/min over per-n mean ratios
};

/// Rows without omega (timeouts) are skipped. ArgumentError with fewer than
/// two distinct n; DomainError if the scaling is not positive on some row.
RatioFit ratio_fit(const std::vector<TrialRow>& rows, Scaling scaling);

inline constexpr const char* kCsvHeader =
    "n,r,p,q,seed,omega,omega_base,mw1,mw3,mwhalf,long_edges,precision,recall,lower_pred,upper_pred,wall_ms";

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows);

struct SweepResult {
  std::vector<TrialRow> rows;
  std::string summary_json;
  bool any_timeout = false;
};

/// Runs every (n, trial) in a pool of `threads` workers (0: hardware
/// concurrency) and returns rows ordered by n then trial.
std::vector<TrialRow> run_rows(const ExperimentConfig& cfg, unsigned threads = 1);

/// Summary: per-n statistics, ratio fit, pass rates against the prediction band.
std::string summarize(const ExperimentConfig& cfg, const std::vector<TrialRow>& rows);

/// Writes the CSV to `out_path` and the summary to `<out_path>.summary.json`;
/// optional SVG plot. IoError when a file cannot be written.
SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& out_path, unsigned threads = 1,
                      const std::string& svg_path = "");

/// Log-x plot of mean ω per n with the mean prediction band.
void write_svg(std::ostream& out, const ExperimentConfig& cfg, const std::vector<TrialRow>& rows);

}  // namespace nrgg
