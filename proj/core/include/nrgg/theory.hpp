#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nrgg/geometry.hpp"
#include "nrgg/model.hpp"
#include "nrgg/scan.hpp"

namespace nrgg {

/// H(a) = 1 − a + a ln a with H(0) = 1. ArgumentError for a < 0.
double H(double a);

struct TailSandwich {
  double lower;
  double upper;
};

/// ((mu/(e k))^k, (e mu/k)^k) for k >= mu > 0.
TailSandwich binomial_tail_sandwich(double mu, double k);

/// exp(−mu H(k/mu)) for k >= mu > 0.
double chernoff_tail(double mu, double k);

/// Unique x >= c = θ/2^d with H(x/c) = 1/(c t).
double solve_eta(double t, int d, double theta);

/// Smallest τ >= 2 with τ(ln τ − 1) >= 4/(2^d θ t).
double solve_tau(double t, int d, double theta);
/// Same with the right-hand side given directly.
double solve_tau_rhs(double rhs);

/// 10·2^d/((1−ρ)(1−δ′)θ) at ρ = δ′ = 1/2, i.e. 40·2^d/θ.
double T_threshold(int d, double theta);

/// Occupancy-lemma bound on M_W for the regime of `params` at (n, r).
/// Only W1 and W3 have bounds. Thermodynamic: DomainError when the outer logarithm is not positive.
double m_w_bound(Window window, const RegimeParams& params, double n, double r);

enum class PerturbModel { InsertionOnly, DeletionOnly, Combined, ErdosRenyi };
std::string to_string(PerturbModel model);
PerturbModel parse_model(const std::string& text);

enum class ConditionStatus { Satisfied, Violated, Unknown };
std::string_view to_string(ConditionStatus status) noexcept;

/// Instance parameters consumed by the prediction formulas.
struct InstanceParams {
  double n = 0;
  double r = 0;
  int d = 2;
  double sigma = 1.0;
  double theta = 0.0;  // 0 means "derive from norm"
  Norm norm = Norm::L2;
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;  // subcritical exponent, needed for the ⌈4/α⌉ bands
  double t = 0.0;      // supercritical constant, needed for η; defaults to σnr^d/ln n

  double nrd() const;
  double resolved_theta() const;
  double resolved_t() const;
};

struct OmegaPrediction {
  PerturbModel model;
  std::string case_tag;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_scaling_only = false;
  bool upper_scaling_only = false;
  ConditionStatus condition = ConditionStatus::Unknown;
  std::string condition_text;
  std::string provenance;
};

/// Case tags accepted for a model.
std::vector<std::string> case_tags(PerturbModel model);

/// Lower/upper clique-number predictions for the model and case. Explicit
/// constants are used where they are known; elsewhere the scaling function
/// with unit constant is returned and flagged. Scaling uppers are raised to
/// the lower value so that lower <= upper always holds.
OmegaPrediction predict_omega(PerturbModel model, const std::string& case_tag, const InstanceParams& params);

/// Case tag matching the regime with unit constants in the q-conditions.
std::string infer_case(PerturbModel model, Regime regime, const InstanceParams& params);

/// Model implied by (p, q): p = 0 → insertion only, q = 0 → deletion only.
PerturbModel model_for(double p, double q);

}  // namespace nrgg
