#include "nrgg/theory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "nrgg/errors.hpp"

namespace nrgg {

double H(double a) {
  if (!(a >= 0.0)) throw ArgumentError("H: argument must be >= 0");
  if (a == 0.0) return 1.0;
  return 1.0 - a + a * std::log(a);
}

namespace {

void check_tail_args(double mu, double k) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ArgumentError("tail bound: mu must be positive");
  if (!(k >= mu)) throw ArgumentError("tail bound: requires k >= mu");
}

constexpr int kMaxIterations = 200;
constexpr double kResidual = 1e-10;

// Bisection for an increasing f on [lo, hi] with f(lo) <= 0 < f(hi).
template <class F>
double bisect(F f, double lo, double hi, const char* what) {
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (std::abs(v) < kResidual) return mid;
    if (v > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw NumericError(std::string(what) + ": bisection did not converge");
}

// floor() that tolerates representation error just below an integer, so
// that e.g. ln 1024 / ln 2 floors to 10.
double robust_floor(double x) { return std::floor(x * (1.0 + 1e-12) + 1e-12); }

}  // namespace

TailSandwich binomial_tail_sandwich(double mu, double k) {
  check_tail_args(mu, k);
  return {std::pow(mu / (std::numbers::e * k), k), std::pow(std::numbers::e * mu / k, k)};
}

double chernoff_tail(double mu, double k) {
  check_tail_args(mu, k);
  return std::exp(-mu * H(k / mu));
}

double solve_eta(double t, int d, double theta) {
  if (!(t > 0.0) || !(theta > 0.0) || d < 1) throw ArgumentError("solve_eta: needs t > 0, theta > 0, d >= 1");
  const double c = theta * std::pow(0.5, d);
  const double target = 1.0 / (c * t);
  auto f = [&](double x) { return H(x / c) - target; };
  double hi = 2.0 * c;
  int grow = 0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (++grow > 2000 || !std::isfinite(hi)) throw NumericError("solve_eta: could not bracket the root");
  }
  return bisect(f, c, hi, "solve_eta");
}

double solve_tau_rhs(double rhs) {
  if (!std::isfinite(rhs)) throw ArgumentError("solve_tau: right-hand side must be finite");
  auto f = [&](double tau) { return tau * (std::log(tau) - 1.0) - rhs; };
  if (2.0 * (std::numbers::ln2 - 1.0) >= rhs) return 2.0;
  // τ(ln τ − 1) is increasing for τ > 1 and vanishes at e.
  double lo = rhs >= 0.0 ? std::numbers::e : 2.0;
  double hi = 2.0 * std::numbers::e;
  int grow = 0;
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 2000 || !std::isfinite(hi)) throw NumericError("solve_tau: could not bracket the root");
  }
  return bisect(f, lo, hi, "solve_tau");
}

double solve_tau(double t, int d, double theta) {
  if (!(t > 0.0) || !(theta > 0.0) || d < 1) throw ArgumentError("solve_tau: needs t > 0, theta > 0, d >= 1");
  return solve_tau_rhs(4.0 / (std::pow(2.0, d) * theta * t));
}

double T_threshold(int d, double theta) {
  if (!(theta > 0.0) || d < 1) throw ArgumentError("T_threshold: needs theta > 0, d >= 1");
  return 40.0 * std::pow(2.0, d) / theta;
}

double m_w_bound(Window window, const RegimeParams& params, double n, double r) {
  if (window == Window::Half) throw ArgumentError("m_w_bound: only W1 and W3 have occupancy bounds");
  const double c = window == Window::W1 ? 2.0 : 6.0;
  const double theta = unit_ball_volume(params.d, params.norm);
  const double nrd = n * std::pow(r, params.d);
  switch (params.regime) {
    case Regime::Subcritical:
      if (!(params.alpha > 0.0)) throw ArgumentError("m_w_bound: subcritical bound needs alpha > 0");
      return std::ceil(4.0 / params.alpha);
    case Regime::Thermodynamic: {
      if (!(n > 1.0)) throw DomainError("m_w_bound: n must exceed 1");
      const double ln_n = std::log(n);
      const double inner = ln_n / (params.sigma * theta * std::pow(c, params.d) * nrd);
      if (!(inner > 1.0)) {
        throw DomainError("m_w_bound: log(log n / (sigma theta c^d n r^d)) <= 0; regime violated at this n");
      }
      return 5.0 * ln_n / std::log(inner);
    }
    case Regime::Supercritical: {
      const double tau = solve_tau(params.t, params.d, theta);
      return tau * std::pow(c, params.d) * theta * params.sigma * nrd;
    }
  }
  throw ArgumentError("m_w_bound: unknown regime");
}

std::string to_string(PerturbModel model) {
  switch (model) {
    case PerturbModel::InsertionOnly: return "INSERTION_ONLY";
    case PerturbModel::DeletionOnly: return "DELETION_ONLY";
    case PerturbModel::Combined: return "COMBINED";
    case PerturbModel::ErdosRenyi: return "ER_ONLY";
  }
  return "?";
}

PerturbModel parse_model(const std::string& text) {
  std::string u;
  for (char c : text) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (u == "INSERTION_ONLY" || u == "INSERTION") return PerturbModel::InsertionOnly;
  if (u == "DELETION_ONLY" || u == "DELETION") return PerturbModel::DeletionOnly;
  if (u == "COMBINED") return PerturbModel::Combined;
  if (u == "ER_ONLY" || u == "ER") return PerturbModel::ErdosRenyi;
  throw ArgumentError("unknown model '" + text + "'");
}

std::string_view to_string(ConditionStatus status) noexcept {
  switch (status) {
    case ConditionStatus::Satisfied: return "SATISFIED";
    case ConditionStatus::Violated: return "VIOLATED";
    case ConditionStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

double InstanceParams::nrd() const { return n * std::pow(r, d); }
double InstanceParams::resolved_theta() const { return theta > 0.0 ? theta : unit_ball_volume(d, norm); }
double InstanceParams::resolved_t() const { return t > 0.0 ? t : sigma * nrd() / std::log(n); }

std::vector<std::string> case_tags(PerturbModel model) {
  switch (model) {
    case PerturbModel::InsertionOnly: return {"I.a", "I.b", "II.a", "II.b", "III"};
    case PerturbModel::DeletionOnly: return {"I", "II", "III"};
    case PerturbModel::Combined: return {"I.a", "I.b", "II.a", "II.b", "III.a", "III.b"};
    case PerturbModel::ErdosRenyi: return {"ER"};
  }
  return {};
}

namespace {

// Combines checkable parts of a case condition; unknown parts keep the
// status at UNKNOWN unless something checkable fails.
struct Conditions {
  bool violated = false;
  bool unknown = false;
  std::string text;

  void check(bool ok, const std::string& what) {
    add(what);
    violated |= !ok;
  }
  void unchecked(const std::string& what) {
    add(what + " (constant unspecified)");
    unknown = true;
  }
  void add(const std::string& what) {
    if (!text.empty()) text += "; ";
    text += what;
  }
  ConditionStatus status() const {
    if (violated) return ConditionStatus::Violated;
    return unknown ? ConditionStatus::Unknown : ConditionStatus::Satisfied;
  }
};

double log_base(double x, double base_inv) {
  // log_{1/base_inv} x with base_inv in (0,1).
  return std::log(x) / std::log(1.0 / base_inv);
}

void require_q(const InstanceParams& p, const char* tag) {
  if (!(p.q > 0.0 && p.q < 1.0)) throw ArgumentError(std::string("case ") + tag + " needs 0 < q < 1");
}

void require_p(const InstanceParams& p) {
  if (!(p.p > 0.0 && p.p < 1.0)) throw ArgumentError("deletion formulas need 0 < p < 1");
}

void require_alpha(const InstanceParams& p) {
  if (!(p.alpha > 0.0)) throw ArgumentError("subcritical formulas need alpha > 0");
}

double thermo_log_ratio(const InstanceParams& p) {
  const double ln_n = std::log(p.n);
  const double ratio = ln_n / p.nrd();
  if (!(ratio > 1.0)) throw DomainError("log(log n / n r^d) <= 0: not in the thermodynamic regime");
  return std::log(ratio);
}

struct Band {
  double lower;
  double upper;
  bool lower_scaling;
  bool upper_scaling;
  std::string provenance;
};

Band deletion_band(char regime, const InstanceParams& p, Conditions& cond) {
  require_p(p);
  const double lp = std::log(1.0 / (1.0 - p.p));
  const double ln_n = std::log(p.n);
  const double nrd = p.nrd();
  switch (regime) {
    case '1': {
      require_alpha(p);
      cond.check(nrd <= std::pow(p.n, -p.alpha), "n r^d <= n^-alpha");
      return {1.0, std::ceil(4.0 / p.alpha), false, false,
              "deletion-only subcritical: omega <= M_W1 <= ceil(4/alpha)"};
    }
    case '2': {
      const double l = thermo_log_ratio(p);
      cond.check(nrd < ln_n, "n r^d < log n");
      const double phi = ln_n / (2.0 * l);
      const double lower = std::max(1.0, robust_floor(std::log(phi) / lp));
      const double upper = 2.0 * std::log(ln_n / l) / lp + 1.0;
      return {lower, std::max(upper, lower), false, false,
              "deletion-only thermodynamic: k_n = floor(log_{1/(1-p)} Phi_n), Phi_n = log n/(2 log(log n/nr^d)); "
              "upper k_n = 2 log_{1/(1-p)}(log n/log(log n/nr^d)) + 1"};
    }
    default: {
      const double theta = p.resolved_theta();
      const double T = T_threshold(p.d, theta);
      const bool dense = p.sigma * nrd >= T * ln_n;
      cond.check(dense, "sigma n r^d >= T log n (lower bound)");
      double lower = 1.0;
      if (dense) {
        const double arg = p.sigma * theta * nrd / std::pow(2.0, p.d + 3);
        lower = std::max(1.0, robust_floor(std::log(arg) / lp));
      }
      const double upper = 3.0 * std::log(nrd) / lp;
      return {lower, std::max(upper, lower), false, false,
              "deletion-only supercritical: upper k_n = 3 log_{1/(1-p)} n r^d; lower needs sigma n r^d >= T log n"};
    }
  }
}

}  // namespace

OmegaPrediction predict_omega(PerturbModel model, const std::string& case_tag, const InstanceParams& p) {
  const auto tags = case_tags(model);
  if (std::find(tags.begin(), tags.end(), case_tag) == tags.end()) {
    throw ArgumentError("case '" + case_tag + "' is not valid for model " + to_string(model));
  }
  if (!(p.n >= 3.0)) throw ArgumentError("predict_omega: n must be >= 3");
  if (model != PerturbModel::ErdosRenyi && !(p.r > 0.0)) throw ArgumentError("predict_omega: r must be > 0");

  OmegaPrediction out;
  out.model = model;
  out.case_tag = case_tag;
  Conditions cond;
  const double ln_n = std::log(p.n);
  const double nrd = p.nrd();
  Band band{};

  auto er_like = [&](const char* tag, const std::string& prov) {
    require_q(p, tag);
    const double lq = log_base(p.n, p.q);
    const double lower = std::max(1.0, robust_floor(lq));
    return Band{lower, std::max(lq, lower), false, true, prov};
  };

  switch (model) {
    case PerturbModel::InsertionOnly: {
      if (case_tag == "I.a") {
        require_alpha(p);
        cond.check(nrd <= std::pow(p.n, -p.alpha), "n r^d <= n^-alpha");
        if (p.q == 0.0) {
          cond.add("q = 0");
        } else {
          cond.unchecked("q <= (1/n)^C1");
        }
        band = {1.0, std::ceil(4.0 / p.alpha), false, true, "insertion-only subcritical, sparse q: omega ~ 1"};
      } else if (case_tag == "I.b" || case_tag == "II.b") {
        if (case_tag == "I.b") {
          require_alpha(p);
          cond.check(nrd <= std::pow(p.n, -p.alpha), "n r^d <= n^-alpha");
        } else {
          cond.check(nrd < ln_n, "n r^d < log n");
        }
        cond.unchecked("q above the sparse threshold and q <= C2");
        band = er_like(case_tag.c_str(), "insertion-only, dense q: omega ~ log_{1/q} n; lower floor(log_{1/q} n)");
      } else if (case_tag == "II.a") {
        const double l = thermo_log_ratio(p);
        cond.check(nrd < ln_n, "n r^d < log n");
        if (p.q == 0.0) {
          cond.add("q = 0");
        } else {
          cond.unchecked("q <= (n r^d / log n)^C1");
        }
        const double lower = ln_n / (2.0 * l);
        band = {lower, std::max(ln_n / l, lower), false, true,
                "insertion-only thermodynamic: omega >= log n/(2 log(log n/nr^d)), omega ~ log n/log(log n/nr^d)"};
      } else {  // III
        const double t = p.resolved_t();
        if (p.q == 0.0) {
          cond.add("q = 0");
        } else {
          cond.unchecked("q <= C1");
        }
        const double eta = solve_eta(t, p.d, p.resolved_theta());
        const double lower = 0.5 * eta * p.sigma * nrd;
        band = {lower, std::max(nrd, lower), false, true,
                "insertion-only supercritical: omega >= (eta/2) sigma n r^d, omega ~ n r^d"};
      }
      break;
    }
    case PerturbModel::DeletionOnly: {
      band = deletion_band(case_tag == "I" ? '1' : case_tag == "II" ? '2' : '3', p, cond);
      if (p.q != 0.0) cond.check(false, "q = 0");
      break;
    }
    case PerturbModel::Combined: {
      const char regime = case_tag[0] == 'I' && case_tag[1] == 'I' && case_tag[2] == 'I' ? '3'
                          : case_tag[0] == 'I' && case_tag[1] == 'I'                  ? '2'
                                                                                      : '1';
      // Monotonicity: the deletion-only lower bound carries over.
      const Band del = deletion_band(regime, p, cond);
      double scaling = 1.0;
      std::string prov;
      if (case_tag == "I.a") {
        cond.unchecked("q <= (1/n)^C1");
        scaling = 1.0;
        prov = "combined subcritical, sparse q: omega ~ 1";
      } else if (case_tag == "II.a") {
        const double l = thermo_log_ratio(p);
        cond.unchecked("q <= (1/n)^(C1 / log(log n/log(log n/nr^d)))");
        scaling = std::log(ln_n / l);
        prov = "combined thermodynamic, sparse q: omega ~ log(log n/log(log n/nr^d))";
      } else if (case_tag == "III.a") {
        cond.unchecked("q <= (1/n)^(C1/log log n) log log n/log n");
        scaling = std::log(nrd);
        prov = "combined supercritical, sparse q: omega ~ log(n r^d)";
      } else {
        require_q(p, case_tag.c_str());
        cond.unchecked("q above the sparse threshold and q <= C2");
        scaling = log_base(p.n, p.q);
        prov = "combined, dense q: omega ~ log_{1/q} n";
      }
      band = {del.lower, std::max(scaling, del.lower), false, true, prov + "; lower from the deletion-only bound"};
      break;
    }
    case PerturbModel::ErdosRenyi: {
      require_q(p, "ER");
      const double lo = std::pow(1.0 / p.n, 1.0 / 11.0);
      const double hi = std::pow(1.0 / p.n, 1.0 / std::pow(p.n, 0.25));
      cond.check(lo <= p.q && p.q <= hi, "(1/n)^(1/11) <= q <= (1/n)^(1/n^(1/4))");
      const double lq = log_base(p.n, p.q);
      const double lower = robust_floor(lq);
      band = {lower, std::max(2.0 * lq, lower), false, true, "Erdos-Renyi: omega > floor(log_{1/q} n); omega ~ 2 log_{1/q} n"};
      break;
    }
  }
  out.lower = band.lower;
  out.upper = band.upper;
  out.lower_scaling_only = band.lower_scaling;
  out.upper_scaling_only = band.upper_scaling;
  out.condition = cond.status();
  out.condition_text = cond.text;
  out.provenance = band.provenance;
  return out;
}

std::string infer_case(PerturbModel model, Regime regime, const InstanceParams& p) {
  const double ln_n = std::log(p.n);
  switch (model) {
    case PerturbModel::ErdosRenyi:
      return "ER";
    case PerturbModel::DeletionOnly:
      return regime == Regime::Subcritical ? "I" : regime == Regime::Thermodynamic ? "II" : "III";
    case PerturbModel::InsertionOnly:
      if (regime == Regime::Subcritical) return p.q <= 1.0 / p.n ? "I.a" : "I.b";
      if (regime == Regime::Thermodynamic) return p.q <= p.nrd() / ln_n ? "II.a" : "II.b";
      return "III";
    case PerturbModel::Combined:
      if (regime == Regime::Subcritical) return p.q <= 1.0 / p.n ? "I.a" : "I.b";
      if (regime == Regime::Thermodynamic) {
        const double l = std::log(ln_n / p.nrd());
        const double cut = std::pow(1.0 / p.n, 1.0 / std::log(ln_n / l));
        return p.q <= cut ? "II.a" : "II.b";
      }
      {
        const double lln = std::log(ln_n);
        const double cut = std::pow(1.0 / p.n, 1.0 / lln) * lln / ln_n;
        return p.q <= cut ? "III.a" : "III.b";
      }
  }
  return "";
}

PerturbModel model_for(double p, double q) {
  if (p == 0.0) return PerturbModel::InsertionOnly;
  if (q == 0.0) return PerturbModel::DeletionOnly;
  return PerturbModel::Combined;
}

}  // namespace nrgg
