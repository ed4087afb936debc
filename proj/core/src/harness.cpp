#include "nrgg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nrgg/errors.hpp"
#include "nrgg/graph_io.hpp"
#include "nrgg/scan.hpp"
#include "nrgg/wscp.hpp"

namespace nrgg {

using nlohmann::json;

std::string to_string(Measure m) {
  switch (m) {
    case Measure::Omega: return "OMEGA";
    case Measure::EdgeOmegaLong: return "EDGE_OMEGA_LONG";
    case Measure::MW1: return "M_W1";
    case Measure::MW3: return "M_W3";
    case Measure::MWHalf: return "M_W_HALF";
    case Measure::WscpSize: return "WSCP_SIZE";
    case Measure::DenoisePR: return "DENOISE_PR";
  }
  return "?";
}

Measure parse_measure(const std::string& text) {
  for (Measure m : {Measure::Omega, Measure::EdgeOmegaLong, Measure::MW1, Measure::MW3, Measure::MWHalf,
                    Measure::WscpSize, Measure::DenoisePR}) {
    if (to_string(m) == text) return m;
  }
  throw ArgumentError("unknown measure '" + text + "'");
}

namespace {

double parse_number(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ArgumentError("bad number '" + text + "' in " + context);
  }
  return v;
}

std::string strip_prefix(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
}

}  // namespace

QRule QRule::parse(const std::string& text) {
  QRule rule;
  rule.text = text;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError("q_rule must look like kind:value, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (kind == "const") {
    rule.kind = Kind::Const;
    rule.value = parse_number(rest, "q_rule");
    if (!(rule.value >= 0.0 && rule.value < 1.0)) throw ArgumentError("q_rule const value must lie in [0,1)");
  } else if (kind == "pow") {
    rule.kind = Kind::Pow;
    rule.value = parse_number(strip_prefix(rest, "n^"), "q_rule");
  } else if (kind == "scaled") {
    rule.kind = Kind::Scaled;
    rule.value = parse_number(strip_prefix(rest, "(nr^d/logn)^"), "q_rule");
  } else {
    throw ArgumentError("unknown q_rule kind '" + kind + "'");
  }
  return rule;
}

double QRule::eval(double n, double nrd) const {
  double q = 0.0;
  switch (kind) {
    case Kind::Const: q = value; break;
    case Kind::Pow: q = std::pow(n, value); break;
    case Kind::Scaled: q = std::pow(nrd / std::log(n), value); break;
  }
  if (!(q >= 0.0 && q < 1.0)) {
    throw ArgumentError("q_rule '" + text + "' gives q = " + format_real(q) + " outside [0,1) at n = " + format_real(n));
  }
  return q;
}

namespace {

const std::set<std::string> kConfigKeys = {"model", "regime", "case",   "n_list",      "d",
                                           "norm",  "p",      "q_rule", "trials",      "master_seed",
                                           "measures", "alpha", "t",    "schedule",    "node_budget",
                                           "denoise_threshold", "description"};

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.count(key)) throw ArgumentError("unknown config key '" + key + "'");
  }
  for (const char* key : {"model", "n_list", "d", "norm", "p", "q_rule", "trials", "master_seed", "measures"}) {
    if (!j.contains(key)) throw ArgumentError(std::string("config lacks '") + key + "'");
  }
  ExperimentConfig cfg;
  cfg.model = parse_model(get_as<std::string>(j, "model"));
  if (j.contains("regime")) {
    cfg.regime = parse_regime(get_as<std::string>(j, "regime"));
  } else if (cfg.model != PerturbModel::ErdosRenyi) {
    throw ArgumentError("config lacks 'regime'");
  }
  if (j.contains("case")) cfg.case_tag = get_as<std::string>(j, "case");
  cfg.n_list = get_as<std::vector<std::size_t>>(j, "n_list");
  cfg.d = get_as<int>(j, "d");
  cfg.norm = parse_norm(get_as<std::string>(j, "norm"));
  cfg.p = get_as<double>(j, "p");
  cfg.q_rule = QRule::parse(get_as<std::string>(j, "q_rule"));
  cfg.trials = get_as<std::size_t>(j, "trials");
  if (j.at("master_seed").is_string()) {
    const std::string s = j.at("master_seed").get<std::string>();
    try {
      std::size_t used = 0;
      cfg.master_seed = std::stoull(s, &used, 0);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ArgumentError("config key 'master_seed': bad integer '" + s + "'");
    }
  } else {
    cfg.master_seed = get_as<std::uint64_t>(j, "master_seed");
  }
  cfg.measures.clear();
  for (const auto& m : get_as<std::vector<std::string>>(j, "measures")) cfg.measures.insert(parse_measure(m));
  if (j.contains("alpha")) cfg.alpha = get_as<double>(j, "alpha");
  if (j.contains("t")) cfg.t = get_as<double>(j, "t");
  if (j.contains("schedule")) cfg.schedule = ThermoSchedule::parse(get_as<std::string>(j, "schedule"));
  if (j.contains("node_budget")) cfg.node_budget = get_as<std::uint64_t>(j, "node_budget");
  if (j.contains("denoise_threshold")) cfg.denoise_threshold = get_as<std::string>(j, "denoise_threshold");
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["model"] = to_string(model);
  if (model != PerturbModel::ErdosRenyi) j["regime"] = to_string(regime);
  if (!case_tag.empty()) j["case"] = case_tag;
  j["n_list"] = n_list;
  j["d"] = d;
  j["norm"] = std::string(to_string(norm));
  j["p"] = p;
  j["q_rule"] = q_rule.text;
  j["trials"] = trials;
  j["master_seed"] = master_seed;
  std::vector<std::string> m;
  for (Measure x : measures) m.push_back(to_string(x));
  j["measures"] = m;
  if (alpha > 0.0) j["alpha"] = alpha;
  if (t > 0.0) j["t"] = t;
  j["schedule"] = schedule.descriptor;
  j["node_budget"] = node_budget;
  j["denoise_threshold"] = denoise_threshold;
  return j.dump(2);
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw ArgumentError("n_list must be nonempty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 3) throw ArgumentError("n_list entries must be >= 3");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ArgumentError("n_list must be strictly ascending");
  }
  const std::size_t cap = model == PerturbModel::ErdosRenyi ? kMaxDenseN : kMaxGeometricN;
  if (n_list.back() > cap) throw ArgumentError("n exceeds the cap of " + std::to_string(cap) + " for this model");
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  if (d < 1) throw ArgumentError("d must be >= 1");
  if (!(p >= 0.0 && p < 1.0)) throw ArgumentError("p must lie in [0,1)");
  if (measures.empty()) throw ArgumentError("measures must be nonempty");
  if (node_budget == 0) throw ArgumentError("node_budget must be positive");
  switch (model) {
    case PerturbModel::InsertionOnly:
      if (p != 0.0) throw ArgumentError("INSERTION_ONLY requires p = 0");
      break;
    case PerturbModel::DeletionOnly:
      if (p == 0.0) throw ArgumentError("DELETION_ONLY requires p > 0");
      if (q_rule.kind != QRule::Kind::Const || q_rule.value != 0.0) {
        throw ArgumentError("DELETION_ONLY requires q_rule const:0");
      }
      break;
    case PerturbModel::Combined:
      if (p == 0.0) throw ArgumentError("COMBINED requires p > 0");
      break;
    case PerturbModel::ErdosRenyi:
      for (Measure m : measures) {
        if (m != Measure::Omega) throw ArgumentError("ER_ONLY supports only the OMEGA measure");
      }
      break;
  }
  if (!case_tag.empty()) {
    const auto tags = case_tags(model);
    if (std::find(tags.begin(), tags.end(), case_tag) == tags.end()) {
      throw ArgumentError("case '" + case_tag + "' is not valid for model " + to_string(model));
    }
  }
  if (model != PerturbModel::ErdosRenyi) {
    RegimeParams rp = regime_params(n_list.front());
    rp.validate();
    if (regime == Regime::Thermodynamic && !thermo_schedule_consistent(schedule, n_list)) {
      throw ArgumentError("thermodynamic schedule is not within (0, log n) and non-increasing relative to log n");
    }
  }
  (void)DenoiseThreshold::parse(denoise_threshold);
}

RegimeParams ExperimentConfig::regime_params(std::size_t n) const {
  RegimeParams rp;
  rp.regime = regime;
  rp.alpha = alpha;
  rp.t = t;
  rp.schedule = schedule;
  rp.n = n;
  rp.d = d;
  rp.norm = norm;
  rp.sigma = 1.0;  // uniform cube
  return rp;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, std::size_t trial_index) {
  return mix(master_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial_index));
}

namespace {

struct TrialInstance {
  std::shared_ptr<const GeometricGraph> base;
  PerturbedGraph graph;
  double q;
  std::uint64_t seed;
};

TrialInstance make_instance(const ExperimentConfig& cfg, std::size_t n, std::size_t trial_index) {
  const std::uint64_t seed = trial_seed(cfg.master_seed, n, trial_index);
  PointCloud cloud = sample_uniform_cube(n, cfg.d, mix(seed, 1));
  std::shared_ptr<const GeometricGraph> base;
  double nrd = 0.0;
  if (cfg.model == PerturbModel::ErdosRenyi) {
    base = std::make_shared<GeometricGraph>(empty_geometric_graph(std::move(cloud), cfg.norm));
  } else {
    const double r = radius_for_regime(cfg.regime_params(n));
    nrd = static_cast<double>(n) * std::pow(r, cfg.d);
    base = std::make_shared<GeometricGraph>(build_geometric_graph(std::move(cloud), r, cfg.norm));
  }
  const double q = cfg.q_rule.eval(static_cast<double>(n), nrd);
  const double p = cfg.model == PerturbModel::ErdosRenyi ? 0.0 : cfg.p;
  PerturbedGraph g = perturb(base, p, q, mix(seed, 2));
  return {base, std::move(g), q, seed};
}

InstanceParams instance_params(const ExperimentConfig& cfg, const TrialRow& row) {
  InstanceParams ip;
  ip.n = static_cast<double>(row.n);
  ip.r = row.r;
  ip.d = cfg.d;
  ip.norm = cfg.norm;
  ip.sigma = 1.0;
  ip.p = row.p;
  ip.q = row.q;
  ip.alpha = cfg.alpha;
  ip.t = cfg.regime == Regime::Supercritical ? cfg.t : 0.0;
  return ip;
}

std::string row_case(const ExperimentConfig& cfg, const InstanceParams& ip) {
  return cfg.case_tag.empty() ? infer_case(cfg.model, cfg.regime, ip) : cfg.case_tag;
}

}  // namespace

PerturbedGraph trial_graph(const ExperimentConfig& cfg, std::size_t n, std::size_t trial_index) {
  return make_instance(cfg, n, trial_index).graph;
}

TrialRow run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial_index) {
  const auto start = std::chrono::steady_clock::now();
  TrialInstance inst = make_instance(cfg, n, trial_index);
  const PerturbedGraph& g = inst.graph;
  const GeometricGraph& base = *inst.base;

  TrialRow row;
  row.n = n;
  row.d = cfg.d;
  row.r = base.r;
  row.p = g.p();
  row.q = inst.q;
  row.seed = inst.seed;

  const InstanceParams ip = instance_params(cfg, row);
  try {
    const auto pred = predict_omega(cfg.model, row_case(cfg, ip), ip);
    row.lower_pred = pred.lower;
    row.upper_pred = pred.upper;
  } catch (const NumericError&) {
    // Formula outside its domain at this n: leave the columns empty.
  } catch (const ArgumentError&) {
  }

  CliqueOptions opts;
  opts.node_budget = cfg.node_budget;
  const auto& m = cfg.measures;

  if (m.count(Measure::Omega)) {
    try {
      const auto res = max_clique(g.graph(), opts);
      row.omega = res.size;
      row.witness = res.witness;
    } catch (const BudgetExceeded&) {
      row.timeout = true;
    }
    try {
      row.omega_base = geometric_clique(base, opts).size;
    } catch (const BudgetExceeded&) {
      row.timeout = true;
    }
  }

  std::vector<Edge> longs;
  const bool need_long = m.count(Measure::EdgeOmegaLong) || m.count(Measure::DenoisePR);
  if (need_long) {
    longs = long_edges(g);
    row.long_edges = longs.size();
  }
  if (m.count(Measure::EdgeOmegaLong)) {
    try {
      std::size_t best = 0;
      for (const auto& [u, v] : longs) best = std::max(best, edge_clique_number(g.graph(), u, v, opts));
      if (!longs.empty()) row.max_long_edge_omega = best;
    } catch (const BudgetExceeded&) {
      row.timeout = true;
    }
  }

  if (base.r > 0.0) {
    const PointSet& pts = base.cloud.points;
    if (m.count(Measure::MW1)) row.mw1 = scan_point_centered(pts, base.norm, base.r).value;
    if (m.count(Measure::MW3)) row.mw3 = scan_point_centered(pts, base.norm, 3.0 * base.r).value;
    if (m.count(Measure::MWHalf)) row.mwhalf = scan_point_centered(pts, base.norm, 0.5 * base.r).value;
    if (m.count(Measure::WscpSize)) row.wscp_size = build_wscp(base).size();
  }

  if (m.count(Measure::DenoisePR)) {
    try {
      const auto thr = DenoiseThreshold::parse(cfg.denoise_threshold);
      const auto result = denoise(g, thr, cfg.regime_params(n), opts);
      const auto score = score_denoise(result.removed, longs);
      row.precision = score.precision;
      row.recall = score.recall;
    } catch (const BudgetExceeded&) {
      row.timeout = true;
    }
  }

  row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string to_string(Scaling s) {
  switch (s) {
    case Scaling::NRD: return "NRD";
    case Scaling::LogNRD: return "LOG_NRD";
    case Scaling::Log1QN: return "LOG_1_Q_N";
    case Scaling::ThermoInsertion: return "THERMO_INS";
    case Scaling::ThermoDeletion: return "THERMO_DEL";
    case Scaling::One: return "ONE";
  }
  return "?";
}

Scaling parse_scaling(const std::string& text) {
  for (Scaling s : {Scaling::NRD, Scaling::LogNRD, Scaling::Log1QN, Scaling::ThermoInsertion, Scaling::ThermoDeletion,
                    Scaling::One}) {
    if (to_string(s) == text) return s;
  }
  throw ArgumentError("unknown scaling '" + text + "'");
}

Scaling default_scaling(PerturbModel model, const std::string& case_tag) {
  switch (model) {
    case PerturbModel::ErdosRenyi: return Scaling::Log1QN;
    case PerturbModel::InsertionOnly:
      if (case_tag == "I.a") return Scaling::One;
      if (case_tag == "II.a") return Scaling::ThermoInsertion;
      if (case_tag == "III") return Scaling::NRD;
      return Scaling::Log1QN;
    case PerturbModel::DeletionOnly:
      if (case_tag == "I") return Scaling::One;
      if (case_tag == "II") return Scaling::ThermoDeletion;
      return Scaling::LogNRD;
    case PerturbModel::Combined:
      if (case_tag == "I.a") return Scaling::One;
      if (case_tag == "II.a") return Scaling::ThermoDeletion;
      if (case_tag == "III.a") return Scaling::LogNRD;
      return Scaling::Log1QN;
  }
  return Scaling::One;
}

double scaling_value(Scaling s, const TrialRow& row) {
  const double n = static_cast<double>(row.n);
  const double nrd = n * std::pow(row.r, row.d);
  const double ln_n = std::log(n);
  switch (s) {
    case Scaling::NRD: return nrd;
    case Scaling::LogNRD: return std::log(nrd);
    case Scaling::Log1QN: return row.q > 0.0 ? ln_n / std::log(1.0 / row.q) : 0.0;
    case Scaling::ThermoInsertion: return ln_n / std::log(ln_n / nrd);
    case Scaling::ThermoDeletion: return std::log(ln_n / std::log(ln_n / nrd));
    case Scaling::One: return 1.0;
  }
  return 0.0;
}

RatioFit ratio_fit(const std::vector<TrialRow>& rows, Scaling scaling) {
  std::map<std::size_t, std::pair<double, std::size_t>> per_n;
  RatioFit fit;
  fit.min_ratio = std::numeric_limits<double>::infinity();
  fit.max_ratio = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& row : rows) {
    if (!row.omega) continue;
    const double s = scaling_value(scaling, row);
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DomainError("ratio_fit: scaling " + to_string(scaling) + " is not positive at n = " + std::to_string(row.n));
    }
    const double ratio = static_cast<double>(*row.omega) / s;
    fit.min_ratio = std::min(fit.min_ratio, ratio);
    fit.max_ratio = std::max(fit.max_ratio, ratio);
    total += ratio;
    ++count;
    auto& slot = per_n[row.n];
    slot.first += ratio;
    slot.second += 1;
  }
  if (per_n.size() < 2) throw ArgumentError("ratio_fit needs rows with at least two distinct n");
  fit.mean_ratio = total / static_cast<double>(count);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& [n, acc] : per_n) {
    const double mean = acc.first / static_cast<double>(acc.second);
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
  }
  fit.spread = hi / lo;
  return fit;
}

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*v);
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << format_real(r.r) << ',' << format_real(r.p) << ',' << format_real(r.q) << ',' << r.seed << ','
        << (r.timeout && !r.omega ? std::string("TIMEOUT") : cell(r.omega)) << ','
        << cell(r.omega_base) << ',' << cell(r.mw1) << ',' << cell(r.mw3) << ',' << cell(r.mwhalf) << ','
        << cell(r.long_edges) << ',' << cell(r.precision) << ',' << cell(r.recall) << ',' << cell(r.lower_pred) << ','
        << cell(r.upper_pred) << ',' << r.wall_ms << '\n';
  }
}

std::vector<TrialRow> run_rows(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t n : cfg.n_list) {
    for (std::size_t t = 0; t < cfg.trials; ++t) tasks.emplace_back(n, t);
  }
  std::vector<TrialRow> rows(tasks.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        rows[i] = run_trial(cfg, tasks[i].first, tasks[i].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

namespace {

json stats(const std::vector<double>& xs) {
  if (xs.empty()) return nullptr;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return {{"mean", sum / static_cast<double>(xs.size())},
          {"min", *std::min_element(xs.begin(), xs.end())},
          {"max", *std::max_element(xs.begin(), xs.end())},
          {"count", xs.size()}};
}

}  // namespace

std::string summarize(const ExperimentConfig& cfg, const std::vector<TrialRow>& rows) {
  json s;
  s["config"] = json::parse(cfg.to_json_text());
  s["rows"] = rows.size();
  std::size_t timeouts = 0;
  for (const auto& r : rows) timeouts += r.timeout ? 1 : 0;
  s["timeouts"] = timeouts;

  std::string case_tag = cfg.case_tag;
  if (case_tag.empty() && !rows.empty()) case_tag = row_case(cfg, instance_params(cfg, rows.front()));
  s["case"] = case_tag;
  const Scaling scaling = default_scaling(cfg.model, case_tag);
  s["scaling"] = to_string(scaling);

  const bool strict_lower = cfg.model == PerturbModel::ErdosRenyi;
  std::size_t lower_checked = 0, lower_pass = 0, upper_checked = 0, upper_pass = 0, monotone_violations = 0;
  json per_n = json::array();
  for (std::size_t n : cfg.n_list) {
    std::vector<double> omega, omega_base, mw1, mw3, mwhalf, longs, prec, rec, lower, upper, long_omega, wscp, ratio;
    for (const auto& r : rows) {
      if (r.n != n) continue;
      if (r.omega) {
        omega.push_back(static_cast<double>(*r.omega));
        const double sv = scaling_value(scaling, r);
        if (sv > 0.0 && std::isfinite(sv)) ratio.push_back(static_cast<double>(*r.omega) / sv);
        if (r.lower_pred) {
          ++lower_checked;
          const double w = static_cast<double>(*r.omega);
          if (strict_lower ? w > *r.lower_pred : w >= *r.lower_pred) ++lower_pass;
        }
        if (r.upper_pred) {
          ++upper_checked;
          if (static_cast<double>(*r.omega) <= *r.upper_pred) ++upper_pass;
        }
        if (r.omega_base && *r.omega > *r.omega_base && cfg.model == PerturbModel::DeletionOnly) ++monotone_violations;
      }
      if (r.omega_base) omega_base.push_back(static_cast<double>(*r.omega_base));
      if (r.mw1) mw1.push_back(static_cast<double>(*r.mw1));
      if (r.mw3) mw3.push_back(static_cast<double>(*r.mw3));
      if (r.mwhalf) mwhalf.push_back(static_cast<double>(*r.mwhalf));
      if (r.long_edges) longs.push_back(static_cast<double>(*r.long_edges));
      if (r.precision) prec.push_back(*r.precision);
      if (r.recall) rec.push_back(*r.recall);
      if (r.lower_pred) lower.push_back(*r.lower_pred);
      if (r.upper_pred) upper.push_back(*r.upper_pred);
      if (r.max_long_edge_omega) long_omega.push_back(static_cast<double>(*r.max_long_edge_omega));
      if (r.wscp_size) wscp.push_back(static_cast<double>(*r.wscp_size));
    }
    json entry = {{"n", n}};
    auto put = [&](const char* key, const std::vector<double>& xs) {
      if (!xs.empty()) entry[key] = stats(xs);
    };
    put("omega", omega);
    put("omega_base", omega_base);
    put("ratio", ratio);
    put("mw1", mw1);
    put("mw3", mw3);
    put("mwhalf", mwhalf);
    put("long_edges", longs);
    put("max_long_edge_omega", long_omega);
    put("wscp_size", wscp);
    put("precision", prec);
    put("recall", rec);
    put("lower_pred", lower);
    put("upper_pred", upper);
    per_n.push_back(entry);
  }
  s["per_n"] = per_n;
  s["lower_pass_rate"] = lower_checked ? json(static_cast<double>(lower_pass) / static_cast<double>(lower_checked)) : json(nullptr);
  s["upper_pass_rate"] = upper_checked ? json(static_cast<double>(upper_pass) / static_cast<double>(upper_checked)) : json(nullptr);
  if (cfg.model == PerturbModel::DeletionOnly) s["deletion_monotone_violations"] = monotone_violations;
  try {
    const RatioFit fit = ratio_fit(rows, scaling);
    s["ratio_fit"] = {{"min_ratio", fit.min_ratio}, {"max_ratio", fit.max_ratio}, {"mean_ratio", fit.mean_ratio},
                      {"spread", fit.spread}};
  } catch (const std::exception&) {
    s["ratio_fit"] = nullptr;
  }
  return s.dump(2);
}

SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& out_path, unsigned threads,
                      const std::string& svg_path) {
  SweepResult result;
  std::ofstream csv(out_path);
  if (!csv) throw IoError("cannot open '" + out_path + "' for writing");
  result.rows = run_rows(cfg, threads);
  write_csv(csv, result.rows);
  if (!csv) throw IoError("write to '" + out_path + "' failed");
  result.summary_json = summarize(cfg, result.rows);
  const std::string summary_path = out_path + ".summary.json";
  std::ofstream summary(summary_path);
  if (!summary) throw IoError("cannot open '" + summary_path + "' for writing");
  summary << result.summary_json << '\n';
  for (const auto& r : result.rows) result.any_timeout |= r.timeout;
  if (!svg_path.empty()) {
    std::ofstream svg(svg_path);
    if (!svg) throw IoError("cannot open '" + svg_path + "' for writing");
    write_svg(svg, cfg, result.rows);
  }
  return result;
}

void write_svg(std::ostream& out, const ExperimentConfig& cfg, const std::vector<TrialRow>& rows) {
  struct Point {
    double n, omega, lower, upper;
    bool has_lower, has_upper;
  };
  std::vector<Point> pts;
  for (std::size_t n : cfg.n_list) {
    double w = 0, lo = 0, hi = 0;
    std::size_t cw = 0, cl = 0, ch = 0;
    for (const auto& r : rows) {
      if (r.n != n) continue;
      if (r.omega) w += static_cast<double>(*r.omega), ++cw;
      if (r.lower_pred) lo += *r.lower_pred, ++cl;
      if (r.upper_pred) hi += *r.upper_pred, ++ch;
    }
    if (cw == 0) continue;
    pts.push_back({static_cast<double>(n), w / cw, cl ? lo / cl : 0.0, ch ? hi / ch : 0.0, cl > 0, ch > 0});
  }
  const double W = 640, Hh = 400, margin = 50;
  double xmin = std::log(static_cast<double>(cfg.n_list.front()));
  double xmax = std::log(static_cast<double>(cfg.n_list.back()));
  if (xmax <= xmin) xmax = xmin + 1.0;
  double ymax = 1.0;
  for (const auto& p : pts) {
    ymax = std::max({ymax, p.omega, p.has_upper ? p.upper : 0.0, p.has_lower ? p.lower : 0.0});
  }
  ymax *= 1.1;
  auto X = [&](double n) { return margin + (std::log(n) - xmin) / (xmax - xmin) * (W - 2 * margin); };
  auto Y = [&](double v) { return Hh - margin - v / ymax * (Hh - 2 * margin); };
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", margin,
                Hh - margin, W - margin, Hh - margin);
  out << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", margin, margin,
                margin, Hh - margin);
  out << buf;
  out << "<text x=\"" << W / 2 << "\" y=\"" << Hh - 10 << "\" text-anchor=\"middle\">n (log scale)</text>\n";
  out << "<text x=\"12\" y=\"" << Hh / 2 << "\" transform=\"rotate(-90 12 " << Hh / 2 << ")\">omega</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\">" << to_string(cfg.model) << ' '
      << cfg.case_tag << "</text>\n";
  auto polyline = [&](auto value, auto has, const char* color, const char* dash) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-dasharray=\"" << dash << "\" points=\"";
    for (const auto& p : pts) {
      if (!has(p)) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(p.n), Y(value(p)));
      out << buf;
    }
    out << "\"/>\n";
  };
  polyline([](const Point& p) { return p.lower; }, [](const Point& p) { return p.has_lower; }, "steelblue", "4 3");
  polyline([](const Point& p) { return p.upper; }, [](const Point& p) { return p.has_upper; }, "firebrick", "4 3");
  polyline([](const Point& p) { return p.omega; }, [](const Point&) { return true; }, "black", "none");
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\"/>\n", X(p.n), Y(p.omega));
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\" text-anchor=\"middle\">%.0f</text>\n",
                  X(p.n), Hh - margin + 14, p.n);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace nrgg
