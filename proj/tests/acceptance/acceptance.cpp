// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "nrgg/clique.hpp"
#include "nrgg/errors.hpp"
#include "nrgg/harness.hpp"
#include "nrgg/rng.hpp"
#include "nrgg/scan.hpp"
#include "nrgg/theory.hpp"
#include "nrgg/wscp.hpp"
#include "oracles.hpp"

using namespace nrgg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentConfig config(const std::string& json) { return ExperimentConfig::from_json_text(json); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

// 1
Outcome clique_oracle() {
  std::size_t agree = 0, total = 0;
  std::mt19937_64 gen(0xC11);
  const double densities[] = {0.2, 0.5, 0.8};
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 6 + gen() % 13;
    const auto g = oracle::erdos_renyi(n, densities[i % 3], gen());
    const auto res = max_clique(g);
    total++;
    agree += res.size == oracle::enumeration_clique_number(g) && oracle::is_clique(g, res.witness) &&
             res.witness.size() == res.size;
  }
  return {agree == total, fmt("%zu/%zu graphs match enumeration", agree, total)};
}

// 2
Outcome builder_exactness() {
  std::size_t same = 0;
  std::mt19937_64 gen(0xB01);
  const Norm norms[] = {Norm::L1, Norm::L2, Norm::LInf};
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 3;
    const Norm norm = norms[(i / 3) % 3];
    const std::size_t n = 100 + gen() % 1901;
    // Mean degree between about 5 and 40.
    const double degree = 5 + static_cast<double>(gen() % 36);
    const double r = std::pow(degree / (static_cast<double>(n) * unit_ball_volume(d, norm)), 1.0 / d);
    const auto cloud = sample_uniform_cube(n, d, gen());
    const auto g = build_geometric_graph(cloud, r, norm);
    same += g.adjacency.edges() == oracle::brute_force_edges(cloud.points, r, norm);
  }
  return {same == 50, fmt("%zu/50 instances identical to brute force", same)};
}

// 3
Outcome tail_sandwich() {
  std::size_t points = 0, ok = 0;
  for (double mu : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (double k = std::ceil(mu); k <= 25; ++k) {
      const auto s = binomial_tail_sandwich(mu, k);
      const double ch = chernoff_tail(mu, k);
      std::vector<double> exact;
      exact.push_back(boost::math::cdf(boost::math::complement(boost::math::poisson_distribution<>(mu), k - 1)));
      for (double n : {50.0, 200.0, 1000.0, 10000.0}) {
        exact.push_back(
            boost::math::cdf(boost::math::complement(boost::math::binomial_distribution<>(n, mu / n), k - 1)));
      }
      for (double e : exact) {
        ++points;
        ok += s.lower <= e && e <= s.upper && e <= ch;
      }
    }
  }
  return {ok == points, fmt("%zu/%zu (mu, k, law) points inside the sandwich and below Chernoff", ok, points)};
}

// 4
Outcome er_lower_bound() {
  const auto cfg = config(R"({"model":"ER_ONLY","n_list":[1024],"d":1,"norm":"L2","p":0,"q_rule":"const:0.5",
      "trials":100,"master_seed":4,"measures":["OMEGA"]})");
  std::vector<Vertex> all(1024);
  std::iota(all.begin(), all.end(), 0);
  std::size_t above = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto g = trial_graph(cfg, 1024, i);
    // ω > 10 iff an 11-clique exists.
    above += has_clique_of_size(g.graph(), all, 11);
  }
  return {above >= 95, fmt("omega > 10 in %zu/100 trials", above)};
}

// 5
Outcome insertion_supercritical() {
  const auto cfg = config(R"({"model":"INSERTION_ONLY","regime":"SUPERCRITICAL","case":"III","t":5,
      "n_list":[1024,2048,4096,8192],"d":2,"norm":"L2","p":0,"q_rule":"pow:n^-0.5","trials":20,"master_seed":5,
      "measures":["OMEGA"]})");
  const auto rows = run_rows(cfg, 0);
  std::size_t ok = 0;
  for (const auto& r : rows) ok += r.omega && *r.omega >= *r.lower_pred;
  const double rate = static_cast<double>(ok) / static_cast<double>(rows.size());
  const auto fit = ratio_fit(rows, Scaling::NRD);
  return {rate >= 0.9 && fit.spread <= 2.0,
          fmt("lower bound held in %zu/%zu rows (%.3f), omega/nr^2 spread %.4f (mean ratio %.4f)", ok, rows.size(),
              rate, fit.spread, fit.mean_ratio)};
}

// 6
Outcome insertion_thermodynamic() {
  const auto cfg = config(R"({"model":"INSERTION_ONLY","regime":"THERMO","case":"II.a","schedule":"default",
      "n_list":[8192,16384,32768,65536],"d":2,"norm":"L2","p":0,"q_rule":"const:0","trials":50,"master_seed":6,
      "measures":["OMEGA"]})");
  const auto rows = run_rows(cfg, 0);
  std::size_t ok = 0;
  for (const auto& r : rows) ok += r.omega && static_cast<double>(*r.omega) >= std::floor(*r.lower_pred);
  const double rate = static_cast<double>(ok) / static_cast<double>(rows.size());
  return {rate >= 0.9, fmt("omega >= floor(log n/(2 log(log n/nr^2))) in %zu/%zu rows (%.3f)", ok, rows.size(), rate)};
}

// 7
Outcome deletion(std::size_t trials) {
  // LInf in d = 2: theta = 4 and T = 40, so t slightly above 40 puts sigma n r^d above T log n.
  auto cfg = config(R"({"model":"DELETION_ONLY","regime":"SUPERCRITICAL","case":"III","t":40.004,
      "n_list":[4096,8192,16384,32768],"d":2,"norm":"LINF","p":0.5,"q_rule":"const:0","trials":1,"master_seed":7,
      "measures":["OMEGA"]})");
  cfg.trials = trials;
  const auto rows = run_rows(cfg, 0);

  // Coupling also checked on a thermodynamic sweep.
  const auto thermo = config(R"({"model":"DELETION_ONLY","regime":"THERMO","case":"II","n_list":[4096,16384,65536],"d":2,
      "norm":"L2","p":0.5,"q_rule":"const:0","trials":10,"master_seed":7,"measures":["OMEGA"]})");
  const auto extra = run_rows(thermo, 0);
  std::size_t coupled = 0, total = 0;
  for (const std::vector<TrialRow>* set : {&rows, &extra}) {
    for (const auto& r : *set) {
      ++total;
      coupled += r.omega && r.omega_base && *r.omega <= *r.omega_base;
    }
  }
  std::size_t under = 0, dense = 0;
  for (const auto& r : rows) {
    const double nrd = static_cast<double>(r.n) * r.r * r.r;
    dense += nrd >= T_threshold(2, 4.0) * std::log(static_cast<double>(r.n));
    under += r.omega && static_cast<double>(*r.omega) <= 1.5 * 3.0 * std::log2(nrd);
  }
  const double rate = static_cast<double>(under) / static_cast<double>(rows.size());
  const auto fit = ratio_fit(rows, Scaling::LogNRD);
  return {coupled == total && dense == rows.size() && rate >= 0.95 && fit.spread <= 2.5,
          fmt("omega <= omega_base in %zu/%zu rows; %zu/%zu rows above T log n; omega <= 4.5 log2(nr^2) in %zu/%zu "
              "(%.3f); omega/ln(nr^2) spread %.4f (mean ratio %.4f); %zu trials per n",
              coupled, total, dense, rows.size(), under, rows.size(), rate, fit.spread, fit.mean_ratio, trials)};
}

// 8
Outcome occupancy() {
  std::size_t sub_ok = 0, sup_ok = 0;
  const std::size_t n = 10000;
  RegimeParams sub;
  sub.regime = Regime::Subcritical;
  sub.alpha = 0.5;
  sub.n = n;
  RegimeParams sup;
  sup.regime = Regime::Supercritical;
  sup.t = 2;
  sup.n = n;
  const double r_sub = radius_for_regime(sub), r_sup = radius_for_regime(sup);
  const double b_sub = m_w_bound(Window::W3, sub, n, r_sub), b_sup = m_w_bound(Window::W1, sup, n, r_sup);
  std::size_t worst_sub = 0, worst_sup = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto a = occupancy_check(build_geometric_graph(sample_uniform_cube(n, 2, mix(8, s)), r_sub, Norm::L2),
                                   Window::W3, b_sub);
    const auto b = occupancy_check(build_geometric_graph(sample_uniform_cube(n, 2, mix(80, s)), r_sup, Norm::L2),
                                   Window::W1, b_sup);
    sub_ok += a.pass;
    sup_ok += b.pass;
    worst_sub = std::max(worst_sub, a.observed);
    worst_sup = std::max(worst_sup, b.observed);
  }
  return {sub_ok >= 99 && sup_ok >= 99,
          fmt("subcritical M_W3 <= %.0f on %zu/100 (max %zu); supercritical M_W1 <= %.2f on %zu/100 (max %zu)", b_sub,
              sub_ok, worst_sub, b_sup, sup_ok, worst_sup)};
}

// 9
Outcome wscp_invariants() {
  std::size_t ok = 0, separated = 0, max_size = 0;
  std::mt19937_64 gen(0x9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 100 + gen() % 4901;
    const double r = 0.01 + 0.09 * static_cast<double>(gen() % 1000) / 1000.0;
    const auto g = build_geometric_graph(sample_uniform_cube(n, 2, gen()), r, Norm::L2);
    const auto fam = build_wscp(g);
    ok += verify_wscp(fam, g).all_ok();
    separated += cross_clique_edges(fam, g) == 0;
    max_size = std::max(max_size, fam.size());
  }
  return {ok == 100 && separated == 100 && max_size <= 64,
          fmt("verify_wscp all-true on %zu/100; no cross-clique edges on %zu/100; largest family %zu", ok, separated,
              max_size)};
}

// 10
Outcome scan_sandwich() {
  std::size_t ok = 0;
  std::mt19937_64 gen(0x10);
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 2;
    const std::size_t n = 20 + gen() % 481;
    const auto pts = oracle::random_points(n, d, gen());
    const double s = 0.01 + 0.1 * static_cast<double>(gen() % 1000) / 1000.0;
    const auto lo = scan_point_centered(pts, Norm::L2, s).value;
    const auto ex = scan_exact(pts, Norm::L2, s).value;
    const auto hi = scan_point_centered(pts, Norm::L2, 2 * s).value;
    ok += lo <= ex && ex <= hi;
  }
  return {ok == 100, fmt("point_centered(s) <= exact(s) <= point_centered(2s) on %zu/100", ok)};
}

// 11
Outcome denoising() {
  const auto cfg = config(R"({"model":"INSERTION_ONLY","regime":"SUPERCRITICAL","case":"III","t":5,"n_list":[4096],
      "d":2,"norm":"L2","p":0,"q_rule":"pow:n^-0.5","trials":30,"master_seed":11,"measures":["DENOISE_PR"],
      "denoise_threshold":"auto"})");
  const auto rows = run_rows(cfg, 0);
  double p = 0, r = 0;
  for (const auto& row : rows) {
    p += *row.precision;
    r += *row.recall;
  }
  p /= static_cast<double>(rows.size());
  r /= static_cast<double>(rows.size());
  return {p >= 0.9 && r >= 0.9, fmt("mean precision %.4f, mean recall %.4f over %zu trials", p, r, rows.size())};
}

// 12
Outcome determinism(const fs::path& configs, const fs::path& work) {
  const fs::path preset = configs / "deletion_II.json";
  const auto cfg = ExperimentConfig::load(preset.string());
  fs::create_directories(work);
  run_sweep(cfg, (work / "first.csv").string());
  run_sweep(cfg, (work / "second.csv").string(), 0);
  const bool same = without_last_column(slurp(work / "first.csv")) == without_last_column(slurp(work / "second.csv"));
  return {same, fmt("%s run twice: CSV %s excluding wall_ms", preset.filename().string().c_str(),
                    same ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string configs = "configs", work = "acceptance_work";
  std::vector<int> only;
  std::size_t deletion_trials = 2;
  app.add_option("--configs", configs, "directory of shipped presets");
  app.add_option("--work", work, "scratch directory");
  app.add_option("--only", only, "criteria to run (default all)")->delimiter(',');
  app.add_option("--deletion-trials", deletion_trials, "trials per n for criterion 7");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"clique oracle equivalence", clique_oracle},
      {"geometric graph builder exactness", builder_exactness},
      {"tail-bound sandwiches", tail_sandwich},
      {"Erdos-Renyi clique lower bound", er_lower_bound},
      {"insertion-only supercritical", insertion_supercritical},
      {"insertion-only thermodynamic lower bound", insertion_thermodynamic},
      {"deletion-only coupling and supercritical band", [&] { return deletion(deletion_trials); }},
      {"occupancy bounds", occupancy},
      {"clique-partitions family invariants", wscp_invariants},
      {"scan sandwich", scan_sandwich},
      {"long-edge denoising", denoising},
      {"determinism", [&] { return determinism(configs, work); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
