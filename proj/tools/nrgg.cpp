// Command-line front end for the nrgg toolkit.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "nrgg/clique.hpp"
#include "nrgg/errors.hpp"
#include "nrgg/graph_io.hpp"
#include "nrgg/harness.hpp"
#include "nrgg/model.hpp"
#include "nrgg/scan.hpp"
#include "nrgg/theory.hpp"
#include "nrgg/wscp.hpp"

namespace {

using namespace nrgg;

enum Exit : int { kOk = 0, kIo = 1, kArgument = 2, kCapability = 3, kNumeric = 4, kTimeout = 5 };

struct RegimeOpts {
  std::string regime;
  double alpha = 0.0;
  double t = 0.0;
  std::string schedule = "default";

  void add(CLI::App* cmd) {
    cmd->add_option("--regime", regime, "SUBCRITICAL | THERMO | SUPERCRITICAL");
    cmd->add_option("--alpha", alpha, "subcritical exponent (n r^d = n^-alpha)");
    cmd->add_option("--t", t, "supercritical constant (n r^d = t ln n)");
    cmd->add_option("--schedule", schedule, "thermodynamic schedule: default | scale:<c> | logpow:<e>");
  }

  std::optional<RegimeParams> params(std::size_t n, int d, Norm norm) const {
    if (regime.empty()) return std::nullopt;
    RegimeParams rp;
    rp.regime = parse_regime(regime);
    rp.alpha = alpha;
    rp.t = t;
    rp.schedule = ThermoSchedule::parse(schedule);
    rp.n = n;
    rp.d = d;
    rp.norm = norm;
    rp.validate();
    return rp;
  }
};

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return &file;
}

void print_witness(const std::vector<Vertex>& w) {
  std::cout << "witness";
  for (Vertex v : w) std::cout << ' ' << v;
  std::cout << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Noisy random geometric graph toolkit"};
  app.require_subcommand(1);

  // gen
  std::size_t gen_n = 0;
  int gen_d = 2;
  std::string gen_norm = "L2";
  double gen_r = -1.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out, gen_points;
  RegimeOpts gen_regime;
  auto* gen = app.add_subcommand("gen", "sample points in [0,1]^d and build the geometric graph");
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--d", gen_d, "dimension");
  gen->add_option("--norm", gen_norm, "L1 | L2 | LINF");
  gen->add_option("--r", gen_r, "connection radius (or give --regime)");
  gen_regime.add(gen);
  gen->add_option("--seed", gen_seed, "cloud seed");
  gen->add_option("--out", gen_out, "graph file (default stdout)");
  gen->add_option("--points", gen_points, "also write the points as CSV");

  // perturb
  std::string pert_in, pert_out;
  double pert_p = 0.0, pert_q = 0.0;
  std::uint64_t pert_seed = 1;
  auto* pert = app.add_subcommand("perturb", "apply a (p,q)-perturbation to the base graph of a file");
  pert->add_option("--in", pert_in, "graph file")->required();
  pert->add_option("--p", pert_p, "deletion probability");
  pert->add_option("--q", pert_q, "insertion probability");
  pert->add_option("--seed", pert_seed, "perturbation seed");
  pert->add_option("--out", pert_out, "graph file (default stdout)");

  // clique
  std::string cl_in;
  std::vector<Vertex> cl_edge;
  std::uint64_t cl_budget = 1'000'000'000ULL;
  bool cl_witness = false;
  auto* cl = app.add_subcommand("clique", "clique number, or edge clique number with --edge");
  cl->add_option("--in", cl_in, "graph file")->required();
  cl->add_option("--edge", cl_edge, "edge endpoints u v")->expected(2);
  cl->add_option("--budget", cl_budget, "branch node budget");
  cl->add_flag("--witness", cl_witness, "print a maximum clique");

  // scan
  std::string sc_in, sc_method = "centers";
  double sc_radius = 0.0;
  auto* sc = app.add_subcommand("scan", "largest number of points in a ball of the given radius");
  sc->add_option("--in", sc_in, "graph file")->required();
  sc->add_option("--radius", sc_radius, "ball radius")->required();
  sc->add_option("--method", sc_method, "exact | centers")->check(CLI::IsMember({"exact", "centers"}));

  // wscp
  std::string ws_in, ws_out;
  auto* ws = app.add_subcommand("wscp", "build and verify a well-separated clique-partitions family");
  ws->add_option("--in", ws_in, "graph file")->required();
  ws->add_option("--out", ws_out, "write the family here");

  // predict
  std::string pr_model, pr_case;
  double pr_n = 0.0, pr_r = -1.0, pr_p = 0.0, pr_q = 0.0, pr_sigma = 1.0;
  int pr_d = 2;
  std::string pr_norm = "L2";
  RegimeOpts pr_regime;
  auto* pr = app.add_subcommand("predict", "clique-number prediction bands");
  pr->add_option("--model", pr_model, "INSERTION_ONLY | DELETION_ONLY | COMBINED | ER_ONLY")->required();
  pr->add_option("--case", pr_case, "case tag (default: every case of the model)");
  pr->add_option("--n", pr_n, "number of vertices")->required();
  pr->add_option("--r", pr_r, "radius (or give --regime)");
  pr->add_option("--d", pr_d, "dimension");
  pr->add_option("--norm", pr_norm, "L1 | L2 | LINF");
  pr->add_option("--sigma", pr_sigma, "maximum sampling density");
  pr->add_option("--p", pr_p, "deletion probability");
  pr->add_option("--q", pr_q, "insertion probability");
  pr_regime.add(pr);

  // experiment
  std::string ex_config, ex_out, ex_svg;
  unsigned ex_threads = 1;
  auto* ex = app.add_subcommand("experiment", "run a Monte-Carlo sweep from a JSON config");
  ex->add_option("--config", ex_config, "config file")->required();
  ex->add_option("--out", ex_out, "CSV output")->required();
  ex->add_option("--svg", ex_svg, "optional plot");
  ex->add_option("--threads", ex_threads, "worker threads (0: all cores)");

  // denoise
  std::string dn_in, dn_threshold, dn_out;
  bool dn_truth = false;
  RegimeOpts dn_regime;
  std::uint64_t dn_budget = 1'000'000'000ULL;
  auto* dn = app.add_subcommand("denoise", "remove edges whose edge clique number is below a threshold");
  dn->add_option("--in", dn_in, "graph file")->required();
  dn->add_option("--threshold", dn_threshold, "auto | K")->required();
  dn->add_flag("--truth", dn_truth, "score against the true long edges of the file");
  dn->add_option("--out", dn_out, "write removed edges here");
  dn->add_option("--budget", dn_budget, "branch node budget");
  dn_regime.add(dn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kArgument;
  }

  if (gen->parsed()) {
    const Norm norm = parse_norm(gen_norm);
    double r = gen_r;
    if (const auto rp = gen_regime.params(gen_n, gen_d, norm)) {
      if (gen_r >= 0.0) throw ArgumentError("give either --r or --regime, not both");
      r = radius_for_regime(*rp);
    }
    if (r < 0.0) throw ArgumentError("gen needs --r or --regime");
    PointCloud cloud = sample_uniform_cube(gen_n, gen_d, gen_seed);
    const GeometricGraph g = r > 0.0 ? build_geometric_graph(std::move(cloud), r, norm)
                                     : empty_geometric_graph(std::move(cloud), norm);
    if (!gen_points.empty()) {
      std::ofstream pts(gen_points);
      if (!pts) throw IoError("cannot open '" + gen_points + "' for writing");
      write_points_csv(pts, g.cloud);
    }
    std::ofstream file;
    write_graph(*open_out(gen_out, file), g);
    return kOk;
  }

  if (pert->parsed()) {
    const PerturbedGraph in = read_graph_file(pert_in);
    const PerturbedGraph out = perturb(in.base_ptr(), pert_p, pert_q, pert_seed);
    std::ofstream file;
    write_graph(*open_out(pert_out, file), out);
    std::cerr << "deleted " << in.base().adjacency.num_edges() - out.count(EdgeLabel::GeometricKept)
              << " inserted " << out.count(EdgeLabel::Inserted) << '\n';
    return kOk;
  }

  if (cl->parsed()) {
    const PerturbedGraph g = read_graph_file(cl_in);
    CliqueOptions opts;
    opts.node_budget = cl_budget;
    try {
      if (!cl_edge.empty()) {
        std::cout << "edge_omega " << edge_clique_number(g.graph(), cl_edge[0], cl_edge[1], opts) << '\n';
      } else {
        const auto res = max_clique(g.graph(), opts);
        std::cout << "omega " << res.size << '\n';
        if (cl_witness) print_witness(res.witness);
      }
    } catch (const BudgetExceeded& e) {
      std::cout << "TIMEOUT\n";
      std::cerr << e.what() << '\n';
      return kTimeout;
    }
    return kOk;
  }

  if (sc->parsed()) {
    const PerturbedGraph g = read_graph_file(sc_in);
    const PointSet& pts = g.base().cloud.points;
    const ScanResult res = sc_method == "exact" ? scan_exact(pts, g.base().norm, sc_radius)
                                                : scan_point_centered(pts, g.base().norm, sc_radius);
    std::cout << "method " << to_string(res.method) << "\nvalue " << res.value << "\ncenter";
    for (double c : res.center) std::cout << ' ' << format_real(c);
    std::cout << '\n';
    return kOk;
  }

  if (ws->parsed()) {
    const PerturbedGraph g = read_graph_file(ws_in);
    const auto family = build_wscp(g.base());
    const auto report = verify_wscp(family, g.base());
    std::cout << "size " << report.size << "\ncoverage " << report.coverage << "\nclique_radius "
              << report.clique_radius << "\nseparation " << report.separation << "\ngeometric_cliques "
              << report.geometric_cliques << "\ncross_clique_edges " << cross_clique_edges(family, g.base()) << '\n';
    if (!ws_out.empty()) {
      std::ofstream file;
      write_wscp(*open_out(ws_out, file), family);
    }
    return kOk;
  }

  if (pr->parsed()) {
    const PerturbModel model = parse_model(pr_model);
    const Norm norm = parse_norm(pr_norm);
    InstanceParams ip;
    ip.n = pr_n;
    ip.d = pr_d;
    ip.norm = norm;
    ip.sigma = pr_sigma;
    ip.p = pr_p;
    ip.q = pr_q;
    ip.alpha = pr_regime.alpha;
    ip.t = pr_regime.t;
    ip.r = pr_r;
    if (const auto rp = pr_regime.params(static_cast<std::size_t>(pr_n), pr_d, norm)) {
      if (pr_r >= 0.0) throw ArgumentError("give either --r or --regime, not both");
      ip.r = radius_for_regime(*rp);
    }
    if (ip.r < 0.0) {
      if (model != PerturbModel::ErdosRenyi) throw ArgumentError("predict needs --r or --regime");
      ip.r = 0.0;
    }
    const auto tags = pr_case.empty() ? case_tags(model) : std::vector<std::string>{pr_case};
    std::printf("%-6s %-10s %14s %14s  %s\n", "case", "condition", "lower", "upper", "provenance");
    for (const auto& tag : tags) {
      try {
        const auto pred = predict_omega(model, tag, ip);
        std::printf("%-6s %-10s %14.6g %14.6g  %s%s\n", tag.c_str(), std::string(to_string(pred.condition)).c_str(),
                    pred.lower, pred.upper, pred.provenance.c_str(),
                    pred.lower_scaling_only || pred.upper_scaling_only ? " [unit-constant scaling]" : "");
      } catch (const NumericError& e) {
        if (!pr_case.empty()) throw;
        std::printf("%-6s %-10s %14s %14s  %s\n", tag.c_str(), "n/a", "-", "-", e.what());
      } catch (const ArgumentError& e) {
        // Listing every case: some need parameters this instance lacks.
        if (!pr_case.empty()) throw;
        std::printf("%-6s %-10s %14s %14s  %s\n", tag.c_str(), "n/a", "-", "-", e.what());
      }
    }
    return kOk;
  }

  if (ex->parsed()) {
    const ExperimentConfig cfg = ExperimentConfig::load(ex_config);
    const SweepResult res = run_sweep(cfg, ex_out, ex_threads, ex_svg);
    std::cout << res.summary_json << '\n';
    return res.any_timeout ? kTimeout : kOk;
  }

  if (dn->parsed()) {
    const PerturbedGraph g = read_graph_file(dn_in);
    const auto threshold = DenoiseThreshold::parse(dn_threshold);
    CliqueOptions opts;
    opts.node_budget = dn_budget;
    const auto& base = g.base();
    DenoiseResult res;
    try {
      res = denoise(g, threshold, dn_regime.params(g.n(), base.cloud.d(), base.norm), opts);
    } catch (const BudgetExceeded& e) {
      std::cout << "TIMEOUT\n";
      std::cerr << e.what() << '\n';
      return kTimeout;
    }
    std::cout << "threshold " << format_real(res.threshold) << "\nremoved " << res.removed.size() << "\nretained "
              << res.retained.num_edges() << '\n';
    if (dn_truth) {
      const auto score = score_denoise(res.removed, long_edges(g));
      std::cout << "precision " << format_real(score.precision) << "\nrecall " << format_real(score.recall) << '\n';
    }
    if (!dn_out.empty()) {
      std::ofstream file;
      std::ostream* out = open_out(dn_out, file);
      for (const auto& [u, v] : res.removed) *out << u << ' ' << v << '\n';
    }
    return kOk;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nrgg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const nrgg::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgument;
  } catch (const nrgg::CapabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapability;
  } catch (const nrgg::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const nrgg::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTimeout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgument;
  }
}
