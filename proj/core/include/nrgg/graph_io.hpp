#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nrgg/model.hpp"

namespace nrgg {

/// Shortest-round-trip-safe decimal form: %.17g.
std::string format_real(double value);

/// Header of the graph text format v1:
///   NRGG v1 n=<n> d=<d> r=<r> norm=<L1|L2|LINF> p=<p> q=<q> seed=<u64>
struct GraphHeader {
  std::size_t n = 0;
  int d = 0;
  double r = 0.0;
  Norm norm = Norm::L2;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
};

std::string format_header(const GraphHeader& header);
GraphHeader parse_header(const std::string& line);

/// Base graph: p = q = 0, seed = cloud seed, every edge labelled G.
void write_graph(std::ostream& out, const GeometricGraph& g);
/// Perturbed graph: seed = perturbation seed, edges labelled G or I.
void write_graph(std::ostream& out, const PerturbedGraph& g);

/// Parses format v1. The base graph is rebuilt from the vertex coordinates,
/// r and norm; E lines must agree with it (G ⊆ base edges, I ∩ base = ∅).
/// Throws ArgumentError on malformed input.
PerturbedGraph read_graph(std::istream& in);

PerturbedGraph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const PerturbedGraph& g);
void write_graph_file(const std::string& path, const GeometricGraph& g);

/// Points-only CSV with header id,x0,...,x{d-1}.
void write_points_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_points_csv(std::istream& in);

}  // namespace nrgg
