#include "nrgg/graph_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "nrgg/errors.hpp"

namespace nrgg {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_header(const GraphHeader& h) {
  std::ostringstream s;
  s << "NRGG v1 n=" << h.n << " d=" << h.d << " r=" << format_real(h.r) << " norm=" << to_string(h.norm)
    << " p=" << format_real(h.p) << " q=" << format_real(h.q) << " seed=" << h.seed;
  return s.str();
}

namespace {

double parse_real(const std::string& text, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ArgumentError(std::string("graph file: bad ") + what + " '" + text + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ArgumentError(std::string("graph file: bad ") + what + " '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ArgumentError(std::string("graph file: bad ") + what + " '" + text + "'");
  }
}

}  // namespace

GraphHeader parse_header(const std::string& line) {
  std::istringstream s(line);
  std::string magic, version;
  s >> magic >> version;
  if (magic != "NRGG" || version != "v1") throw ArgumentError("graph file: missing 'NRGG v1' header");
  std::map<std::string, std::string> fields;
  std::string token;
  while (s >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ArgumentError("graph file: bad header token '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : {"n", "d", "r", "norm", "p", "q", "seed"}) {
    if (!fields.count(key)) throw ArgumentError(std::string("graph file: header lacks '") + key + "'");
  }
  GraphHeader h;
  h.n = parse_u64(fields["n"], "n");
  h.d = static_cast<int>(parse_u64(fields["d"], "d"));
  h.r = parse_real(fields["r"], "r");
  h.norm = parse_norm(fields["norm"]);
  h.p = parse_real(fields["p"], "p");
  h.q = parse_real(fields["q"], "q");
  h.seed = parse_u64(fields["seed"], "seed");
  if (h.d < 1) throw ArgumentError("graph file: d must be >= 1");
  return h;
}

namespace {

void write_vertices(std::ostream& out, const PointCloud& cloud) {
  const std::size_t d = static_cast<std::size_t>(cloud.d());
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    out << "V " << i;
    const double* x = cloud.points.data(i);
    for (std::size_t k = 0; k < d; ++k) out << ' ' << format_real(x[k]);
    out << '\n';
  }
}

}  // namespace

void write_graph(std::ostream& out, const GeometricGraph& g) {
  GraphHeader h{g.n(), g.cloud.d(), g.r, g.norm, 0.0, 0.0, g.cloud.seed};
  out << format_header(h) << '\n';
  write_vertices(out, g.cloud);
  g.adjacency.for_each_edge([&](Vertex u, Vertex v) { out << "E " << u << ' ' << v << " G\n"; });
}

void write_graph(std::ostream& out, const PerturbedGraph& g) {
  const GeometricGraph& base = g.base();
  GraphHeader h{g.n(), base.cloud.d(), base.r, base.norm, g.p(), g.q(), g.seed()};
  out << format_header(h) << '\n';
  write_vertices(out, base.cloud);
  const Graph& adj = g.graph();
  const auto& labels = g.slot_labels();
  const auto n = static_cast<Vertex>(adj.num_vertices());
  for (Vertex u = 0; u < n; ++u) {
    auto nbrs = adj.neighbors(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] <= u) continue;
      out << "E " << u << ' ' << nbrs[k] << ' '
          << (labels[adj.offset(u) + k] == EdgeLabel::Inserted ? 'I' : 'G') << '\n';
    }
  }
}

PerturbedGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("graph file: empty input");
  const GraphHeader h = parse_header(line);
  if (h.n == 0) throw ArgumentError("graph file: n must be >= 1");

  std::vector<double> coords(h.n * static_cast<std::size_t>(h.d));
  std::vector<bool> seen(h.n, false);
  std::vector<Edge> kept;
  std::vector<Edge> inserted;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream s(line);
    std::string tag;
    s >> tag;
    if (tag == "V") {
      std::string id_text;
      s >> id_text;
      const std::uint64_t id = parse_u64(id_text, "vertex id");
      if (id >= h.n || seen[id]) throw ArgumentError("graph file: bad vertex id on line " + std::to_string(line_no));
      seen[id] = true;
      for (int k = 0; k < h.d; ++k) {
        std::string x;
        if (!(s >> x)) throw ArgumentError("graph file: short vertex line " + std::to_string(line_no));
        coords[id * h.d + k] = parse_real(x, "coordinate");
      }
    } else if (tag == "E") {
      std::string a, b, label;
      s >> a >> b >> label;
      const std::uint64_t u = parse_u64(a, "edge endpoint");
      const std::uint64_t v = parse_u64(b, "edge endpoint");
      if (u >= v || v >= h.n) throw ArgumentError("graph file: edge must satisfy u < v < n (line " + std::to_string(line_no) + ")");
      if (label == "G") {
        kept.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      } else if (label == "I") {
        inserted.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      } else {
        throw ArgumentError("graph file: edge label must be G or I (line " + std::to_string(line_no) + ")");
      }
    } else {
      throw ArgumentError("graph file: unknown record '" + tag + "' on line " + std::to_string(line_no));
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ArgumentError("graph file: missing vertex lines");
  }

  PointCloud cloud;
  cloud.points = PointSet(h.d, std::move(coords));
  cloud.seed = (h.p == 0.0 && h.q == 0.0) ? h.seed : 0;
  auto base = std::make_shared<GeometricGraph>(h.r > 0.0 ? build_geometric_graph(std::move(cloud), h.r, h.norm)
                                                         : empty_geometric_graph(std::move(cloud), h.norm));
  for (const auto& [u, v] : kept) {
    if (!base->adjacency.has_edge(u, v)) throw ArgumentError("graph file: G edge is not a geometric edge");
  }
  for (const auto& [u, v] : inserted) {
    if (base->adjacency.has_edge(u, v)) throw ArgumentError("graph file: I edge duplicates a geometric edge");
  }

  std::vector<Edge> all = kept;
  all.insert(all.end(), inserted.begin(), inserted.end());
  Graph adjacency = Graph::from_edges(h.n, all);
  if (adjacency.num_edges() != all.size()) throw ArgumentError("graph file: duplicate edge lines");
  std::vector<EdgeLabel> labels(2 * adjacency.num_edges(), EdgeLabel::GeometricKept);
  for (const auto& [u, v] : inserted) {
    labels[adjacency.offset(u) + adjacency.slot(u, v)] = EdgeLabel::Inserted;
    labels[adjacency.offset(v) + adjacency.slot(v, u)] = EdgeLabel::Inserted;
  }
  return PerturbedGraph(std::move(base), h.p, h.q, h.seed, std::move(adjacency), std::move(labels));
}

PerturbedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_graph(in);
}

namespace {

template <class G>
void write_file(const std::string& path, const G& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_graph(out, g);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

void write_graph_file(const std::string& path, const PerturbedGraph& g) { write_file(path, g); }
void write_graph_file(const std::string& path, const GeometricGraph& g) { write_file(path, g); }

void write_points_csv(std::ostream& out, const PointCloud& cloud) {
  out << "id";
  for (int k = 0; k < cloud.d(); ++k) out << ",x" << k;
  out << '\n';
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    out << i;
    const double* x = cloud.points.data(i);
    for (int k = 0; k < cloud.d(); ++k) out << ',' << format_real(x[k]);
    out << '\n';
  }
}

PointCloud read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("points csv: empty input");
  int d = 0;
  {
    std::istringstream s(line);
    std::string col;
    std::getline(s, col, ',');
    if (col != "id") throw ArgumentError("points csv: header must start with 'id'");
    while (std::getline(s, col, ',')) {
      if (col != "x" + std::to_string(d)) throw ArgumentError("points csv: unexpected column '" + col + "'");
      ++d;
    }
  }
  if (d < 1) throw ArgumentError("points csv: no coordinate columns");
  std::vector<double> coords;
  std::size_t expected_id = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream s(line);
    std::string field;
    std::getline(s, field, ',');
    if (parse_u64(field, "id") != expected_id) throw ArgumentError("points csv: ids must be 0..n-1 in order");
    ++expected_id;
    for (int k = 0; k < d; ++k) {
      if (!std::getline(s, field, ',')) throw ArgumentError("points csv: short row");
      coords.push_back(parse_real(field, "coordinate"));
    }
  }
  PointCloud cloud;
  cloud.points = PointSet(d, std::move(coords));
  cloud.domain = "file";
  return cloud;
}

}  // namespace nrgg
