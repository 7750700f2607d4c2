#include "egraph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "egraph/error.hpp"

namespace egraph {

namespace {

void normalize(std::vector<Edge>& edges) {
  for (auto& e : edges) e = make_edge(e.a, e.b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

int pair_count(int n) { return n * (n - 1) / 2; }

// Index of pair (i,j), i<j, in (0,1),(0,2),...,(n-2,n-1) order.
int pair_index(int n, Vertex i, Vertex j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

using Code = std::vector<std::uint8_t>;

Code code_of(const EntangledGraph& g) {
  const int n = g.size();
  Code code(static_cast<std::size_t>(pair_count(n)), 0);
  for (const auto& e : g.entangled_edges())
    code[pair_index(n, e.a, e.b)] = static_cast<std::uint8_t>(PairClass::kEntangled);
  for (const auto& e : g.classical_edges())
    code[pair_index(n, e.a, e.b)] = static_cast<std::uint8_t>(PairClass::kClassicalOnly);
  return code;
}

EntangledGraph graph_of(int n, const Code& code) {
  std::vector<Edge> ent, cls;
  int k = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++k) {
      if (code[k] == static_cast<std::uint8_t>(PairClass::kEntangled)) ent.push_back({i, j});
      if (code[k] == static_cast<std::uint8_t>(PairClass::kClassicalOnly)) cls.push_back({i, j});
    }
  return {n, std::move(ent), std::move(cls)};
}

// Pair indices as (i,j) lists, cached per call site.
std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> pairs;
  pairs.reserve(static_cast<std::size_t>(pair_count(n)));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return pairs;
}

// Code of the relabeling that places vertex sigma[a] at position a.
void relabeled_code(int n, const Code& code, const std::vector<Vertex>& sigma,
                    const std::vector<Edge>& pairs, Code& out) {
  out.resize(code.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Vertex x = sigma[pairs[k].a];
    Vertex y = sigma[pairs[k].b];
    if (x > y) std::swap(x, y);
    out[k] = code[pair_index(n, x, y)];
  }
}

// True if no relabeling yields a lexicographically smaller code.
bool is_minimal_code(int n, const Code& code, const std::vector<Edge>& pairs) {
  std::vector<Vertex> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  while (std::next_permutation(sigma.begin(), sigma.end())) {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      Vertex x = sigma[pairs[k].a];
      Vertex y = sigma[pairs[k].b];
      if (x > y) std::swap(x, y);
      const auto c = code[pair_index(n, x, y)];
      if (c < code[k]) return false;
      if (c > code[k]) break;
    }
  }
  return true;
}

Code minimal_code(const EntangledGraph& g) {
  const int n = g.size();
  if (n > kCanonicalMaxVertices)
    throw Error(ErrorCode::kCapExceeded,
                "canonical_form supports at most " + std::to_string(kCanonicalMaxVertices) + " vertices");
  const Code code = code_of(g);
  const auto pairs = all_pairs(n);
  Code best = code;
  Code candidate;
  std::vector<Vertex> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  while (std::next_permutation(sigma.begin(), sigma.end())) {
    relabeled_code(n, code, sigma, pairs, candidate);
    if (candidate < best) best = candidate;
  }
  return best;
}

}  // namespace

Edge make_edge(Vertex i, Vertex j) { return i < j ? Edge{i, j} : Edge{j, i}; }

std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::kEntangled:
      return "entangled";
    case PairClass::kClassicalOnly:
      return "classical";
    case PairClass::kUncorrelated:
      return "uncorrelated";
  }
  return "unknown";
}

EntangledGraph::EntangledGraph(int n, std::vector<Edge> entangled, std::vector<Edge> classical)
    : n_(n), entangled_(std::move(entangled)), classical_(std::move(classical)) {
  normalize(entangled_);
  normalize(classical_);
}

EntangledGraph EntangledGraph::from_pair_classes(int n, const std::function<PairClass(Vertex, Vertex)>& cls) {
  std::vector<Edge> ent, cc;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      switch (cls(i, j)) {
        case PairClass::kEntangled:
          ent.push_back({i, j});
          break;
        case PairClass::kClassicalOnly:
          cc.push_back({i, j});
          break;
        case PairClass::kUncorrelated:
          break;
      }
    }
  return {n, std::move(ent), std::move(cc)};
}

PairClass EntangledGraph::pair_class(Vertex i, Vertex j) const {
  const Edge e = make_edge(i, j);
  if (std::binary_search(entangled_.begin(), entangled_.end(), e)) return PairClass::kEntangled;
  if (std::binary_search(classical_.begin(), classical_.end(), e)) return PairClass::kClassicalOnly;
  return PairClass::kUncorrelated;
}

int EntangledGraph::degree(Vertex v) const {
  auto touches = [v](const Edge& e) { return e.a == v || e.b == v; };
  return static_cast<int>(std::count_if(entangled_.begin(), entangled_.end(), touches) +
                          std::count_if(classical_.begin(), classical_.end(), touches));
}

ValidationReport validate(const EntangledGraph& g) {
  ValidationReport report;
  const int n = g.size();
  if (n < 1) report.violations.push_back("vertex count must be at least 1, got " + std::to_string(n));
  auto check = [&](std::span<const Edge> edges, const char* set) {
    for (const auto& e : edges) {
      const std::string pair = "{" + std::to_string(e.a) + "," + std::to_string(e.b) + "}";
      if (e.a < 0 || e.b >= n)
        report.violations.push_back(std::string(set) + " pair " + pair + ": index out of range");
      if (e.a == e.b) report.violations.push_back(std::string(set) + " pair " + pair + ": self-loop");
    }
  };
  check(g.entangled_edges(), "entangled");
  check(g.classical_edges(), "classical");
  const auto ent = g.entangled_edges();
  const auto cls = g.classical_edges();
  std::vector<Edge> both;
  std::set_intersection(ent.begin(), ent.end(), cls.begin(), cls.end(), std::back_inserter(both));
  for (const auto& e : both)
    report.violations.push_back("pair {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                "}: pair in both sets");
  return report;
}

void require_valid(const EntangledGraph& g) {
  const auto report = validate(g);
  if (report.ok()) return;
  std::string msg = "invalid graph:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  throw Error(ErrorCode::kInvalidGraph, msg);
}

UncorrelationProfile profile(const EntangledGraph& g) {
  require_valid(g);
  const int n = g.size();
  UncorrelationProfile p;
  p.m.assign(static_cast<std::size_t>(n), n - 1);
  auto mark = [&](std::span<const Edge> edges) {
    for (const auto& e : edges) {
      --p.m[e.a];
      --p.m[e.b];
    }
  };
  mark(g.entangled_edges());
  mark(g.classical_edges());
  p.total = std::accumulate(p.m.begin(), p.m.end(), 0) / 2;
  return p;
}

std::vector<std::vector<Vertex>> connected_components(const EntangledGraph& g) {
  require_valid(g);
  const int n = g.size();
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Vertex(Vertex)> find = [&](Vertex v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  auto join = [&](std::span<const Edge> edges) {
    for (const auto& e : edges) {
      const Vertex ra = find(e.a), rb = find(e.b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  };
  join(g.entangled_edges());
  join(g.classical_edges());

  std::vector<std::vector<Vertex>> components;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[slot[r]].push_back(v);
  }
  return components;
}

std::vector<OpenEdge> open_edges(const EntangledGraph& g) {
  require_valid(g);
  std::vector<OpenEdge> result;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.degree(v) != 1) continue;
    auto find_in = [&](std::span<const Edge> edges, PairClass kind) {
      for (const auto& e : edges)
        if (e.a == v || e.b == v) result.push_back({v, e, kind});
    };
    find_in(g.entangled_edges(), PairClass::kEntangled);
    find_in(g.classical_edges(), PairClass::kClassicalOnly);
  }
  return result;
}

bool is_complete_web(const EntangledGraph& g) { return profile(g).total == 0; }

EntangledGraph induced_subgraph(const EntangledGraph& g, std::span<const Vertex> vertices) {
  const int k = static_cast<int>(vertices.size());
  return EntangledGraph::from_pair_classes(
      k, [&](Vertex i, Vertex j) { return g.pair_class(vertices[i], vertices[j]); });
}

EntangledGraph permute(const EntangledGraph& g, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != g.size())
    throw Error(ErrorCode::kInvalidArgument, "permutation length does not match vertex count");
  auto map = [&](std::span<const Edge> edges) {
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(make_edge(perm[e.a], perm[e.b]));
    return out;
  };
  return {g.size(), map(g.entangled_edges()), map(g.classical_edges())};
}

std::string CanonicalLabel::str() const { return std::to_string(n) + ":" + code; }

CanonicalLabel canonical_form(const EntangledGraph& g) {
  require_valid(g);
  CanonicalLabel label;
  label.n = g.size();
  for (auto c : minimal_code(g)) label.code.push_back(static_cast<char>('0' + c));
  return label;
}

EntangledGraph canonical_representative(const EntangledGraph& g) {
  require_valid(g);
  return graph_of(g.size(), minimal_code(g));
}

void for_each_graph(int n, bool up_to_iso, const std::function<void(const EntangledGraph&)>& visit, int cap) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "vertex count must be at least 1");
  if (n > cap)
    throw Error(ErrorCode::kCapExceeded,
                "enumeration cap exceeded: n=" + std::to_string(n) + " > " + std::to_string(cap));
  if (up_to_iso && n > kCanonicalMaxVertices)
    throw Error(ErrorCode::kCapExceeded, "isomorphism reduction supports at most 8 vertices");
  const auto pairs = all_pairs(n);
  Code code(pairs.size(), 0);
  while (true) {
    if (!up_to_iso || is_minimal_code(n, code, pairs)) visit(graph_of(n, code));
    // base-3 increment, last digit least significant
    std::size_t k = code.size();
    while (k > 0 && code[k - 1] == 2) code[--k] = 0;
    if (k == 0) break;
    ++code[k - 1];
  }
}

std::vector<EntangledGraph> enumerate_graphs(int n, bool up_to_iso, int cap) {
  std::vector<EntangledGraph> graphs;
  for_each_graph(n, up_to_iso, [&](const EntangledGraph& g) { graphs.push_back(g); }, cap);
  return graphs;
}

std::string to_dot(const EntangledGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  os << "  node [shape=circle];\n";
  for (Vertex v = 0; v < g.size(); ++v) os << "  " << v << ";\n";
  for (const auto& e : g.entangled_edges()) os << "  " << e.a << " -- " << e.b << " [style=solid];\n";
  for (const auto& e : g.classical_edges()) os << "  " << e.a << " -- " << e.b << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

}  // namespace egraph
