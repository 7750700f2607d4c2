#include "egraph/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "egraph/error.hpp"

namespace egraph {

namespace {

// Moves qubit v of psi to position perm[v].
PureState permute_qubits(const PureState& psi, const std::vector<Vertex>& perm) {
  const int n = psi.qubit_count();
  const Eigen::Index dim = psi.amplitudes().size();
  Vector out = Vector::Zero(dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    std::size_t y = 0;
    for (int v = 0; v < n; ++v)
      if ((static_cast<std::size_t>(x) >> (n - 1 - v)) & 1U) y |= std::size_t{1} << (n - 1 - perm[v]);
    out(static_cast<Eigen::Index>(y)) = psi.amplitudes()(x);
  }
  return PureState::on(n, std::move(out));
}

// A vertex permutation taking `from` onto `to`, if the graphs are isomorphic.
std::optional<std::vector<Vertex>> find_isomorphism(const EntangledGraph& from, const EntangledGraph& to) {
  if (from.size() != to.size()) return std::nullopt;
  std::vector<Vertex> perm(static_cast<std::size_t>(from.size()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permute(from, perm) == to) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

PureState bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState::on(2, std::move(v));
}

bool component_has_open_edge(const EntangledGraph& g) {
  for (const auto& comp : connected_components(g)) {
    if (comp.size() <= 2) continue;
    if (!open_edges(induced_subgraph(g, comp)).empty()) return true;
  }
  return false;
}

void run_search(ComponentVerdict& v, const EntangledGraph& component, const AssessOptions& opts) {
  SearchConfig cfg = opts.search_config.value_or(default_search_config(component.size()));
  if (!opts.search_config) {
    cfg.seed = opts.seed;
    cfg.jobs = opts.jobs;
    cfg.accept_tol = opts.tol;
  }
  if (component.size() > cfg.max_qubits) {
    v.reason += "; search skipped, component exceeds the search cap";
    return;
  }
  v.search = search(component, cfg);
  if (v.search->found) {
    v.witness = v.search->witness;
    if (v.status == FeasibilityStatus::kUnknown) {
      v.status = FeasibilityStatus::kFeasibleNumericalClaim;
      v.reason = "numerical search found a verified witness";
    } else {
      v.reason += "; verified witness found by numerical search";
    }
  } else {
    v.reason += "; numerical search exhausted without a verified witness";
  }
}

}  // namespace

bool is_feasible(FeasibilityStatus s) { return s >= FeasibilityStatus::kFeasibleNumericalClaim; }

std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::kInfeasible:
      return "infeasible";
    case FeasibilityStatus::kUnknown:
      return "unknown";
    case FeasibilityStatus::kFeasibleNumericalClaim:
      return "feasible-numerical-claim";
    case FeasibilityStatus::kFeasibleCatalog:
      return "feasible-catalog";
    case FeasibilityStatus::kFeasibleConstructive:
      return "feasible-constructive";
  }
  return "unknown";
}

std::string rule_id(Rule r) { return "R" + std::to_string(static_cast<int>(r)); }

PureState compose_components(int n, const std::vector<std::pair<std::vector<Vertex>, PureState>>& parts) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector out = Vector::Ones(dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (const auto& [vertices, psi] : parts) {
      const int k = static_cast<int>(vertices.size());
      std::size_t local = 0;
      for (int q = 0; q < k; ++q)
        if ((static_cast<std::size_t>(x) >> (n - 1 - vertices[q])) & 1U) local |= std::size_t{1} << (k - 1 - q);
      out(x) *= psi.amplitudes()(static_cast<Eigen::Index>(local));
    }
  }
  return PureState::on(n, std::move(out));
}

ComponentVerdict assess_component(const EntangledGraph& component, const AssessOptions& opts) {
  require_valid(component);
  const int k = component.size();
  ComponentVerdict v;
  v.vertices.resize(static_cast<std::size_t>(k));
  std::iota(v.vertices.begin(), v.vertices.end(), 0);
  if (connected_components(component).size() != 1)
    throw Error(ErrorCode::kInvalidArgument, "assess_component expects a connected graph");

  if (k == 1) {
    v.status = FeasibilityStatus::kFeasibleConstructive;
    v.rule = Rule::kSingleVertex;
    v.reason = "a single vertex is represented by any single-qubit pure state";
    v.witness = PureState::basis(1, 0);
    return v;
  }
  if (k == 2) {
    if (component.pair_class(0, 1) == PairClass::kEntangled) {
      v.status = FeasibilityStatus::kFeasibleConstructive;
      v.rule = Rule::kEntangledPair;
      v.reason = "two vertices joined by an entanglement edge are represented by a Bell state";
      v.witness = bell_state();
    } else {
      v.status = FeasibilityStatus::kInfeasible;
      v.rule = Rule::kCorrelatedPair;
      v.reason = "no pure two-qubit state is classically correlated without entanglement";
    }
    return v;
  }
  if (const auto open = open_edges(component); !open.empty()) {
    v.status = FeasibilityStatus::kInfeasible;
    v.rule = Rule::kOpenEdge;
    v.reason = "open edge at vertex " + std::to_string(open.front().leaf) +
               ": a connected graph with more than two vertices and a degree-one vertex has no pure representative";
    return v;
  }
  if (is_complete_web(component)) {
    if (auto web = realize_web(component, opts.tol)) {
      v.status = FeasibilityStatus::kFeasibleConstructive;
      v.rule = Rule::kCompleteWeb;
      v.reason = "complete web realized by the web state";
      v.witness = std::move(web->state);
      v.web_parameters = web->parameters;
      return v;
    }
  }
  if (k == 3) {
    for (char letter : kCatalogLetters) {
      const PureState psi = three_qubit_catalog(letter);
      const auto found = extract_graph(psi, opts.tol).graph;
      if (const auto perm = find_isomorphism(found, component)) {
        v.status = FeasibilityStatus::kFeasibleCatalog;
        v.rule = Rule::kThreeQubitCatalog;
        v.reason = std::string("three-qubit catalog state ") + letter;
        v.witness = permute_qubits(psi, *perm);
        v.catalog_letter = letter;
        return v;
      }
    }
    // every three-vertex class missing from the catalog must have been caught by R3/R4
    throw std::logic_error("connected three-vertex graph without open edges missing from the catalog");
  }
  if (k == 4) {
    v.status = FeasibilityStatus::kFeasibleNumericalClaim;
    v.rule = Rule::kFourVertexClaim;
    v.reason = "connected four-vertex graph without open edges (numerically established class)";
  } else {
    v.status = FeasibilityStatus::kUnknown;
    v.rule = Rule::kUndecided;
    v.reason = "connected graph without open edges on more than four vertices is not decided by any rule";
  }
  if (opts.search) run_search(v, component, opts);
  return v;
}

Verdict assess(const EntangledGraph& g, const AssessOptions& opts) {
  require_valid(g);
  Verdict verdict;
  const auto comps = connected_components(g);
  for (const auto& comp : comps) {
    ComponentVerdict cv = assess_component(induced_subgraph(g, comp), opts);
    cv.vertices = comp;
    verdict.components.push_back(std::move(cv));
  }
  const auto limiting = std::min_element(verdict.components.begin(), verdict.components.end(),
                                         [](const auto& a, const auto& b) { return a.status < b.status; });
  verdict.status = limiting->status;
  verdict.rule = limiting->rule;
  verdict.reason = limiting->reason;
  if (comps.size() > 1)
    verdict.reason = "decomposed into " + std::to_string(comps.size()) + " components; limiting component: " +
                     verdict.reason;

  const bool all_witnessed = std::all_of(verdict.components.begin(), verdict.components.end(),
                                         [](const auto& c) { return c.witness.has_value(); });
  if (all_witnessed) {
    std::vector<std::pair<std::vector<Vertex>, PureState>> parts;
    for (const auto& c : verdict.components) parts.emplace_back(c.vertices, *c.witness);
    verdict.witness = compose_components(g.size(), parts);
  }
  return verdict;
}

Census census(int n, const Tolerances& tol) {
  if (n < 1 || n > kCensusCap)
    throw Error(ErrorCode::kCapExceeded, "census supports 1 <= n <= " + std::to_string(kCensusCap));
  Census c;
  c.n = n;
  std::map<CanonicalLabel, int> class_sizes;
  for_each_graph(n, false, [&](const EntangledGraph& g) {
    ++c.raw_graphs;
    ++class_sizes[canonical_form(g)];
  });
  AssessOptions opts;
  opts.tol = tol;
  for_each_graph(n, true, [&](const EntangledGraph& g) {
    CensusRow row;
    row.label = canonical_form(g);
    row.representative = g;
    row.class_size = class_sizes.at(row.label);
    row.connected = connected_components(g).size() == 1;
    row.has_open_edge = component_has_open_edge(g);
    row.complete_web = is_complete_web(g);
    row.verdict = assess(g, opts);
    ++c.status_counts[row.verdict.status];
    if (row.connected && !row.has_open_edge && n > 2) {
      ++c.ambiguous.structural_with_webs;
      if (!row.complete_web) {
        ++c.ambiguous.structural_non_web;
        c.ambiguous.structural_non_web_labeled += row.class_size;
      }
    }
    if (row.verdict.rule == Rule::kFourVertexClaim || row.verdict.rule == Rule::kUndecided) ++c.ambiguous.rule_outcome;
    c.rows.push_back(std::move(row));
  });
  return c;
}

}  // namespace egraph
