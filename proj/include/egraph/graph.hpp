#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace egraph {

using Vertex = int;

/// Unordered vertex pair, stored as (min, max).
struct Edge {
  Vertex a = 0;
  Vertex b = 0;

  auto operator<=>(const Edge&) const = default;
};

Edge make_edge(Vertex i, Vertex j);

/// Correlation status of a qubit pair. The numeric values are used in the
/// canonical code (0 none, 1 classical, 2 entangled).
enum class PairClass : std::uint8_t {
  kUncorrelated = 0,
  kClassicalOnly = 1,
  kEntangled = 2,
};

std::string to_string(PairClass c);

/// Graph on n qubit-vertices with two disjoint typed edge sets: entanglement
/// edges and classical-only correlation edges. A pair present in neither set
/// is uncorrelated.
///
/// The constructor normalizes every pair to (min, max), sorts and removes
/// duplicates inside each set. It does not reject malformed input; call
/// validate() for that.
class EntangledGraph {
 public:
  EntangledGraph() = default;
  EntangledGraph(int n, std::vector<Edge> entangled, std::vector<Edge> classical);

  /// Builds a graph from a per-pair class oracle evaluated on every pair i<j.
  static EntangledGraph from_pair_classes(int n, const std::function<PairClass(Vertex, Vertex)>& cls);

  int size() const noexcept { return n_; }
  std::span<const Edge> entangled_edges() const noexcept { return entangled_; }
  std::span<const Edge> classical_edges() const noexcept { return classical_; }

  PairClass pair_class(Vertex i, Vertex j) const;
  int degree(Vertex v) const;
  int edge_count() const noexcept { return static_cast<int>(entangled_.size() + classical_.size()); }

  bool operator==(const EntangledGraph&) const = default;

 private:
  int n_ = 0;
  std::vector<Edge> entangled_;
  std::vector<Edge> classical_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const EntangledGraph& g);

/// Throws Error(kInvalidGraph) listing every violation.
void require_valid(const EntangledGraph& g);

/// m[i] = number of vertices uncorrelated with i; total = (1/2) sum m[i].
struct UncorrelationProfile {
  std::vector<int> m;
  int total = 0;
};

UncorrelationProfile profile(const EntangledGraph& g);

/// Maximal vertex sets connected by edges of either type, each sorted, ordered
/// by smallest member.
std::vector<std::vector<Vertex>> connected_components(const EntangledGraph& g);

struct OpenEdge {
  Vertex leaf;
  Edge edge;
  PairClass kind;
};

/// Every vertex of total degree exactly one together with its edge. Whether
/// the edge counts as open also depends on the containing
/// component having more than two vertices; that is left to the caller.
std::vector<OpenEdge> open_edges(const EntangledGraph& g);

bool is_complete_web(const EntangledGraph& g);

/// Subgraph induced by `vertices`, relabeled 0..k-1 in the order given.
EntangledGraph induced_subgraph(const EntangledGraph& g, std::span<const Vertex> vertices);

/// Relabels vertex v as perm[v].
EntangledGraph permute(const EntangledGraph& g, std::span<const Vertex> perm);

/// Isomorphism-invariant label. `code` lists the pair classes of the
/// lexicographically smallest relabeling, pairs in (0,1),(0,2),..,(n-2,n-1)
/// order, one digit per pair.
struct CanonicalLabel {
  int n = 0;
  std::string code;

  auto operator<=>(const CanonicalLabel&) const = default;
  std::string str() const;
};

inline constexpr int kCanonicalMaxVertices = 8;
inline constexpr int kDefaultEnumerationCap = 6;

CanonicalLabel canonical_form(const EntangledGraph& g);

/// The graph whose pair-class code (under the identity labeling) is the
/// canonical code; every member of an isomorphism class maps to the same one.
EntangledGraph canonical_representative(const EntangledGraph& g);

/// Visits every assignment of {none, classical, entangled} to the pairs of an
/// n-vertex graph. With up_to_iso only the canonical representative of each
/// class is visited. Visitation order is the base-3 counting order of codes.
void for_each_graph(int n, bool up_to_iso, const std::function<void(const EntangledGraph&)>& visit,
                    int cap = kDefaultEnumerationCap);

std::vector<EntangledGraph> enumerate_graphs(int n, bool up_to_iso, int cap = kDefaultEnumerationCap);

std::string to_dot(const EntangledGraph& g, const std::string& name = "G");

}  // namespace egraph
