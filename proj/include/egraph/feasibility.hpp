#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egraph/graph.hpp"
#include "egraph/linalg.hpp"
#include "egraph/search.hpp"
#include "egraph/synthesis.hpp"

namespace egraph {

/// Ordered so that the status of a whole graph is the minimum over its
/// components: Infeasible < Unknown < any Feasible kind.
enum class FeasibilityStatus {
  kInfeasible = 0,
  kUnknown = 1,
  kFeasibleNumericalClaim = 2,
  kFeasibleCatalog = 3,
  kFeasibleConstructive = 4,
};

bool is_feasible(FeasibilityStatus s);
std::string to_string(FeasibilityStatus s);

enum class Rule {
  kSingleVertex = 1,       // R1
  kEntangledPair = 2,      // R2
  kCorrelatedPair = 3,     // R3
  kOpenEdge = 4,           // R4
  kCompleteWeb = 5,        // R5
  kThreeQubitCatalog = 6,  // R6
  kFourVertexClaim = 7,    // R7
  kUndecided = 8,          // R8
};

/// "R1" .. "R8".
std::string rule_id(Rule r);

struct ComponentVerdict {
  std::vector<Vertex> vertices;  // in the parent graph's labels
  FeasibilityStatus status = FeasibilityStatus::kUnknown;
  Rule rule = Rule::kUndecided;
  std::string reason;
  std::optional<PureState> witness;  // over the component's vertices, in order
  std::optional<WebParameters> web_parameters;
  std::optional<char> catalog_letter;
  std::optional<SearchResult> search;
};

struct Verdict {
  FeasibilityStatus status = FeasibilityStatus::kUnknown;
  Rule rule = Rule::kUndecided;  // rule of the component that set the status
  std::string reason;
  std::optional<PureState> witness;  // product of component witnesses, when all exist
  std::vector<ComponentVerdict> components;
};

struct AssessOptions {
  /// Run the pure-state search on components that end at R7 or R8.
  bool search = false;
  /// When unset, default_search_config(component size) is used.
  std::optional<SearchConfig> search_config;
  std::uint64_t seed = 1;
  int jobs = 1;
  Tolerances tol;
};

Verdict assess(const EntangledGraph& g, const AssessOptions& opts = {});

/// Assessment of a single connected graph (no decomposition).
ComponentVerdict assess_component(const EntangledGraph& component, const AssessOptions& opts = {});

/// Places each component state on its vertex subset of an n-qubit register.
PureState compose_components(int n, const std::vector<std::pair<std::vector<Vertex>, PureState>>& parts);

struct CensusRow {
  CanonicalLabel label;
  EntangledGraph representative;
  int class_size = 0;  // labeled graphs in the class
  bool connected = false;
  bool has_open_edge = false;  // in a component with more than two vertices
  bool complete_web = false;
  Verdict verdict;
};

/// Counts of undecided classes under the conventions the census reports.
struct AmbiguityCounts {
  /// connected, no open edge, not a complete web (structure alone)
  int structural_non_web = 0;
  /// connected, no open edge, webs included
  int structural_with_webs = 0;
  /// classes whose rules ended at R7/R8 (webs fall here when no web
  /// parameters verify)
  int rule_outcome = 0;
  /// labeled graphs counted by structural_non_web
  int structural_non_web_labeled = 0;
};

struct Census {
  int n = 0;
  long raw_graphs = 0;
  std::vector<CensusRow> rows;
  std::map<FeasibilityStatus, int> status_counts;
  AmbiguityCounts ambiguous;
};

inline constexpr int kCensusCap = 5;

Census census(int n, const Tolerances& tol = {});

}  // namespace egraph
