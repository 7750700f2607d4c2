#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egraph/analyzer.hpp"
#include "egraph/graph.hpp"
#include "egraph/linalg.hpp"

namespace egraph {

enum class SearchMethod {
  kNelderMead,
  kFiniteDifferenceDescent,
};

std::string to_string(SearchMethod m);
SearchMethod parse_search_method(const std::string& s);

struct SearchConfig {
  int restarts = 64;
  int max_evals_per_restart = 20000;
  std::uint64_t seed = 1;
  double target_concurrence_floor = 0.01;
  double correlation_floor = 0.01;
  Tolerances accept_tol;
  SearchMethod method = SearchMethod::kNelderMead;
  int jobs = 1;
  int max_qubits = 6;
};

/// Budget scaled to the qubit count; n = 4 gets 64 restarts x 20000 evaluations.
SearchConfig default_search_config(int n);

/// Throws Error(kInvalidArgument) on restarts < 1, floors not above the
/// acceptance thresholds, and similar.
void validate_config(const SearchConfig& cfg);

struct RestartTrace {
  int restart = 0;
  double best = 0.0;
  long evals = 0;
  bool verified = false;
};

struct SearchResult {
  bool found = false;
  std::optional<PureState> witness;
  double best_objective = 0.0;
  long evals = 0;
  int best_restart = -1;
  std::vector<RestartTrace> per_restart_trace;
};

/// Penalty objective, zero iff every graph constraint holds with the
/// configured margins:
///   entangled pairs    max(0, floor_C - C)
///   classical pairs    N + max(0, floor_D - D)
///   uncorrelated pairs D
/// where C is concurrence, N negativity and D = ||rho_ij - rho_i x rho_j||_F.
/// Inputs within 1e-6 of unit norm are renormalized.
double objective(const PureState& psi, const EntangledGraph& g, const SearchConfig& cfg);

/// Multi-restart search for a pure state whose extracted graph is g. A
/// witness is reported only after extract_graph reproduces g exactly under
/// cfg.accept_tol. Deterministic for a given (g, cfg) regardless of cfg.jobs.
SearchResult search(const EntangledGraph& g, const SearchConfig& cfg);

}  // namespace egraph
