#pragma once

#include <vector>

#include "egraph/graph.hpp"
#include "egraph/linalg.hpp"

namespace egraph {

class ExcitationBlockState;

struct Tolerances {
  double entanglement = 1e-9;   // negativity gate
  double factorization = 1e-9;  // ||rho_ij - rho_i x rho_j||_F gate
  ValidityTolerances validity;
};

/// Verdicts whose deciding metric lies within this factor of its threshold
/// are flagged as marginal.
inline constexpr double kMarginalFactor = 100.0;

struct PairVerdict {
  Vertex i = 0;
  Vertex j = 0;
  PairClass cls = PairClass::kUncorrelated;
  double concurrence = 0.0;
  double negativity = 0.0;
  double factorization_distance = 0.0;
  bool marginal = false;
};

/// Entangled iff negativity > tol.entanglement; otherwise uncorrelated iff
/// the factorization distance is within tol.factorization.
PairVerdict classify_pair(const DensityOperator& rho_ij, const Tolerances& tol = {});
PairVerdict classify_pair_matrix(const Matrix4& rho_ij, const Tolerances& tol);

struct GraphExtraction {
  EntangledGraph graph;
  std::vector<PairVerdict> verdicts;  // pairs in (0,1),(0,2),.. order
};

/// Vertices are qubit positions 0..n-1 in the state's listed order.
GraphExtraction extract_graph(const PureState& psi, const Tolerances& tol = {});
GraphExtraction extract_graph(const DensityOperator& rho, const Tolerances& tol = {});
GraphExtraction extract_graph(const ExcitationBlockState& s, const Tolerances& tol = {});

/// Reduced operators of every pair of a pure state, computed from the
/// amplitudes directly. Index order matches GraphExtraction::verdicts.
std::vector<Matrix4> pair_reductions(const Vector& amplitudes, int n);

}  // namespace egraph
