#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "egraph/analyzer.hpp"
#include "egraph/graph.hpp"
#include "egraph/linalg.hpp"

namespace egraph {

struct DoubleExcitation {
  Vertex i = 0;
  Vertex j = 0;
  double weight = 0.0;

  bool operator==(const DoubleExcitation&) const = default;
};

/// Mixed state supported on the span of basis states with at most two
/// excitations: a vacuum weight, an n x n real symmetric block over the single
/// excitations |1_i>, and diagonal weights on double excitations |1_i 1_j>.
class ExcitationBlockState {
 public:
  ExcitationBlockState() = default;
  ExcitationBlockState(int n, double vacuum, Eigen::MatrixXd single_block, std::vector<DoubleExcitation> doubles);

  int size() const noexcept { return n_; }
  double vacuum_weight() const noexcept { return vacuum_; }
  const Eigen::MatrixXd& single_block() const noexcept { return single_; }
  /// Sorted by (i, j), i < j, zero weights dropped.
  const std::vector<DoubleExcitation>& doubles() const noexcept { return doubles_; }

  double double_weight(Vertex i, Vertex j) const;
  /// Sum of double-excitation weights touching vertex i.
  double double_row_sum(Vertex i) const { return row_sums_[i]; }
  double double_total() const noexcept { return double_total_; }

  double trace() const;

 private:
  int n_ = 0;
  double vacuum_ = 0.0;
  Eigen::MatrixXd single_;
  std::vector<DoubleExcitation> doubles_;
  Eigen::MatrixXd double_matrix_;
  std::vector<double> row_sums_;
  double double_total_ = 0.0;
};

struct ExcitationCheck {
  double trace_error = 0.0;
  double single_block_min_eigenvalue = 0.0;
  double symmetry_error = 0.0;
  bool nonnegative_weights = true;
  bool ok = false;
};

ExcitationCheck check_excitation_state(const ExcitationBlockState& s, const ValidityTolerances& tol = {});

/// The universal mixed state realizing g. Requires n >= 2.
ExcitationBlockState build_mixed(const EntangledGraph& g);

inline constexpr int kDefaultDenseCap = 12;

DensityOperator expand_dense(const ExcitationBlockState& s, int dense_cap = kDefaultDenseCap);

/// Reduced operator of qubits (i, j), computed from the sparse form in O(n).
DensityOperator reduce_pair(const ExcitationBlockState& s, Vertex i, Vertex j);
Matrix4 reduce_pair_matrix(const ExcitationBlockState& s, Vertex i, Vertex j);

DensityOperator marginal(const ExcitationBlockState& s, Vertex i);

struct WebParameters {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  bool operator==(const WebParameters&) const = default;
};

/// alpha|0..0> + beta|1..1> + gamma/sqrt(k) sum over entangled pairs |1_i 1_j>.
PureState build_web(const EntangledGraph& g, const WebParameters& p);

/// alpha = beta = gamma = 1/sqrt(3), or alpha = beta = 1/sqrt(2), gamma = 0
/// when the graph has no entanglement edge.
WebParameters default_web_parameters(const EntangledGraph& g);

/// Simplex grid of squared parameters (i/20, j/20, 1 - i/20 - j/20), strictly
/// positive components (gamma = 0 when k = 0), in ascending (i, j) order.
std::vector<WebParameters> web_parameter_grid(const EntangledGraph& g);

struct WebRealization {
  WebParameters parameters;
  PureState state;
  /// 0 for the default parameters, otherwise 1 + grid position.
  int candidate = 0;
};

/// Tries the default parameters, then the grid, returning the first state the
/// classifier maps exactly onto g.
std::optional<WebRealization> realize_web(const EntangledGraph& g, const Tolerances& tol = {});

/// States of the six realizable three-qubit classes, letters a, b, g, h, i, j.
/// The other four letters throw Error(kInvalidArgument).
PureState three_qubit_catalog(char label);

inline constexpr char kCatalogLetters[] = {'a', 'b', 'g', 'h', 'i', 'j'};

}  // namespace egraph
