#include "egraph/analyzer.hpp"

#include <cmath>
#include <string>

#include "egraph/error.hpp"
#include "egraph/synthesis.hpp"

namespace egraph {

namespace {

bool near_threshold(double value, double threshold) {
  return value >= threshold / kMarginalFactor && value <= threshold * kMarginalFactor;
}

GraphExtraction assemble(int n, std::vector<PairVerdict> verdicts) {
  std::size_t k = 0;
  GraphExtraction out;
  out.graph = EntangledGraph::from_pair_classes(n, [&](Vertex, Vertex) { return verdicts[k++].cls; });
  out.verdicts = std::move(verdicts);
  return out;
}

}  // namespace

PairVerdict classify_pair_matrix(const Matrix4& rho, const Tolerances& tol) {
  require_density(rho, tol.validity);
  PairVerdict v;
  v.negativity = two_qubit::negativity(rho);
  v.concurrence = two_qubit::concurrence(rho);
  v.factorization_distance = two_qubit::factorization_distance(rho);
  if (v.negativity > tol.entanglement)
    v.cls = PairClass::kEntangled;
  else if (v.factorization_distance <= tol.factorization)
    v.cls = PairClass::kUncorrelated;
  else
    v.cls = PairClass::kClassicalOnly;
  v.marginal = near_threshold(v.negativity, tol.entanglement) ||
               (v.cls != PairClass::kEntangled && near_threshold(v.factorization_distance, tol.factorization));
  return v;
}

PairVerdict classify_pair(const DensityOperator& rho_ij, const Tolerances& tol) {
  if (rho_ij.qubit_count() != 2) throw Error(ErrorCode::kInvalidArgument, "classify_pair needs a two-qubit operator");
  PairVerdict v = classify_pair_matrix(rho_ij.matrix(), tol);
  v.i = rho_ij.qubits()[0];
  v.j = rho_ij.qubits()[1];
  return v;
}

std::vector<Matrix4> pair_reductions(const Vector& amplitudes, int n) {
  std::vector<Matrix4> out;
  if (n < 2) return out;
  const std::size_t rest_count = std::size_t{1} << (n - 2);
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> t(4, static_cast<Eigen::Index>(rest_count));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::size_t bi = std::size_t{1} << (n - 1 - i);
      const std::size_t bj = std::size_t{1} << (n - 1 - j);
      for (std::size_t x = 0; x < rest_count; ++x) {
        // spread x over the n-2 positions that skip i and j
        std::size_t full = 0;
        int bit = n - 3;
        for (int p = 0; p < n; ++p) {
          if (p == i || p == j) continue;
          if ((x >> bit) & 1U) full |= std::size_t{1} << (n - 1 - p);
          --bit;
        }
        const auto col = static_cast<Eigen::Index>(x);
        t(0, col) = amplitudes(static_cast<Eigen::Index>(full));
        t(1, col) = amplitudes(static_cast<Eigen::Index>(full | bj));
        t(2, col) = amplitudes(static_cast<Eigen::Index>(full | bi));
        t(3, col) = amplitudes(static_cast<Eigen::Index>(full | bi | bj));
      }
      out.push_back(t * t.adjoint());
    }
  return out;
}

GraphExtraction extract_graph(const PureState& psi, const Tolerances& tol) {
  require_normalized(psi, tol.validity);
  const int n = psi.qubit_count();
  const auto reductions = pair_reductions(psi.amplitudes(), n);
  std::vector<PairVerdict> verdicts;
  std::size_t k = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      PairVerdict v = classify_pair_matrix(reductions[k++], tol);
      v.i = i;
      v.j = j;
      verdicts.push_back(v);
    }
  return assemble(n, std::move(verdicts));
}

GraphExtraction extract_graph(const DensityOperator& rho, const Tolerances& tol) {
  require_density(rho.matrix(), tol.validity);
  const int n = rho.qubit_count();
  std::vector<PairVerdict> verdicts;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      const int keep[2] = {rho.qubits()[i], rho.qubits()[j]};
      PairVerdict v = classify_pair_matrix(partial_trace(rho, keep).matrix(), tol);
      v.i = i;
      v.j = j;
      verdicts.push_back(v);
    }
  return assemble(n, std::move(verdicts));
}

GraphExtraction extract_graph(const ExcitationBlockState& s, const Tolerances& tol) {
  const auto check = check_excitation_state(s, tol.validity);
  if (!check.ok)
    throw Error(ErrorCode::kInvalidState, "excitation-block state is not a density operator (trace error " +
                                              std::to_string(check.trace_error) + ", min single-block eigenvalue " +
                                              std::to_string(check.single_block_min_eigenvalue) + ")");
  const int n = s.size();
  std::vector<PairVerdict> verdicts;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      PairVerdict v = classify_pair_matrix(reduce_pair_matrix(s, i, j), tol);
      v.i = i;
      v.j = j;
      verdicts.push_back(v);
    }
  return assemble(n, std::move(verdicts));
}

}  // namespace egraph
