#include "egraph/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egraph/error.hpp"

namespace egraph {

namespace {

void require_index(int n, Vertex i) {
  if (i < 0 || i >= n) throw Error(ErrorCode::kInvalidArgument, "qubit index " + std::to_string(i) + " out of range");
}

std::size_t single_index(int n, Vertex i) { return std::size_t{1} << (n - 1 - i); }

}  // namespace

ExcitationBlockState::ExcitationBlockState(int n, double vacuum, Eigen::MatrixXd single_block,
                                           std::vector<DoubleExcitation> doubles)
    : n_(n), vacuum_(vacuum), single_(std::move(single_block)) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "excitation state needs at least one qubit");
  if (single_.rows() != n || single_.cols() != n)
    throw Error(ErrorCode::kInvalidArgument, "single_block must be n x n");
  double_matrix_ = Eigen::MatrixXd::Zero(n, n);
  for (auto d : doubles) {
    if (d.i > d.j) std::swap(d.i, d.j);
    require_index(n, d.i);
    require_index(n, d.j);
    if (d.i == d.j) throw Error(ErrorCode::kInvalidArgument, "double excitation needs two distinct qubits");
    double_matrix_(d.i, d.j) += d.weight;
    double_matrix_(d.j, d.i) += d.weight;
  }
  row_sums_.assign(static_cast<std::size_t>(n), 0.0);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      const double w = double_matrix_(i, j);
      if (w == 0.0) continue;
      doubles_.push_back({i, j, w});
      row_sums_[i] += w;
      row_sums_[j] += w;
      double_total_ += w;
    }
}

double ExcitationBlockState::double_weight(Vertex i, Vertex j) const {
  require_index(n_, i);
  require_index(n_, j);
  return i == j ? 0.0 : double_matrix_(i, j);
}

double ExcitationBlockState::trace() const { return vacuum_ + single_.trace() + double_total_; }

ExcitationCheck check_excitation_state(const ExcitationBlockState& s, const ValidityTolerances& tol) {
  ExcitationCheck c;
  c.trace_error = std::abs(s.trace() - 1.0);
  c.symmetry_error = (s.single_block() - s.single_block().transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.single_block(), Eigen::EigenvaluesOnly);
  c.single_block_min_eigenvalue = es.eigenvalues().minCoeff();
  c.nonnegative_weights = s.vacuum_weight() >= -tol.psd;
  for (const auto& d : s.doubles()) c.nonnegative_weights = c.nonnegative_weights && d.weight >= -tol.psd;
  c.ok = c.trace_error <= tol.trace && c.symmetry_error <= tol.hermitian &&
         c.single_block_min_eigenvalue >= -tol.psd && c.nonnegative_weights;
  return c;
}

ExcitationBlockState build_mixed(const EntangledGraph& g) {
  require_valid(g);
  const int n = g.size();
  if (n < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "the mixed-state construction needs at least 2 qubits; single-vertex graphs are handled by "
                "feasibility");
  const auto prof = profile(g);
  const double nn = n;
  const double z = 2.0 * (nn - 1.0) * (nn - 1.0);

  const double vacuum = (nn * nn - 3.0 * nn + 0.5 * prof.total + 2.0) / z;
  Eigen::MatrixXd single = Eigen::MatrixXd::Zero(n, n);
  for (Vertex i = 0; i < n; ++i) single(i, i) = ((nn - 1.0) - 0.5 * prof.m[i]) / z;
  for (const auto& e : g.entangled_edges()) {
    single(e.a, e.b) = 1.0 / z;
    single(e.b, e.a) = 1.0 / z;
  }
  std::vector<DoubleExcitation> doubles;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (g.pair_class(i, j) == PairClass::kUncorrelated) doubles.push_back({i, j, 0.5 / z});
  return {n, vacuum, std::move(single), std::move(doubles)};
}

DensityOperator expand_dense(const ExcitationBlockState& s, int dense_cap) {
  const int n = s.size();
  if (n > dense_cap)
    throw Error(ErrorCode::kCapExceeded,
                "dense expansion cap exceeded: n=" + std::to_string(n) + " > " + std::to_string(dense_cap));
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  m(0, 0) = s.vacuum_weight();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) {
      const double w = s.single_block()(i, j);
      if (w != 0.0)
        m(static_cast<Eigen::Index>(single_index(n, i)), static_cast<Eigen::Index>(single_index(n, j))) = w;
    }
  for (const auto& d : s.doubles()) {
    const auto idx = static_cast<Eigen::Index>(single_index(n, d.i) | single_index(n, d.j));
    m(idx, idx) = d.weight;
  }
  return {default_labels(n), std::move(m)};
}

Matrix4 reduce_pair_matrix(const ExcitationBlockState& s, Vertex i, Vertex j) {
  const int n = s.size();
  require_index(n, i);
  require_index(n, j);
  if (i == j) throw Error(ErrorCode::kInvalidArgument, "reduce_pair needs two distinct qubits");
  const auto& single = s.single_block();
  const double d_ij = s.double_weight(i, j);
  Matrix4 r = Matrix4::Zero();
  // basis |q_i q_j>: 0 = 00, 1 = 01, 2 = 10, 3 = 11
  r(0, 0) = s.vacuum_weight() + (single.trace() - single(i, i) - single(j, j)) +
            (s.double_total() - s.double_row_sum(i) - s.double_row_sum(j) + d_ij);
  r(1, 1) = single(j, j) + s.double_row_sum(j) - d_ij;
  r(2, 2) = single(i, i) + s.double_row_sum(i) - d_ij;
  r(3, 3) = d_ij;
  r(2, 1) = single(i, j);
  r(1, 2) = single(j, i);
  return r;
}

DensityOperator reduce_pair(const ExcitationBlockState& s, Vertex i, Vertex j) {
  return {{i, j}, reduce_pair_matrix(s, i, j)};
}

DensityOperator marginal(const ExcitationBlockState& s, Vertex i) {
  require_index(s.size(), i);
  const auto& single = s.single_block();
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = s.vacuum_weight() + (single.trace() - single(i, i)) + (s.double_total() - s.double_row_sum(i));
  m(1, 1) = single(i, i) + s.double_row_sum(i);
  return {{i}, std::move(m)};
}

PureState build_web(const EntangledGraph& g, const WebParameters& p) {
  require_valid(g);
  if (!is_complete_web(g)) throw Error(ErrorCode::kInvalidArgument, "build_web requires every pair to carry an edge");
  const int n = g.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "build_web requires at least 2 qubits");
  const auto k = static_cast<int>(g.entangled_edges().size());
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "web parameters alpha and beta must be positive");
  if (k == 0 && p.gamma != 0.0)
    throw Error(ErrorCode::kInvalidArgument, "gamma must be 0 when there are no entanglement edges");
  if (k > 0 && !(p.gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  const double norm = p.alpha * p.alpha + p.beta * p.beta + p.gamma * p.gamma;
  if (std::abs(norm - 1.0) > 1e-10)
    throw Error(ErrorCode::kInvalidArgument, "web parameters must satisfy alpha^2 + beta^2 + gamma^2 = 1");

  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector v = Vector::Zero(dim);
  v(0) += p.alpha;
  v(dim - 1) += p.beta;
  if (k > 0) {
    const double c = p.gamma / std::sqrt(static_cast<double>(k));
    for (const auto& e : g.entangled_edges())
      v(static_cast<Eigen::Index>(single_index(n, e.a) | single_index(n, e.b))) += c;
  }
  // only n = 2 overlaps |1..1> with a double excitation
  v /= v.norm();
  return PureState::on(n, std::move(v));
}

WebParameters default_web_parameters(const EntangledGraph& g) {
  if (g.entangled_edges().empty()) return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
  const double c = 1.0 / std::sqrt(3.0);
  return {c, c, c};
}

std::vector<WebParameters> web_parameter_grid(const EntangledGraph& g) {
  constexpr int kSteps = 20;
  const bool has_entanglement = !g.entangled_edges().empty();
  std::vector<WebParameters> grid;
  for (int i = 1; i < kSteps; ++i)
    for (int j = 1; j < kSteps; ++j) {
      const int rest = kSteps - i - j;
      if (has_entanglement ? rest <= 0 : rest != 0) continue;
      grid.push_back({std::sqrt(static_cast<double>(i) / kSteps), std::sqrt(static_cast<double>(j) / kSteps),
                      std::sqrt(static_cast<double>(rest) / kSteps)});
    }
  return grid;
}

std::optional<WebRealization> realize_web(const EntangledGraph& g, const Tolerances& tol) {
  auto attempt = [&](const WebParameters& p, int candidate) -> std::optional<WebRealization> {
    PureState psi = build_web(g, p);
    if (extract_graph(psi, tol).graph == g) return WebRealization{p, std::move(psi), candidate};
    return std::nullopt;
  };
  if (auto r = attempt(default_web_parameters(g), 0)) return r;
  const auto grid = web_parameter_grid(g);
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (auto r = attempt(grid[k], static_cast<int>(k) + 1)) return r;
  return std::nullopt;
}

PureState three_qubit_catalog(char label) {
  auto ket = [](std::initializer_list<int> indices, double amp) {
    Vector v = Vector::Zero(8);
    for (int idx : indices) v(idx) = amp;
    return PureState::on(3, std::move(v));
  };
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  switch (label) {
    case 'a':
      return ket({0b000}, 1.0);
    case 'b':
      return ket({0b000, 0b011}, r2);
    case 'g':
      return ket({0b001, 0b010, 0b100}, r3);
    case 'h':
      return ket({0b000, 0b100, 0b110, 0b111}, 0.5);
    case 'i':
      return ket({0b000, 0b011, 0b111}, r3);
    case 'j':
      return ket({0b000, 0b111}, r2);
    case 'c':
    case 'd':
    case 'e':
    case 'f':
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("three-qubit class ") + label + " has no pure representative");
    default:
      throw Error(ErrorCode::kInvalidArgument, std::string("unknown three-qubit class label '") + label + "'");
  }
}

}  // namespace egraph
