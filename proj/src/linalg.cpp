#include "egraph/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "egraph/error.hpp"

namespace egraph {

namespace {

int position_of(const QubitLabels& labels, int label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error(ErrorCode::kInvalidArgument, "unknown qubit label " + std::to_string(label));
  return static_cast<int>(it - labels.begin());
}

void require_distinct(const QubitLabels& labels) {
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::kInvalidArgument, "duplicate qubit labels");
}

// Basis-index offsets of every configuration of the qubits at `positions`
// (given in significance order) inside an n-qubit index.
std::vector<std::size_t> scatter_table(int n, const std::vector<int>& positions) {
  const std::size_t count = std::size_t{1} << positions.size();
  std::vector<std::size_t> table(count, 0);
  const int k = static_cast<int>(positions.size());
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t full = 0;
    for (int q = 0; q < k; ++q)
      if ((c >> (k - 1 - q)) & 1U) full |= std::size_t{1} << (n - 1 - positions[q]);
    table[c] = full;
  }
  return table;
}

struct Split {
  QubitLabels kept_labels;
  std::vector<std::size_t> kept;
  std::vector<std::size_t> rest;
};

Split split_qubits(const QubitLabels& labels, std::span<const int> keep) {
  if (keep.empty()) throw Error(ErrorCode::kInvalidArgument, "partial trace needs at least one kept qubit");
  const int n = static_cast<int>(labels.size());
  std::vector<bool> is_kept(static_cast<std::size_t>(n), false);
  for (int label : keep) {
    const int p = position_of(labels, label);
    if (is_kept[p]) throw Error(ErrorCode::kInvalidArgument, "duplicate qubit in keep set");
    is_kept[p] = true;
  }
  Split split;
  std::vector<int> kept_pos, rest_pos;
  for (int p = 0; p < n; ++p) {
    if (is_kept[p]) {
      kept_pos.push_back(p);
      split.kept_labels.push_back(labels[p]);
    } else {
      rest_pos.push_back(p);
    }
  }
  split.kept = scatter_table(n, kept_pos);
  split.rest = scatter_table(n, rest_pos);
  return split;
}

const Matrix4& spin_flip() {
  static const Matrix4 yy = [] {
    Matrix4 m = Matrix4::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}

double hermitian_error(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

QubitLabels default_labels(int n) {
  QubitLabels labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  return labels;
}

DensityOperator::DensityOperator(QubitLabels qubits, Matrix matrix)
    : qubits_(std::move(qubits)), matrix_(std::move(matrix)) {
  require_distinct(qubits_);
  const Eigen::Index dim = Eigen::Index{1} << qubits_.size();
  if (matrix_.rows() != dim || matrix_.cols() != dim)
    throw Error(ErrorCode::kInvalidArgument, "density matrix shape does not match qubit count");
}

PureState::PureState(QubitLabels qubits, Vector amplitudes)
    : qubits_(std::move(qubits)), amplitudes_(std::move(amplitudes)) {
  require_distinct(qubits_);
  if (amplitudes_.size() != (Eigen::Index{1} << qubits_.size()))
    throw Error(ErrorCode::kInvalidArgument, "amplitude count does not match qubit count");
}

PureState PureState::on(int n, Vector amplitudes) { return {default_labels(n), std::move(amplitudes)}; }

PureState PureState::basis(int n, std::uint64_t index) {
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return on(n, std::move(v));
}

DensityCheck check_density(const Matrix& m, const ValidityTolerances& tol) {
  DensityCheck check;
  if (m.rows() != m.cols() || m.rows() == 0) return check;
  check.hermitian_error = hermitian_error(m);
  check.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  check.min_eigenvalue = es.eigenvalues().minCoeff();
  check.ok = check.hermitian_error <= tol.hermitian && check.trace_error <= tol.trace &&
             check.min_eigenvalue >= -tol.psd;
  return check;
}

void require_density(const Matrix& m, const ValidityTolerances& tol) {
  const auto c = check_density(m, tol);
  if (c.ok) return;
  throw Error(ErrorCode::kInvalidState, "not a density operator: hermitian error " +
                                            std::to_string(c.hermitian_error) + ", trace error " +
                                            std::to_string(c.trace_error) + ", min eigenvalue " +
                                            std::to_string(c.min_eigenvalue));
}

void require_normalized(const PureState& psi, const ValidityTolerances& tol) {
  const double err = std::abs(psi.amplitudes().squaredNorm() - 1.0);
  if (err > tol.norm)
    throw Error(ErrorCode::kInvalidState, "pure state not normalized (|norm^2 - 1| = " + std::to_string(err) + ")");
}

DensityOperator projector(const PureState& psi) {
  return {psi.qubits(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  QubitLabels labels = a.qubits();
  labels.insert(labels.end(), b.qubits().begin(), b.qubits().end());
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i)
    for (Eigen::Index j = 0; j < ma.cols(); ++j)
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
  return {std::move(labels), std::move(out)};
}

PureState tensor_product(const PureState& a, const PureState& b) {
  QubitLabels labels = a.qubits();
  labels.insert(labels.end(), b.qubits().begin(), b.qubits().end());
  const Vector& va = a.amplitudes();
  const Vector& vb = b.amplitudes();
  Vector out(va.size() * vb.size());
  for (Eigen::Index i = 0; i < va.size(); ++i) out.segment(i * vb.size(), vb.size()) = va(i) * vb;
  return {std::move(labels), std::move(out)};
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const Split s = split_qubits(rho.qubits(), keep);
  const auto dk = static_cast<Eigen::Index>(s.kept.size());
  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex sum = 0.0;
      for (std::size_t x : s.rest)
        sum += m(static_cast<Eigen::Index>(s.kept[a] | x), static_cast<Eigen::Index>(s.kept[b] | x));
      out(a, b) = sum;
    }
  return {s.kept_labels, std::move(out)};
}

DensityOperator partial_trace(const PureState& psi, std::span<const int> keep) {
  const Split s = split_qubits(psi.qubits(), keep);
  const auto dk = static_cast<Eigen::Index>(s.kept.size());
  const auto dr = static_cast<Eigen::Index>(s.rest.size());
  Matrix t(dk, dr);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index x = 0; x < dr; ++x) t(a, x) = psi.amplitudes()(static_cast<Eigen::Index>(s.kept[a] | s.rest[x]));
  return {s.kept_labels, t * t.adjoint()};
}

Matrix partial_transpose(const DensityOperator& rho, int which) {
  if (rho.qubit_count() != 2) throw Error(ErrorCode::kInvalidArgument, "partial transpose requires exactly 2 qubits");
  const int p = position_of(rho.qubits(), which);
  const Matrix4 m = rho.matrix();
  if (p == 1) return two_qubit::partial_transpose_second(m);
  // transposing the first qubit equals the full transpose of the second-qubit transpose
  return two_qubit::partial_transpose_second(m).transpose();
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kInvalidArgument, "eigenvalues of a non-square matrix");
  if (m.size() == 0) return {};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (hermitian_error(m) > 1e-10 * scale) throw Error(ErrorCode::kInvalidArgument, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> values(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

namespace {

const DensityOperator& require_two_qubit_density(const DensityOperator& rho) {
  if (rho.qubit_count() != 2) throw Error(ErrorCode::kInvalidArgument, "expected a two-qubit operator");
  require_density(rho.matrix());
  return rho;
}

}  // namespace

double concurrence(const DensityOperator& rho) {
  return two_qubit::concurrence(require_two_qubit_density(rho).matrix());
}

double negativity(const DensityOperator& rho) {
  return two_qubit::negativity(require_two_qubit_density(rho).matrix());
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::kInvalidArgument, "frobenius_distance: shape mismatch");
  return (a - b).norm();
}

namespace two_qubit {

double concurrence(const Matrix4& rho) {
  // lambda_i are the singular values of W^T (sy x sy) W for rho = W W^+;
  // working with W avoids square roots of near-zero eigenvalues.
  const Matrix4 h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> es(h);
  Eigen::Vector4d w = es.eigenvalues();
  for (int k = 0; k < 4; ++k) w(k) = std::sqrt(std::max(w(k), 0.0));
  const Matrix4 factor = es.eigenvectors() * w.asDiagonal();
  const Matrix4 tau = factor.transpose() * spin_flip() * factor;
  Eigen::JacobiSVD<Matrix4> svd(tau);
  const Eigen::Vector4d s = svd.singularValues();
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double negativity(const Matrix4& rho) {
  Matrix4 pt = partial_transpose_second(rho);
  pt = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> es(pt, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (int k = 0; k < 4; ++k)
    if (es.eigenvalues()(k) < 0.0) sum -= es.eigenvalues()(k);
  return sum;
}

Matrix2 marginal_first(const Matrix4& rho) {
  Matrix2 m;
  m(0, 0) = rho(0, 0) + rho(1, 1);
  m(0, 1) = rho(0, 2) + rho(1, 3);
  m(1, 0) = rho(2, 0) + rho(3, 1);
  m(1, 1) = rho(2, 2) + rho(3, 3);
  return m;
}

Matrix2 marginal_second(const Matrix4& rho) {
  Matrix2 m;
  m(0, 0) = rho(0, 0) + rho(2, 2);
  m(0, 1) = rho(0, 1) + rho(2, 3);
  m(1, 0) = rho(1, 0) + rho(3, 2);
  m(1, 1) = rho(1, 1) + rho(3, 3);
  return m;
}

double factorization_distance(const Matrix4& rho) {
  const Matrix2 a = marginal_first(rho);
  const Matrix2 b = marginal_second(rho);
  double sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) sum += std::norm(rho(2 * i + k, 2 * j + l) - a(i, j) * b(k, l));
  return std::sqrt(sum);
}

Matrix4 partial_transpose_second(const Matrix4& rho) {
  Matrix4 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  return out;
}

}  // namespace two_qubit

}  // namespace egraph
