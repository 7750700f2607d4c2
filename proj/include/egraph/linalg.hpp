#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace egraph {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix4 = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;
using QubitLabels = std::vector<int>;

// Basis convention: the first listed qubit is the most significant bit of the
// basis index, |0..0> is index 0, matrices are row-major in that basis.

QubitLabels default_labels(int n);

class DensityOperator {
 public:
  DensityOperator() = default;
  DensityOperator(QubitLabels qubits, Matrix matrix);

  const QubitLabels& qubits() const noexcept { return qubits_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  int qubit_count() const noexcept { return static_cast<int>(qubits_.size()); }

 private:
  QubitLabels qubits_;
  Matrix matrix_;
};

class PureState {
 public:
  PureState() = default;
  PureState(QubitLabels qubits, Vector amplitudes);

  /// Qubits labeled 0..n-1.
  static PureState on(int n, Vector amplitudes);
  static PureState basis(int n, std::uint64_t index);

  const QubitLabels& qubits() const noexcept { return qubits_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  int qubit_count() const noexcept { return static_cast<int>(qubits_.size()); }

 private:
  QubitLabels qubits_;
  Vector amplitudes_;
};

struct ValidityTolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double psd = 1e-10;
  double norm = 1e-10;
};

struct DensityCheck {
  double hermitian_error = 0.0;  // max |a_ij - conj(a_ji)|
  double trace_error = 0.0;      // |tr - 1|
  double min_eigenvalue = 0.0;
  bool ok = false;
};

DensityCheck check_density(const Matrix& m, const ValidityTolerances& tol = {});

/// Throws Error(kInvalidState) when the matrix is not a density operator.
void require_density(const Matrix& m, const ValidityTolerances& tol = {});
void require_normalized(const PureState& psi, const ValidityTolerances& tol = {});

DensityOperator projector(const PureState& psi);

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);
PureState tensor_product(const PureState& a, const PureState& b);

/// Reduced operator on `keep`; output qubit order follows the input's order.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
DensityOperator partial_trace(const PureState& psi, std::span<const int> keep);

/// Transpose on the indices of qubit `which` of a two-qubit operator.
Matrix partial_transpose(const DensityOperator& rho, int which);

/// Real eigenvalues of a Hermitian matrix in descending order.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

/// Concurrence max(0, l1 - l2 - l3 - l4), l the square roots of the
/// eigenvalues of sqrt(rho) rho~ sqrt(rho), rho~ = (sy x sy) rho* (sy x sy).
double concurrence(const DensityOperator& rho);

/// Sum of |negative eigenvalues| of the partial transpose.
double negativity(const DensityOperator& rho);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// Unchecked fixed-size kernels on 4x4 two-qubit matrices, used on hot paths
/// after the caller has validated the operator.
namespace two_qubit {

double concurrence(const Matrix4& rho);
double negativity(const Matrix4& rho);
Matrix2 marginal_first(const Matrix4& rho);
Matrix2 marginal_second(const Matrix4& rho);
/// ||rho - rho_1 x rho_2||_F with rho_1, rho_2 the marginals of rho.
double factorization_distance(const Matrix4& rho);
Matrix4 partial_transpose_second(const Matrix4& rho);

}  // namespace two_qubit

}  // namespace egraph
