#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "egraph/graph.hpp"
#include "egraph/linalg.hpp"

namespace egraph::testing {

inline EntangledGraph random_graph(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cls(0, 2);
  return EntangledGraph::from_pair_classes(n, [&](Vertex, Vertex) { return static_cast<PairClass>(cls(rng)); });
}

inline Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = Complex(nd(rng), nd(rng));
  return g;
}

/// Random density operator of the given rank on `qubits` qubits.
inline Matrix random_density(int qubits, int rank, std::mt19937_64& rng) {
  const int d = 1 << qubits;
  const Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline Vector random_pure(int qubits, std::mt19937_64& rng) {
  Vector v = ginibre(1 << qubits, 1, rng).col(0);
  return v / v.norm();
}

/// Haar-ish random unitary from the QR decomposition of a Ginibre matrix.
inline Matrix random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < d; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

/// Convex mixture of `terms` random product pure states of two qubits.
inline Matrix random_separable(int terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Matrix rho = Matrix::Zero(4, 4);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const Vector a = random_pure(1, rng);
    const Vector b = random_pure(1, rng);
    Vector ab(4);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) ab(2 * x + y) = a(x) * b(y);
    const double w = u(rng);
    rho += w * ab * ab.adjoint();
    total += w;
  }
  return rho / total;
}

}  // namespace egraph::testing
