#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "egraph/error.hpp"
#include "egraph/linalg.hpp"
#include "support.hpp"

using namespace egraph;

namespace {

Matrix4 sigma_yy() {
  Matrix4 s = Matrix4::Zero();
  s(0, 3) = s(3, 0) = -1.0;
  s(1, 2) = s(2, 1) = 1.0;
  return s;
}

// Direct recipe: square roots of the (non-Hermitian) eigenvalues of rho rho~.
double concurrence_oracle(const Matrix4& rho) {
  const Matrix4 tilde = sigma_yy() * rho.conjugate() * sigma_yy();
  Eigen::ComplexEigenSolver<Matrix4> es(rho * tilde);
  std::vector<double> l;
  for (int k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(es.eigenvalues()(k).real(), 0.0)));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Explicit index loop; kept qubits stay in ascending order, MSB first.
Matrix partial_trace_oracle(const Matrix& rho, int n, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  Matrix out = Matrix::Zero(1 << k, 1 << k);
  auto bit = [&](long idx, int q) { return (idx >> (n - 1 - q)) & 1; };
  for (long r = 0; r < (1L << n); ++r)
    for (long c = 0; c < (1L << n); ++c) {
      bool same = true;
      for (int q = 0; q < n && same; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end() && bit(r, q) != bit(c, q)) same = false;
      if (!same) continue;
      long rr = 0, cc = 0;
      std::vector<int> sorted = keep;
      std::sort(sorted.begin(), sorted.end());
      for (int q : sorted) {
        rr = 2 * rr + bit(r, q);
        cc = 2 * cc + bit(c, q);
      }
      out(rr, cc) += rho(r, c);
    }
  return out;
}

PureState bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState::on(2, v);
}

}  // namespace

TEST_CASE("basis convention: first qubit is the most significant bit") {
  const auto psi = PureState::basis(3, 0b100);
  const int keep0[] = {0};
  const int keep2[] = {2};
  CHECK(std::abs(partial_trace(psi, keep0).matrix()(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(partial_trace(psi, keep2).matrix()(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("construction checks shape and labels") {
  CHECK_THROWS_AS(PureState::on(2, Vector::Zero(3)), Error);
  CHECK_THROWS_AS(PureState({0, 0}, Vector::Zero(4)), Error);
  CHECK_THROWS_AS(DensityOperator({0}, Matrix::Identity(4, 4)), Error);
}

TEST_CASE("validity checks") {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  CHECK(check_density(m).ok);
  m(0, 1) = 0.1;
  CHECK_FALSE(check_density(m).ok);
  CHECK_THROWS_AS(require_density(m), Error);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK(check_density(neg).min_eigenvalue == doctest::Approx(-0.5));
  CHECK_FALSE(check_density(neg).ok);
  CHECK_THROWS_AS(require_normalized(PureState::on(1, Vector::Ones(2))), Error);
}

TEST_CASE("Bell state metrics") {
  const auto rho = projector(bell());
  CHECK(concurrence(rho) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(negativity(rho) == doctest::Approx(0.5).epsilon(1e-14));
  const Matrix id = Matrix::Identity(4, 4) * 0.25;
  CHECK(concurrence(DensityOperator(default_labels(2), id)) == 0.0);
  CHECK(negativity(DensityOperator(default_labels(2), id)) < 1e-15);
}

TEST_CASE("pure two-qubit concurrence equals 2|ad - bc|") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Vector v = testing::random_pure(2, rng);
    const double expect = 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
    CHECK(concurrence(projector(PureState::on(2, v))) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("concurrence matches the non-Hermitian eigenvalue route") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const Matrix4 rho = testing::random_density(2, 1 + t % 4, rng);
    CHECK(two_qubit::concurrence(rho) == doctest::Approx(concurrence_oracle(rho)).epsilon(1e-7));
  }
}

TEST_CASE("partial trace matches the explicit index loop") {
  std::mt19937_64 rng(13);
  const Matrix rho = testing::random_density(4, 3, rng);
  const DensityOperator dm(default_labels(4), rho);
  for (const std::vector<int>& keep : {std::vector<int>{0}, {3}, {1, 2}, {2, 0}, {3, 1, 0}}) {
    const auto got = partial_trace(dm, keep);
    CHECK((got.matrix() - partial_trace_oracle(rho, 4, keep)).cwiseAbs().maxCoeff() < 1e-14);
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    CHECK(got.qubits() == sorted);
  }
  const Vector psi = testing::random_pure(4, rng);
  const std::vector<int> keep{1, 3};
  CHECK((partial_trace(PureState::on(4, psi), keep).matrix() -
         partial_trace_oracle(psi * psi.adjoint(), 4, keep))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("partial trace uses qubit labels") {
  std::mt19937_64 rng(14);
  const DensityOperator a({7}, testing::random_density(1, 2, rng));
  const DensityOperator b({3}, testing::random_density(1, 2, rng));
  const auto ab = tensor_product(a, b);
  CHECK(ab.qubits() == QubitLabels{7, 3});
  const int keep[] = {3};
  CHECK((partial_trace(ab, keep).matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  const int missing[] = {5};
  CHECK_THROWS_AS(partial_trace(ab, missing), Error);
  CHECK_THROWS_AS(tensor_product(a, a), Error);
}

TEST_CASE("partial transpose of a product is a product of transposes") {
  std::mt19937_64 rng(15);
  const DensityOperator a({0}, testing::random_density(1, 2, rng));
  const DensityOperator b({1}, testing::random_density(1, 2, rng));
  const Matrix pt = partial_transpose(tensor_product(a, b), 1);
  const Matrix expect = tensor_product(a, DensityOperator({1}, b.matrix().transpose())).matrix();
  CHECK((pt - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("hermitian eigenvalues are sorted descending") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 3;
  m(2, 2) = 2;
  const auto ev = hermitian_eigenvalues(m);
  CHECK(ev == std::vector<double>{3, 2, 1});
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(m), Error);
}

TEST_CASE("property: random density operators") {
  std::mt19937_64 rng(16);
  int both = 0;
  for (int t = 0; t < 1000; ++t) {
    const Matrix4 rho = t % 3 == 0 ? Matrix4(testing::random_separable(1 + t % 5, rng))
                                   : Matrix4(testing::random_density(2, 1 + t % 4, rng));
    const double c = two_qubit::concurrence(rho);
    const double n = two_qubit::negativity(rho);
    CHECK((c > 1e-9) == (n > 1e-9));
    if (c > 1e-9) ++both;
    CHECK(c <= 1.0 + 1e-12);
    CHECK(n <= 0.5 + 1e-12);
    const Matrix2 a = two_qubit::marginal_first(rho);
    const Matrix2 b = two_qubit::marginal_second(rho);
    CHECK(std::abs(a.trace() - 1.0) < 1e-12);
    CHECK(std::abs(b.trace() - 1.0) < 1e-12);
    Matrix4 prod;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) prod.block(2 * x, 2 * y, 2, 2) = a(x, y) * b;
    CHECK(two_qubit::factorization_distance(rho) == doctest::Approx((rho - prod).norm()).epsilon(1e-12));
    CHECK(two_qubit::factorization_distance(prod) < 1e-14);
  }
  CHECK(both > 100);
}

TEST_CASE("property: concurrence is invariant under local unitaries") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const Matrix rho = testing::random_density(2, 1 + t % 4, rng);
    const Matrix u = testing::random_unitary(2, rng), v = testing::random_unitary(2, rng);
    Matrix uv(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) uv.block(2 * a, 2 * b, 2, 2) = u(a, b) * v;
    const Matrix4 r = rho;
    const Matrix4 rot = uv * rho * uv.adjoint();
    CHECK(std::abs(two_qubit::concurrence(r) - two_qubit::concurrence(rot)) < 1e-9);
    CHECK(std::abs(two_qubit::negativity(r) - two_qubit::negativity(rot)) < 1e-9);
  }
}

TEST_CASE("frobenius distance checks shapes") {
  CHECK(frobenius_distance(Matrix::Identity(2, 2), Matrix::Zero(2, 2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(frobenius_distance(Matrix::Identity(2, 2), Matrix::Zero(4, 4)), Error);
}
