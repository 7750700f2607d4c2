#include <cmath>
#include <random>

#include "doctest.h"
#include "egraph/error.hpp"
#include "egraph/synthesis.hpp"
#include "support.hpp"

using namespace egraph;

TEST_CASE("mixed construction needs two vertices") {
  CHECK_THROWS_AS(build_mixed(EntangledGraph(1, {}, {})), Error);
  CHECK_THROWS_AS(build_mixed(EntangledGraph(3, {{0, 1}}, {{0, 1}})), Error);
}

TEST_CASE("two-vertex graphs give the Bell-like and classical cases") {
  const auto e = build_mixed(EntangledGraph(2, {{0, 1}}, {}));
  const auto v = extract_graph(e);
  CHECK(v.graph == EntangledGraph(2, {{0, 1}}, {}));
  CHECK(v.verdicts[0].concurrence == doctest::Approx(1.0).epsilon(1e-14));
  const auto c = build_mixed(EntangledGraph(2, {}, {{0, 1}}));
  CHECK(extract_graph(c).graph == EntangledGraph(2, {}, {{0, 1}}));
}

TEST_CASE("weights of the constructed state") {
  const EntangledGraph g(4, {{0, 1}}, {{1, 2}});
  const auto s = build_mixed(g);
  const double Z = 2.0 * 9.0;
  const auto p = profile(g);
  CHECK(s.vacuum_weight() == doctest::Approx((16 - 12 + p.total / 2.0 + 2) / Z));
  for (int i = 0; i < 4; ++i) CHECK(s.single_block()(i, i) == doctest::Approx((3 - p.m[i] / 2.0) / Z));
  CHECK(s.single_block()(0, 1) == doctest::Approx(1.0 / Z));
  CHECK(s.single_block()(1, 2) == 0.0);
  CHECK(s.double_weight(0, 3) == doctest::Approx(0.5 / Z));
  CHECK(s.double_weight(0, 1) == 0.0);
  CHECK(s.doubles().size() == 4);
  CHECK(std::abs(s.trace() - 1.0) < 1e-15);
  CHECK(check_excitation_state(s).ok);
}

TEST_CASE("property: constructed states are valid densities") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 6;
    const auto s = build_mixed(testing::random_graph(n, rng));
    CHECK(check_excitation_state(s).ok);
    const auto dense = expand_dense(s);
    CHECK(check_density(dense.matrix()).ok);
  }
}

TEST_CASE("excitation-state validation") {
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2, 2);
  block(0, 0) = 0.5;
  block(1, 1) = 0.5;
  CHECK(check_excitation_state(ExcitationBlockState(2, 0.0, block, {})).ok);
  block(0, 1) = 0.7;
  block(1, 0) = 0.7;
  CHECK_FALSE(check_excitation_state(ExcitationBlockState(2, 0.0, block, {})).ok);
  CHECK_THROWS_AS(ExcitationBlockState(2, 0.0, Eigen::MatrixXd::Zero(3, 3), {}), Error);
}

TEST_CASE("dense expansion respects its cap") {
  std::mt19937_64 rng(32);
  const auto s = build_mixed(testing::random_graph(13, rng));
  CHECK_THROWS_AS(expand_dense(s), Error);
}

TEST_CASE("web states") {
  const EntangledGraph web(3, {{0, 1}}, {{0, 2}, {1, 2}});
  const auto p = default_web_parameters(web);
  CHECK(p.alpha == doctest::Approx(1.0 / std::sqrt(3.0)));
  const auto psi = build_web(web, p);
  CHECK(extract_graph(psi).graph == web);

  const EntangledGraph ghz_web(3, {}, {{0, 1}, {0, 2}, {1, 2}});
  const auto q = default_web_parameters(ghz_web);
  CHECK(q.gamma == 0.0);
  CHECK(extract_graph(build_web(ghz_web, q)).graph == ghz_web);

  CHECK_THROWS_AS(build_web(EntangledGraph(3, {{0, 1}}, {}), p), Error);
  CHECK_THROWS_AS(build_web(web, WebParameters{1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(build_web(ghz_web, p), Error);
}

TEST_CASE("web parameter grid") {
  const EntangledGraph web(4, {{0, 1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto grid = web_parameter_grid(web);
  CHECK(grid.size() == 171);
  for (const auto& p : grid) {
    CHECK(p.alpha * p.alpha + p.beta * p.beta + p.gamma * p.gamma == doctest::Approx(1.0));
    CHECK(p.gamma > 0.0);
  }
  const EntangledGraph ghz_web(4, {}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  for (const auto& p : web_parameter_grid(ghz_web)) CHECK(p.gamma == 0.0);
  // the complement pair of a lone entangled edge is forced entangled at n = 4
  CHECK_FALSE(realize_web(web).has_value());
}

TEST_CASE("three-qubit catalog") {
  for (char c : kCatalogLetters) CHECK(std::abs(three_qubit_catalog(c).amplitudes().norm() - 1.0) < 1e-14);
  for (char c : {'c', 'd', 'e', 'f', 'z'}) CHECK_THROWS_AS(three_qubit_catalog(c), Error);
}
