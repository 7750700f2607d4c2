#include <cmath>
#include <random>

#include "doctest.h"
#include "egraph/error.hpp"
#include "egraph/search.hpp"
#include "support.hpp"

using namespace egraph;

namespace {

const EntangledGraph kTriangleE(3, {{0, 1}, {0, 2}, {1, 2}}, {});
const EntangledGraph kTriangleC(3, {}, {{0, 1}, {0, 2}, {1, 2}});

PureState w3() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return PureState::on(3, v);
}

PureState ghz3() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return PureState::on(3, v);
}

}  // namespace

TEST_CASE("objective examples") {
  const auto cfg = default_search_config(3);
  CHECK(objective(w3(), kTriangleE, cfg) == 0.0);
  CHECK(objective(ghz3(), kTriangleC, cfg) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(objective(PureState::basis(3, 0), kTriangleE, cfg) == doctest::Approx(3 * cfg.target_concurrence_floor));
}

TEST_CASE("objective renormalizes small drift and rejects large") {
  const auto cfg = default_search_config(3);
  const PureState drift = PureState::on(3, w3().amplitudes() * (1.0 + 1e-8));
  CHECK(objective(drift, kTriangleE, cfg) == doctest::Approx(0.0));
  const PureState off = PureState::on(3, w3().amplitudes() * 1.1);
  CHECK_THROWS_AS(objective(off, kTriangleE, cfg), Error);
  CHECK_THROWS_AS(objective(PureState::basis(2, 0), kTriangleE, cfg), Error);
}

TEST_CASE("property: objective is invariant under global phase") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  const auto cfg = default_search_config(4);
  for (int t = 0; t < 50; ++t) {
    const auto g = testing::random_graph(4, rng);
    const Vector psi = testing::random_pure(4, rng);
    const double a = objective(PureState::on(4, psi), g, cfg);
    const double b = objective(PureState::on(4, psi * std::polar(1.0, phase(rng))), g, cfg);
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("search finds verified witnesses") {
  for (const auto& g : {kTriangleE, kTriangleC, EntangledGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {})}) {
    const auto r = search(g, default_search_config(g.size()));
    REQUIRE(r.found);
    REQUIRE(r.witness);
    CHECK(std::abs(r.witness->amplitudes().norm() - 1.0) < 1e-12);
    CHECK(extract_graph(*r.witness).graph == g);
    CHECK(r.best_objective < 1e-12);
  }
}

TEST_CASE("search fails on an open-edge graph") {
  auto cfg = default_search_config(3);
  cfg.restarts = 4;
  const auto r = search(EntangledGraph(3, {{0, 1}, {1, 2}}, {}), cfg);
  CHECK_FALSE(r.found);
  CHECK_FALSE(r.witness);
  CHECK(r.best_objective > 1e-6);
  CHECK(r.per_restart_trace.size() == 4);
}

TEST_CASE("search is deterministic and independent of thread count") {
  const EntangledGraph g(4, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}});
  auto cfg = default_search_config(4);
  cfg.restarts = 6;
  cfg.max_evals_per_restart = 3000;
  const auto a = search(g, cfg);
  cfg.jobs = 3;
  const auto b = search(g, cfg);
  CHECK(a.found == b.found);
  CHECK(a.best_objective == b.best_objective);
  CHECK(a.evals == b.evals);
  CHECK(a.best_restart == b.best_restart);
  REQUIRE(a.per_restart_trace.size() == b.per_restart_trace.size());
  for (std::size_t k = 0; k < a.per_restart_trace.size(); ++k)
    CHECK(a.per_restart_trace[k].best == b.per_restart_trace[k].best);
  if (a.witness && b.witness) CHECK(a.witness->amplitudes() == b.witness->amplitudes());
  cfg.seed = 99;
  const auto c = search(g, cfg);
  CHECK(c.per_restart_trace.front().best != a.per_restart_trace.front().best);
}

TEST_CASE("finite-difference descent is available") {
  auto cfg = default_search_config(3);
  cfg.method = SearchMethod::kFiniteDifferenceDescent;
  const auto r = search(kTriangleE, cfg);
  if (r.found) CHECK(extract_graph(*r.witness).graph == kTriangleE);
  CHECK(parse_search_method("finite-difference-descent") == SearchMethod::kFiniteDifferenceDescent);
  CHECK(to_string(SearchMethod::kNelderMead) == "nelder-mead");
  CHECK_THROWS_AS(parse_search_method("simplex"), Error);
}

TEST_CASE("configuration and input checks") {
  auto cfg = default_search_config(3);
  cfg.restarts = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = default_search_config(3);
  cfg.correlation_floor = 1e-12;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = default_search_config(7);
  CHECK_THROWS_AS(search(EntangledGraph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {0, 6}}, {}), cfg),
                  Error);
  CHECK_THROWS_AS(search(EntangledGraph(3, {{0, 1}}, {}), default_search_config(3)), Error);
  CHECK(default_search_config(4).restarts == 64);
  CHECK(default_search_config(4).max_evals_per_restart == 20000);
}
