#include <random>

#include "doctest.h"
#include "egraph/error.hpp"
#include "egraph/feasibility.hpp"
#include "egraph/synthesis.hpp"
#include "support.hpp"

using namespace egraph;

namespace {

bool witness_realizes(const Verdict& v, const EntangledGraph& g) {
  return v.witness && extract_graph(*v.witness).graph == g;
}

}  // namespace

TEST_CASE("structural rules") {
  const auto one = assess(EntangledGraph(1, {}, {}));
  CHECK(one.status == FeasibilityStatus::kFeasibleConstructive);
  CHECK(one.rule == Rule::kSingleVertex);

  const EntangledGraph bell(2, {{0, 1}}, {});
  const auto b = assess(bell);
  CHECK(b.rule == Rule::kEntangledPair);
  CHECK(witness_realizes(b, bell));

  const auto cc = assess(EntangledGraph(2, {}, {{0, 1}}));
  CHECK(cc.status == FeasibilityStatus::kInfeasible);
  CHECK(cc.rule == Rule::kCorrelatedPair);
  CHECK_FALSE(cc.witness);

  const auto path = assess(EntangledGraph(3, {{0, 1}, {1, 2}}, {}));
  CHECK(path.status == FeasibilityStatus::kInfeasible);
  CHECK(path.rule == Rule::kOpenEdge);

  const EntangledGraph ghz(3, {}, {{0, 1}, {0, 2}, {1, 2}});
  const auto w = assess(ghz);
  CHECK(w.rule == Rule::kCompleteWeb);
  CHECK(witness_realizes(w, ghz));

  const EntangledGraph h(3, {{0, 1}, {1, 2}}, {{0, 2}});
  const auto cat = assess(h);
  CHECK(cat.status == FeasibilityStatus::kFeasibleCatalog);
  CHECK(cat.rule == Rule::kThreeQubitCatalog);
  CHECK(witness_realizes(cat, h));

  const EntangledGraph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {});
  const auto sq = assess(square);
  CHECK(sq.status == FeasibilityStatus::kFeasibleNumericalClaim);
  CHECK(sq.rule == Rule::kFourVertexClaim);
  CHECK_FALSE(sq.witness);

  EntangledGraph ring5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, {});
  const auto r5 = assess(ring5);
  CHECK(r5.status == FeasibilityStatus::kUnknown);
  CHECK(r5.rule == Rule::kUndecided);
}

TEST_CASE("catalog rule applies to every labeling") {
  const EntangledGraph h(3, {{0, 2}, {1, 2}}, {{0, 1}});
  const auto v = assess(h);
  CHECK(v.status == FeasibilityStatus::kFeasibleCatalog);
  CHECK(witness_realizes(v, h));
}

TEST_CASE("search upgrades a four-vertex claim with a verified witness") {
  const EntangledGraph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {});
  AssessOptions opts;
  opts.search = true;
  const auto v = assess(square, opts);
  CHECK(v.status == FeasibilityStatus::kFeasibleNumericalClaim);
  CHECK(witness_realizes(v, square));
  REQUIRE(v.components.size() == 1);
  REQUIRE(v.components[0].search);
  CHECK(v.components[0].search->found);
}

TEST_CASE("decomposition: status is the minimum over components and witnesses compose") {
  const EntangledGraph g(5, {{0, 3}}, {{1, 2}, {2, 4}, {1, 4}});
  const auto v = assess(g);
  REQUIRE(v.components.size() == 2);
  CHECK(v.components[0].vertices == std::vector<Vertex>{0, 3});
  CHECK(v.status == FeasibilityStatus::kFeasibleConstructive);
  CHECK(witness_realizes(v, g));

  const EntangledGraph bad(5, {{0, 3}}, {{1, 2}});
  const auto w = assess(bad);
  CHECK(w.status == FeasibilityStatus::kInfeasible);
  CHECK_FALSE(w.witness);
}

TEST_CASE("property: decomposition consistency and rule scope") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 5;
    const auto g = testing::random_graph(n, rng);
    const auto v = assess(g);
    auto expected = FeasibilityStatus::kFeasibleConstructive;
    for (const auto& c : v.components) {
      const auto sub = induced_subgraph(g, c.vertices);
      const auto alone = assess_component(sub);
      CHECK(alone.status == c.status);
      CHECK(alone.rule == c.rule);
      expected = std::min(expected, alone.status);
      if (c.vertices.size() == 2) CHECK(c.rule != Rule::kOpenEdge);
      if (c.vertices.size() >= 3) CHECK(c.rule != Rule::kCorrelatedPair);
    }
    CHECK(v.status == expected);
    if (v.witness) CHECK(extract_graph(*v.witness).graph == g);
  }
}

TEST_CASE("compose places states on their vertex subsets") {
  const auto psi = compose_components(3, {{{1}, PureState::basis(1, 1)}, {{0, 2}, PureState::basis(2, 0)}});
  CHECK(std::abs(psi.amplitudes()(0b010) - 1.0) < 1e-15);
}

TEST_CASE("census") {
  const auto c2 = census(2);
  CHECK(c2.rows.size() == 3);
  CHECK(c2.raw_graphs == 3);
  const auto c3 = census(3);
  CHECK(c3.rows.size() == 10);
  int feasible = 0;
  for (const auto& r : c3.rows) feasible += is_feasible(r.verdict.status) ? 1 : 0;
  CHECK(feasible == 6);
  long total = 0;
  for (const auto& r : census(4).rows) total += r.class_size;
  CHECK(total == 729);
  CHECK_THROWS_AS(census(6), Error);
}
