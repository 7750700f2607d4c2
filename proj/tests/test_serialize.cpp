#include <random>

#include "doctest.h"
#include "egraph/error.hpp"
#include "egraph/serialize.hpp"
#include "support.hpp"

using namespace egraph;

TEST_CASE("graph round trip") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 50; ++t) {
    const auto g = testing::random_graph(2 + t % 6, rng);
    CHECK(graph_from_json(parse_json(graph_to_json(g).dump())) == g);
  }
  const auto j = graph_to_json(EntangledGraph(3, {{0, 1}}, {{1, 2}}));
  CHECK(j.dump() == R"({"n":3,"entangled":[[0,1]],"classical":[[1,2]]})");
}

TEST_CASE("malformed graphs") {
  CHECK_THROWS_AS(parse_json("{not json"), Error);
  for (const char* text : {R"({"entangled":[],"classical":[]})", R"({"n":3,"entangled":[[0]],"classical":[]})",
                           R"({"n":"3","entangled":[],"classical":[]})", R"([1,2])"}) {
    try {
      graph_from_json(parse_json(text));
      FAIL("accepted " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
    }
  }
}

TEST_CASE("state round trips") {
  std::mt19937_64 rng(62);
  const PureState psi = PureState::on(3, testing::random_pure(3, rng));
  const auto back = std::get<PureState>(state_from_json(parse_json(state_to_json(psi).dump())));
  CHECK((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() == 0.0);

  const DensityOperator rho(default_labels(2), testing::random_density(2, 2, rng));
  const auto rho2 = std::get<DensityOperator>(state_from_json(parse_json(state_to_json(rho).dump())));
  CHECK((rho2.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);

  const auto s = build_mixed(testing::random_graph(5, rng));
  const auto s2 = std::get<ExcitationBlockState>(state_from_json(parse_json(state_to_json(s).dump())));
  CHECK(s2.vacuum_weight() == s.vacuum_weight());
  CHECK(s2.single_block() == s.single_block());
  CHECK(s2.doubles() == s.doubles());

  CHECK_THROWS_AS(state_from_json(parse_json(R"({"n":1})")), Error);
  CHECK_THROWS_AS(state_from_json(parse_json(R"({"n":1,"amplitudes":[[1,0]]})")), Error);
}

TEST_CASE("search config keys") {
  SearchConfig cfg;
  cfg.restarts = 3;
  cfg.method = SearchMethod::kFiniteDifferenceDescent;
  cfg.accept_tol.entanglement = 1e-8;
  const auto back = search_config_from_json(search_config_to_json(cfg));
  CHECK(back.restarts == 3);
  CHECK(back.method == SearchMethod::kFiniteDifferenceDescent);
  CHECK(back.accept_tol.entanglement == 1e-8);
  const auto partial = search_config_from_json(parse_json(R"({"seed": 9})"), cfg);
  CHECK(partial.seed == 9);
  CHECK(partial.restarts == 3);
  CHECK_THROWS_AS(search_config_from_json(parse_json(R"({"restarts": "many"})")), Error);
}

TEST_CASE("verdict and census output") {
  const auto v = assess(EntangledGraph(3, {{0, 1}}, {}));
  const auto j = verdict_to_json(v);
  CHECK(j["status"] == "feasible-constructive");
  CHECK(j["components"].size() == 2);
  const auto c = census(3);
  const auto csv = census_to_csv(c);
  CHECK(csv.rfind("class,n,status,rule,class_size,connected,open_edge,web,witness\n", 0) == 0);
  CHECK(csv.find("3:011,3,infeasible,R4,3,1,1,0,") != std::string::npos);
  CHECK(census_summary_to_json(c)["classes"] == 10);
}
