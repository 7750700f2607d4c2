#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "egraph/analyzer.hpp"
#include "egraph/feasibility.hpp"
#include "egraph/graph.hpp"
#include "egraph/linalg.hpp"
#include "egraph/search.hpp"
#include "egraph/synthesis.hpp"

namespace egraph {

// All writers use insertion-ordered objects so field order is fixed:
//   graph       {"n", "entangled", "classical"}
//   pure state  {"n", "amplitudes": [[re, im], ...]}
//   density     {"n", "rows": [[[re, im], ...], ...]}
//   excitation  {"n", "vacuum", "single_block", "doubles": [[i, j, w], ...]}
using Json = nlohmann::ordered_json;

using AnyState = std::variant<PureState, DensityOperator, ExcitationBlockState>;

Json graph_to_json(const EntangledGraph& g);
EntangledGraph graph_from_json(const Json& j);

Json state_to_json(const PureState& psi);
Json state_to_json(const DensityOperator& rho);
Json state_to_json(const ExcitationBlockState& s);
Json state_to_json(const AnyState& s);
/// Detects the state kind by its payload key.
AnyState state_from_json(const Json& j);

Json report_to_json(const std::vector<PairVerdict>& verdicts);
Json web_parameters_to_json(const WebParameters& p);

Json search_config_to_json(const SearchConfig& cfg);
/// Missing keys keep the values of `base`.
SearchConfig search_config_from_json(const Json& j, SearchConfig base = {});
Json search_result_to_json(const SearchResult& r, bool include_witness = true);

Json verdict_to_json(const Verdict& v, bool include_witnesses = true);

/// One row per class: class,n,status,rule,class_size,connected,open_edge,web,witness.
std::string census_to_csv(const Census& c, const std::vector<std::string>& witness_paths = {});
Json census_summary_to_json(const Census& c);

/// Parses JSON text, mapping syntax errors to Error(kParse).
Json parse_json(const std::string& text);

}  // namespace egraph
