#include "egraph/serialize.hpp"

#include <sstream>

#include "egraph/error.hpp"

namespace egraph {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kParse, "malformed input: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

int read_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<int>();
}

double read_real(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex read_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) malformed("complex entries are [re, im] pairs");
  return {read_real(j[0], "real part"), read_real(j[1], "imaginary part")};
}

Json write_complex(const Complex& z) { return Json::array({z.real(), z.imag()}); }

std::vector<Edge> read_edges(const Json& j, const char* key) {
  std::vector<Edge> edges;
  const auto& arr = field(j, key);
  if (!arr.is_array()) malformed(std::string(key) + " must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2) malformed(std::string(key) + " entries are [i, j] pairs");
    edges.push_back(make_edge(read_int(e[0], "vertex"), read_int(e[1], "vertex")));
  }
  return edges;
}

Json write_edges(std::span<const Edge> edges) {
  Json arr = Json::array();
  for (const auto& e : edges) arr.push_back(Json::array({e.a, e.b}));
  return arr;
}

int read_qubits(const Json& j) {
  const int n = read_int(field(j, "n"), "n");
  if (n < 1 || n > 30) malformed("n out of range");
  return n;
}

Json witness_json(const std::optional<PureState>& w) { return w ? state_to_json(*w) : Json(nullptr); }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

Json graph_to_json(const EntangledGraph& g) {
  Json j;
  j["n"] = g.size();
  j["entangled"] = write_edges(g.entangled_edges());
  j["classical"] = write_edges(g.classical_edges());
  return j;
}

EntangledGraph graph_from_json(const Json& j) {
  const int n = read_int(field(j, "n"), "n");
  return {n, read_edges(j, "entangled"), read_edges(j, "classical")};
}

Json state_to_json(const PureState& psi) {
  Json j;
  j["n"] = psi.qubit_count();
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) amps.push_back(write_complex(psi.amplitudes()(k)));
  j["amplitudes"] = std::move(amps);
  return j;
}

Json state_to_json(const DensityOperator& rho) {
  Json j;
  j["n"] = rho.qubit_count();
  Json rows = Json::array();
  const Matrix& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(write_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json state_to_json(const ExcitationBlockState& s) {
  Json j;
  j["n"] = s.size();
  j["vacuum"] = s.vacuum_weight();
  Json block = Json::array();
  for (Eigen::Index r = 0; r < s.single_block().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < s.single_block().cols(); ++c) row.push_back(s.single_block()(r, c));
    block.push_back(std::move(row));
  }
  j["single_block"] = std::move(block);
  Json doubles = Json::array();
  for (const auto& d : s.doubles()) doubles.push_back(Json::array({d.i, d.j, d.weight}));
  j["doubles"] = std::move(doubles);
  return j;
}

Json state_to_json(const AnyState& s) {
  return std::visit([](const auto& v) { return state_to_json(v); }, s);
}

AnyState state_from_json(const Json& j) {
  const int n = read_qubits(j);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (j.contains("amplitudes")) {
    const auto& arr = field(j, "amplitudes");
    if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != dim) malformed("amplitudes must have 2^n entries");
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v(k) = read_complex(arr[static_cast<std::size_t>(k)]);
    return PureState::on(n, std::move(v));
  }
  if (j.contains("rows")) {
    const auto& rows = field(j, "rows");
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) malformed("rows must have 2^n entries");
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) malformed("each row must have 2^n entries");
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = read_complex(row[static_cast<std::size_t>(c)]);
    }
    return DensityOperator(default_labels(n), std::move(m));
  }
  if (j.contains("single_block")) {
    const auto& block = field(j, "single_block");
    if (!block.is_array() || static_cast<int>(block.size()) != n) malformed("single_block must be n x n");
    Eigen::MatrixXd s(n, n);
    for (int r = 0; r < n; ++r) {
      const auto& row = block[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != n) malformed("single_block must be n x n");
      for (int c = 0; c < n; ++c) s(r, c) = read_real(row[static_cast<std::size_t>(c)], "single_block entry");
    }
    std::vector<DoubleExcitation> doubles;
    const auto& arr = field(j, "doubles");
    if (!arr.is_array()) malformed("doubles must be an array");
    for (const auto& d : arr) {
      if (!d.is_array() || d.size() != 3) malformed("doubles entries are [i, j, weight]");
      doubles.push_back({read_int(d[0], "vertex"), read_int(d[1], "vertex"), read_real(d[2], "weight")});
    }
    try {
      return ExcitationBlockState(n, read_real(field(j, "vacuum"), "vacuum"), std::move(s), std::move(doubles));
    } catch (const Error& e) {
      malformed(e.what());
    }
  }
  malformed("state needs one of 'amplitudes', 'rows' or 'single_block'");
}

Json report_to_json(const std::vector<PairVerdict>& verdicts) {
  Json arr = Json::array();
  for (const auto& v : verdicts) {
    Json j;
    j["i"] = v.i;
    j["j"] = v.j;
    j["class"] = to_string(v.cls);
    j["concurrence"] = v.concurrence;
    j["negativity"] = v.negativity;
    j["fac_distance"] = v.factorization_distance;
    j["marginal"] = v.marginal;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json web_parameters_to_json(const WebParameters& p) {
  Json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  return j;
}

Json search_config_to_json(const SearchConfig& cfg) {
  Json j;
  j["restarts"] = cfg.restarts;
  j["max_evals_per_restart"] = cfg.max_evals_per_restart;
  j["seed"] = cfg.seed;
  j["target_concurrence_floor"] = cfg.target_concurrence_floor;
  j["correlation_floor"] = cfg.correlation_floor;
  j["tol_ent"] = cfg.accept_tol.entanglement;
  j["tol_fac"] = cfg.accept_tol.factorization;
  j["method"] = to_string(cfg.method);
  j["jobs"] = cfg.jobs;
  j["max_qubits"] = cfg.max_qubits;
  return j;
}

SearchConfig search_config_from_json(const Json& j, SearchConfig base) {
  if (!j.is_object()) malformed("search config must be an object");
  auto get_int = [&](const char* key, int& out) {
    if (j.contains(key)) out = read_int(j.at(key), key);
  };
  auto get_real = [&](const char* key, double& out) {
    if (j.contains(key)) out = read_real(j.at(key), key);
  };
  get_int("restarts", base.restarts);
  get_int("max_evals_per_restart", base.max_evals_per_restart);
  get_int("jobs", base.jobs);
  get_int("max_qubits", base.max_qubits);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) malformed("seed must be a non-negative integer");
    base.seed = j.at("seed").get<std::uint64_t>();
  }
  get_real("target_concurrence_floor", base.target_concurrence_floor);
  get_real("correlation_floor", base.correlation_floor);
  get_real("tol_ent", base.accept_tol.entanglement);
  get_real("tol_fac", base.accept_tol.factorization);
  if (j.contains("method")) {
    if (!j.at("method").is_string()) malformed("method must be a string");
    try {
      base.method = parse_search_method(j.at("method").get<std::string>());
    } catch (const Error& e) {
      malformed(e.what());
    }
  }
  return base;
}

Json search_result_to_json(const SearchResult& r, bool include_witness) {
  Json j;
  j["found"] = r.found;
  j["best_objective"] = r.best_objective;
  j["evals"] = r.evals;
  j["best_restart"] = r.best_restart;
  Json trace = Json::array();
  for (const auto& t : r.per_restart_trace) {
    Json e;
    e["restart"] = t.restart;
    e["best"] = t.best;
    e["evals"] = t.evals;
    e["verified"] = t.verified;
    trace.push_back(std::move(e));
  }
  j["per_restart_trace"] = std::move(trace);
  if (include_witness) j["witness"] = witness_json(r.witness);
  return j;
}

Json verdict_to_json(const Verdict& v, bool include_witnesses) {
  Json j;
  j["status"] = to_string(v.status);
  j["rule"] = rule_id(v.rule);
  j["reason"] = v.reason;
  Json comps = Json::array();
  for (const auto& c : v.components) {
    Json cj;
    cj["vertices"] = c.vertices;
    cj["status"] = to_string(c.status);
    cj["rule"] = rule_id(c.rule);
    cj["reason"] = c.reason;
    if (c.catalog_letter) cj["catalog"] = std::string(1, *c.catalog_letter);
    if (c.web_parameters) cj["web_parameters"] = web_parameters_to_json(*c.web_parameters);
    if (c.search) cj["search"] = search_result_to_json(*c.search, false);
    if (include_witnesses) cj["witness"] = witness_json(c.witness);
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  if (include_witnesses) j["witness"] = witness_json(v.witness);
  return j;
}

std::string census_to_csv(const Census& c, const std::vector<std::string>& witness_paths) {
  std::ostringstream os;
  os << "class,n,status,rule,class_size,connected,open_edge,web,witness\n";
  for (std::size_t k = 0; k < c.rows.size(); ++k) {
    const auto& r = c.rows[k];
    os << r.label.str() << ',' << c.n << ',' << to_string(r.verdict.status) << ',' << rule_id(r.verdict.rule) << ','
       << r.class_size << ',' << (r.connected ? 1 : 0) << ',' << (r.has_open_edge ? 1 : 0) << ','
       << (r.complete_web ? 1 : 0) << ',' << (k < witness_paths.size() ? witness_paths[k] : std::string()) << '\n';
  }
  return os.str();
}

Json census_summary_to_json(const Census& c) {
  Json j;
  j["n"] = c.n;
  j["raw_graphs"] = c.raw_graphs;
  j["classes"] = c.rows.size();
  Json counts;
  for (auto s : {FeasibilityStatus::kFeasibleConstructive, FeasibilityStatus::kFeasibleCatalog,
                 FeasibilityStatus::kFeasibleNumericalClaim, FeasibilityStatus::kUnknown,
                 FeasibilityStatus::kInfeasible}) {
    const auto it = c.status_counts.find(s);
    counts[to_string(s)] = it == c.status_counts.end() ? 0 : it->second;
  }
  j["status_counts"] = std::move(counts);
  Json amb;
  amb["connected_no_open_edge_non_web"] = c.ambiguous.structural_non_web;
  amb["connected_no_open_edge_non_web_labeled"] = c.ambiguous.structural_non_web_labeled;
  amb["connected_no_open_edge"] = c.ambiguous.structural_with_webs;
  amb["reaching_R7_R8"] = c.ambiguous.rule_outcome;
  j["ambiguous"] = std::move(amb);
  return j;
}

}  // namespace egraph
