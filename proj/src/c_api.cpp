#include "egraph/egraph.h"

#include <cstring>
#include <string>

#include "egraph/analyzer.hpp"
#include "egraph/error.hpp"
#include "egraph/feasibility.hpp"
#include "egraph/graph.hpp"
#include "egraph/search.hpp"
#include "egraph/serialize.hpp"
#include "egraph/synthesis.hpp"

struct eg_graph {
  egraph::EntangledGraph value;
};

struct eg_state {
  egraph::AnyState value;
};

namespace {

thread_local std::string g_last_error;

eg_status to_status(egraph::ErrorCode code) {
  switch (code) {
    case egraph::ErrorCode::kInvalidArgument:
      return EG_ERR_INVALID_ARGUMENT;
    case egraph::ErrorCode::kInvalidGraph:
      return EG_ERR_INVALID_GRAPH;
    case egraph::ErrorCode::kInvalidState:
      return EG_ERR_INVALID_STATE;
    case egraph::ErrorCode::kCapExceeded:
      return EG_ERR_CAP_EXCEEDED;
    case egraph::ErrorCode::kParse:
      return EG_ERR_PARSE;
  }
  return EG_ERR_INTERNAL;
}

template <typename F>
eg_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return EG_OK;
  } catch (const egraph::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return EG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return EG_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw egraph::Error(egraph::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

egraph::Tolerances tolerances(const eg_tolerances* tol) {
  egraph::Tolerances t;
  if (tol != nullptr) {
    t.entanglement = tol->entanglement;
    t.factorization = tol->factorization;
  }
  if (!(t.entanglement > 0.0) || !(t.factorization > 0.0))
    throw egraph::Error(egraph::ErrorCode::kInvalidArgument, "tolerances must be positive");
  return t;
}

eg_state* wrap(egraph::AnyState s) { return new eg_state{std::move(s)}; }

}  // namespace

extern "C" {

const char* eg_version(void) { return "1.0.0"; }

const char* eg_last_error(void) { return g_last_error.c_str(); }

void eg_string_free(char* s) { delete[] s; }

eg_tolerances eg_default_tolerances(void) {
  const egraph::Tolerances t;
  return {t.entanglement, t.factorization};
}

eg_assess_options eg_default_assess_options(void) {
  eg_assess_options o{};
  o.search = 0;
  o.seed = 1;
  o.jobs = 1;
  o.tol = eg_default_tolerances();
  o.search_config_json = nullptr;
  return o;
}

eg_status eg_graph_from_json(const char* json, eg_graph** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = nullptr;
    auto g = egraph::graph_from_json(egraph::parse_json(json));
    *out = new eg_graph{std::move(g)};
  });
}

eg_status eg_graph_to_json(const eg_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_string(egraph::graph_to_json(g->value).dump());
  });
}

eg_status eg_graph_to_dot(const eg_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    egraph::require_valid(g->value);
    *out = dup_string(egraph::to_dot(g->value));
  });
}

eg_status eg_graph_validate(const eg_graph* g, char** report_json) {
  return guarded([&] {
    require(g, "graph");
    require(report_json, "report_json");
    const auto report = egraph::validate(g->value);
    egraph::Json j;
    j["valid"] = report.ok();
    j["violations"] = report.violations;
    *report_json = dup_string(j.dump());
  });
}

eg_status eg_graph_canonical_label(const eg_graph* g, char** label) {
  return guarded([&] {
    require(g, "graph");
    require(label, "label");
    *label = dup_string(egraph::canonical_form(g->value).str());
  });
}

int eg_graph_vertex_count(const eg_graph* g) { return g == nullptr ? -1 : g->value.size(); }

void eg_graph_free(eg_graph* g) { delete g; }

eg_status eg_state_from_json(const char* json, eg_state** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = nullptr;
    *out = wrap(egraph::state_from_json(egraph::parse_json(json)));
  });
}

eg_status eg_state_to_json(const eg_state* s, char** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = dup_string(egraph::state_to_json(s->value).dump());
  });
}

eg_state_kind eg_state_get_kind(const eg_state* s) {
  if (s == nullptr) return EG_STATE_PURE;
  return static_cast<eg_state_kind>(s->value.index());
}

int eg_state_qubit_count(const eg_state* s) {
  if (s == nullptr) return -1;
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, egraph::ExcitationBlockState>)
          return v.size();
        else
          return v.qubit_count();
      },
      s->value);
}

eg_status eg_state_check(const eg_state* s, char** summary_json) {
  return guarded([&] {
    require(s, "state");
    require(summary_json, "summary_json");
    egraph::Json j;
    if (const auto* psi = std::get_if<egraph::PureState>(&s->value)) {
      const double err = std::abs(psi->amplitudes().squaredNorm() - 1.0);
      j["kind"] = "pure";
      j["norm_error"] = err;
      j["ok"] = err <= egraph::ValidityTolerances{}.norm;
    } else if (const auto* rho = std::get_if<egraph::DensityOperator>(&s->value)) {
      const auto c = egraph::check_density(rho->matrix());
      j["kind"] = "dense";
      j["trace_error"] = c.trace_error;
      j["hermitian_error"] = c.hermitian_error;
      j["min_eigenvalue"] = c.min_eigenvalue;
      j["ok"] = c.ok;
    } else {
      const auto& x = std::get<egraph::ExcitationBlockState>(s->value);
      const auto c = egraph::check_excitation_state(x);
      j["kind"] = "excitation";
      j["trace_error"] = c.trace_error;
      j["symmetry_error"] = c.symmetry_error;
      j["min_eigenvalue"] = c.single_block_min_eigenvalue;
      j["nonnegative_weights"] = c.nonnegative_weights;
      j["ok"] = c.ok;
    }
    *summary_json = dup_string(j.dump());
  });
}

void eg_state_free(eg_state* s) { delete s; }

eg_status eg_build_mixed(const eg_graph* g, eg_state** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = nullptr;
    *out = wrap(egraph::build_mixed(g->value));
  });
}

eg_status eg_expand_dense(const eg_state* s, eg_state** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = nullptr;
    const auto* x = std::get_if<egraph::ExcitationBlockState>(&s->value);
    if (x == nullptr)
      throw egraph::Error(egraph::ErrorCode::kInvalidArgument, "dense expansion needs an excitation-block state");
    *out = wrap(egraph::expand_dense(*x));
  });
}

eg_status eg_catalog_state(char label, eg_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = wrap(egraph::three_qubit_catalog(label));
  });
}

eg_status eg_realize_web(const eg_graph* g, const eg_tolerances* tol, eg_state** out, char** parameters_json) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = nullptr;
    auto web = egraph::realize_web(g->value, tolerances(tol));
    if (parameters_json != nullptr)
      *parameters_json = dup_string(web ? egraph::web_parameters_to_json(web->parameters).dump() : "null");
    if (web) *out = wrap(std::move(web->state));
  });
}

eg_status eg_classify(const eg_state* s, const eg_tolerances* tol, eg_graph** graph_out, char** report_json) {
  return guarded([&] {
    require(s, "state");
    const auto t = tolerances(tol);
    auto extraction = std::visit([&](const auto& v) { return egraph::extract_graph(v, t); }, s->value);
    if (report_json != nullptr) *report_json = dup_string(egraph::report_to_json(extraction.verdicts).dump());
    if (graph_out != nullptr) *graph_out = new eg_graph{std::move(extraction.graph)};
  });
}

eg_status eg_assess(const eg_graph* g, const eg_assess_options* opts, eg_feasibility* status_out, char** verdict_json,
                    eg_state** witness_out) {
  return guarded([&] {
    require(g, "graph");
    const eg_assess_options o = opts != nullptr ? *opts : eg_default_assess_options();
    egraph::AssessOptions a;
    a.search = o.search != 0;
    a.seed = o.seed;
    a.jobs = o.jobs;
    a.tol = tolerances(&o.tol);
    if (o.search_config_json != nullptr) {
      const auto n = g->value.size();
      egraph::SearchConfig base = egraph::default_search_config(n);
      base.seed = o.seed;
      base.jobs = o.jobs;
      base.accept_tol = a.tol;
      a.search_config = egraph::search_config_from_json(egraph::parse_json(o.search_config_json), base);
    }
    const auto verdict = egraph::assess(g->value, a);
    if (status_out != nullptr) *status_out = static_cast<eg_feasibility>(verdict.status);
    if (verdict_json != nullptr) *verdict_json = dup_string(egraph::verdict_to_json(verdict).dump());
    if (witness_out != nullptr) *witness_out = verdict.witness ? wrap(*verdict.witness) : nullptr;
  });
}

eg_status eg_census(int n, const eg_tolerances* tol, char** csv, char** summary_json, char** witnesses_json) {
  return guarded([&] {
    const auto c = egraph::census(n, tolerances(tol));
    if (csv != nullptr) *csv = dup_string(egraph::census_to_csv(c));
    if (summary_json != nullptr) *summary_json = dup_string(egraph::census_summary_to_json(c).dump());
    if (witnesses_json != nullptr) {
      egraph::Json arr = egraph::Json::array();
      for (const auto& row : c.rows)
        arr.push_back(row.verdict.witness ? egraph::state_to_json(*row.verdict.witness) : egraph::Json(nullptr));
      *witnesses_json = dup_string(arr.dump());
    }
  });
}

eg_status eg_search(const eg_graph* g, const char* config_json, int* found_out, char** result_json,
                    eg_state** witness_out) {
  return guarded([&] {
    require(g, "graph");
    egraph::SearchConfig cfg = egraph::default_search_config(g->value.size());
    if (config_json != nullptr) cfg = egraph::search_config_from_json(egraph::parse_json(config_json), cfg);
    const auto r = egraph::search(g->value, cfg);
    if (found_out != nullptr) *found_out = r.found ? 1 : 0;
    if (result_json != nullptr) *result_json = dup_string(egraph::search_result_to_json(r).dump());
    if (witness_out != nullptr) *witness_out = r.witness ? wrap(*r.witness) : nullptr;
  });
}

}  // extern "C"
