// Command-line front end. Talks to the toolkit exclusively through the C API.
//
// Exit codes: 0 success, 1 verified negative (infeasible / search exhausted),
// 2 usage or malformed input, 3 numerical-validity failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "egraph/egraph.h"
#include "json.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct GraphDeleter {
  void operator()(eg_graph* g) const { eg_graph_free(g); }
};
struct StateDeleter {
  void operator()(eg_state* s) const { eg_state_free(s); }
};
using GraphPtr = std::unique_ptr<eg_graph, GraphDeleter>;
using StatePtr = std::unique_ptr<eg_state, StateDeleter>;

// Takes ownership of a library-allocated string.
std::string take(char* s) {
  if (s == nullptr) return {};
  std::string out(s);
  eg_string_free(s);
  return out;
}

class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void check(eg_status st, const std::string& context) {
  if (st == EG_OK) return;
  const int code = (st == EG_ERR_INVALID_STATE || st == EG_ERR_INTERNAL) ? kExitNumerical : kExitUsage;
  throw CommandError(code, context + ": " + eg_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kExitUsage, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError(kExitUsage, "cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string pretty(const std::string& compact) { return ordered_json::parse(compact).dump(2); }

GraphPtr load_graph(const std::string& path) {
  eg_graph* g = nullptr;
  check(eg_graph_from_json(read_file(path).c_str(), &g), "reading graph " + path);
  GraphPtr graph(g);
  const auto report = ordered_json::parse(take([&] {
    char* r = nullptr;
    check(eg_graph_validate(graph.get(), &r), "validating graph");
    return r;
  }()));
  if (!report["valid"].get<bool>()) {
    std::string msg = "invalid graph " + path + ":";
    for (const auto& v : report["violations"]) msg += " " + v.get<std::string>() + ";";
    throw CommandError(kExitUsage, msg);
  }
  return graph;
}

StatePtr load_state(const std::string& path) {
  eg_state* s = nullptr;
  check(eg_state_from_json(read_file(path).c_str(), &s), "reading state " + path);
  return StatePtr(s);
}

std::string graph_json(const eg_graph* g) {
  char* out = nullptr;
  check(eg_graph_to_json(g, &out), "serializing graph");
  return take(out);
}

std::string state_json(const eg_state* s) {
  char* out = nullptr;
  check(eg_state_to_json(s, &out), "serializing state");
  return take(out);
}

struct CommonOptions {
  double tol_ent = 1e-9;
  double tol_fac = 1e-9;
  std::uint64_t seed = 1;
  int jobs = 1;
};

eg_tolerances tolerances(const CommonOptions& o) { return {o.tol_ent, o.tol_fac}; }

int cmd_build_mixed(const std::string& graph_path, const std::string& out, const std::string& dense_out,
                    const CommonOptions& common) {
  const GraphPtr graph = load_graph(graph_path);
  if (eg_graph_vertex_count(graph.get()) < 2)
    throw CommandError(kExitUsage,
                       "the mixed-state construction needs at least 2 vertices; use `egraph feasibility` for "
                       "single-vertex graphs");
  eg_state* raw = nullptr;
  check(eg_build_mixed(graph.get(), &raw), "building mixed state");
  const StatePtr state(raw);

  const auto summary = ordered_json::parse(take([&] {
    char* s = nullptr;
    check(eg_state_check(state.get(), &s), "checking state");
    return s;
  }()));
  std::cerr << "trace error " << summary["trace_error"].get<double>() << ", single-block min eigenvalue "
            << summary["min_eigenvalue"].get<double>() << '\n';
  if (!summary["ok"].get<bool>()) throw CommandError(kExitNumerical, "constructed state failed validation");

  const eg_tolerances tol = tolerances(common);
  eg_graph* realized_raw = nullptr;
  char* report_raw = nullptr;
  check(eg_classify(state.get(), &tol, &realized_raw, &report_raw), "classifying constructed state");
  const GraphPtr realized(realized_raw);
  const auto report = ordered_json::parse(take(report_raw));
  for (const auto& v : report)
    if (v["class"] == "entangled")
      std::cerr << "pair (" << v["i"] << "," << v["j"] << ") entangled, concurrence " << v["concurrence"].get<double>()
                << '\n';
  if (graph_json(realized.get()) != graph_json(graph.get()))
    throw CommandError(kExitNumerical, "constructed state does not realize the input graph");

  write_output(out, pretty(state_json(state.get())));
  if (!dense_out.empty()) {
    eg_state* dense = nullptr;
    check(eg_expand_dense(state.get(), &dense), "expanding to a dense operator");
    const StatePtr dense_state(dense);
    write_output(dense_out, state_json(dense_state.get()));
  }
  return kExitOk;
}

int cmd_classify(const std::string& state_path, const std::string& out, const std::string& report_path,
                 const std::string& dot_path, const CommonOptions& common) {
  const StatePtr state = load_state(state_path);
  const eg_tolerances tol = tolerances(common);
  eg_graph* g = nullptr;
  char* report = nullptr;
  check(eg_classify(state.get(), &tol, &g, &report), "classifying " + state_path);
  const GraphPtr graph(g);
  const std::string report_text = take(report);
  write_output(out, pretty(graph_json(graph.get())));
  if (!report_path.empty()) write_output(report_path, pretty(report_text));
  if (!dot_path.empty()) {
    char* dot = nullptr;
    check(eg_graph_to_dot(graph.get(), &dot), "rendering DOT");
    write_output(dot_path, take(dot));
  }
  for (const auto& v : ordered_json::parse(report_text))
    if (v["marginal"].get<bool>())
      std::cerr << "warning: pair (" << v["i"] << "," << v["j"] << ") is near a classification threshold\n";
  return kExitOk;
}

int cmd_feasibility(const std::string& graph_path, bool do_search, const std::string& config_path,
                    const std::string& out, const std::string& witness_path, const CommonOptions& common) {
  const GraphPtr graph = load_graph(graph_path);
  eg_assess_options opts = eg_default_assess_options();
  opts.search = do_search ? 1 : 0;
  opts.seed = common.seed;
  opts.jobs = common.jobs;
  opts.tol = tolerances(common);
  std::string config_text;
  if (!config_path.empty()) {
    config_text = read_file(config_path);
    opts.search_config_json = config_text.c_str();
  }
  eg_feasibility status = EG_UNKNOWN;
  char* verdict_raw = nullptr;
  eg_state* witness_raw = nullptr;
  check(eg_assess(graph.get(), &opts, &status, &verdict_raw, &witness_raw), "assessing " + graph_path);
  const StatePtr witness(witness_raw);
  const std::string verdict_text = take(verdict_raw);
  const auto verdict = ordered_json::parse(verdict_text);

  std::cout << verdict["status"].get<std::string>() << " (" << verdict["rule"].get<std::string>()
            << "): " << verdict["reason"].get<std::string>() << '\n';
  for (const auto& c : verdict["components"])
    std::cout << "  component " << c["vertices"].dump() << ": " << c["status"].get<std::string>() << " ("
              << c["rule"].get<std::string>() << ")\n";
  if (!out.empty()) write_output(out, verdict.dump(2));
  if (witness && !witness_path.empty()) write_output(witness_path, pretty(state_json(witness.get())));

  if (status == EG_INFEASIBLE || status == EG_UNKNOWN) return kExitNegative;
  if (do_search && status == EG_FEASIBLE_NUMERICAL_CLAIM && !witness) return kExitNegative;
  return kExitOk;
}

bool witnesses_wanted(const std::string& dir) { return !dir.empty(); }

int cmd_census(int n, const std::string& out, const std::string& witness_dir, const CommonOptions& common) {
  if (n < 1 || n > 5) throw CommandError(kExitUsage, "census supports 1 <= n <= 5");
  const eg_tolerances tol = tolerances(common);
  char* csv = nullptr;
  char* summary = nullptr;
  char* witnesses = nullptr;
  check(eg_census(n, &tol, &csv, &summary, witnesses_wanted(witness_dir) ? &witnesses : nullptr), "census");
  std::string table = take(csv);
  const auto sum = ordered_json::parse(take(summary));

  if (!witness_dir.empty()) {
    std::filesystem::create_directories(witness_dir);
    const auto states = ordered_json::parse(take(witnesses));
    // rewrite the witness column with archived file paths
    std::istringstream in(table);
    std::ostringstream rewritten;
    std::string line;
    std::getline(in, line);
    rewritten << line << '\n';
    for (std::size_t k = 0; std::getline(in, line); ++k) {
      std::string path;
      if (k < states.size() && !states[k].is_null()) {
        path = (std::filesystem::path(witness_dir) / ("class_" + std::to_string(k) + ".json")).string();
        write_output(path, states[k].dump(2));
      }
      rewritten << line << path << '\n';
    }
    table = rewritten.str();
  }
  write_output(out, table);

  std::cerr << "n=" << n << ": " << sum["raw_graphs"] << " labeled graphs, " << sum["classes"]
            << " isomorphism classes\n";
  for (const auto& [status, count] : sum["status_counts"].items()) std::cerr << "  " << status << ": " << count << '\n';
  const auto& amb = sum["ambiguous"];
  std::cerr << "undecided by structural rules, under each counting convention:\n"
            << "  connected, no open edge, not a complete web: " << amb["connected_no_open_edge_non_web"] << " classes ("
            << amb["connected_no_open_edge_non_web_labeled"] << " labeled graphs)\n"
            << "  connected, no open edge, webs included:     " << amb["connected_no_open_edge"] << " classes\n"
            << "  rule outcome R7/R8 (after web verification): " << amb["reaching_R7_R8"] << " classes\n";
  if (n == 4) {
    const int structural = amb["connected_no_open_edge_non_web"].get<int>();
    std::cerr << "reference count 20: " << (structural == 20 ? "matches" : "differs from")
              << " the connected/no-open-edge/non-web convention\n";
  }
  return kExitOk;
}

int cmd_search(const std::string& graph_path, const std::string& config_path, const std::string& out,
               const std::string& witness_path, const CommonOptions& common) {
  const GraphPtr graph = load_graph(graph_path);
  ordered_json cfg = config_path.empty() ? ordered_json::object() : ordered_json::parse(read_file(config_path));
  if (!cfg.contains("seed")) cfg["seed"] = common.seed;
  if (!cfg.contains("jobs")) cfg["jobs"] = common.jobs;
  if (!cfg.contains("tol_ent")) cfg["tol_ent"] = common.tol_ent;
  if (!cfg.contains("tol_fac")) cfg["tol_fac"] = common.tol_fac;
  int found = 0;
  char* result = nullptr;
  eg_state* w = nullptr;
  check(eg_search(graph.get(), cfg.dump().c_str(), &found, &result, &w), "searching");
  const StatePtr witness(w);
  const auto r = ordered_json::parse(take(result));
  std::cout << (found ? "found" : "not found") << ", best objective " << r["best_objective"].get<double>() << ", "
            << r["evals"] << " evaluations\n";
  if (!out.empty()) write_output(out, r.dump(2));
  if (witness && !witness_path.empty()) write_output(witness_path, pretty(state_json(witness.get())));
  return found ? kExitOk : kExitNegative;
}

int cmd_catalog(const std::string& letter, const std::string& out) {
  if (letter.size() != 1) throw CommandError(kExitUsage, "catalog label is a single letter a-j");
  eg_state* s = nullptr;
  check(eg_catalog_state(letter[0], &s), "catalog");
  const StatePtr state(s);
  write_output(out, pretty(state_json(state.get())));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangled graphs with classical correlations: construction, classification and pure-state search"};
  app.require_subcommand(1);
  CommonOptions common;
  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol-ent", common.tol_ent, "negativity threshold for entanglement");
    cmd->add_option("--tol-fac", common.tol_fac, "factorization-distance threshold");
  };
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "random seed");
    cmd->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  std::string graph_path, state_path, out, dense_out, report_path, dot_path, witness_path, config_path, witness_dir,
      letter;
  bool do_search = false;
  int n = 0;

  auto* build = app.add_subcommand("build-mixed", "construct the mixed state realizing a graph");
  build->add_option("graph", graph_path, "graph JSON")->required();
  build->add_option("--out", out, "excitation-block state JSON (default stdout)");
  build->add_option("--dense", dense_out, "also write the dense density operator JSON");
  add_tol(build);

  auto* classify = app.add_subcommand("classify", "classify every qubit pair of a state");
  classify->add_option("state", state_path, "state JSON (pure, dense or excitation-block)")->required();
  classify->add_option("--out", out, "graph JSON (default stdout)");
  classify->add_option("--report", report_path, "per-pair verdict report JSON");
  classify->add_option("--dot", dot_path, "graphviz DOT rendering");
  add_tol(classify);

  auto* feas = app.add_subcommand("feasibility", "decide whether a graph has a pure-state representative");
  feas->add_option("graph", graph_path, "graph JSON")->required();
  feas->add_flag("--search", do_search, "search numerically on undecided components");
  feas->add_option("--config", config_path, "search config JSON");
  feas->add_option("--out", out, "verdict JSON");
  feas->add_option("--witness", witness_path, "witness state JSON");
  add_tol(feas);
  add_run(feas);

  auto* cen = app.add_subcommand("census", "assess every isomorphism class on n vertices");
  cen->add_option("n", n, "vertex count (1..5)")->required();
  cen->add_option("--out", out, "CSV table (default stdout)");
  cen->add_option("--witness-dir", witness_dir, "directory for witness state files");
  add_tol(cen);

  auto* srch = app.add_subcommand("search", "numerical pure-state search for a connected graph");
  srch->add_option("graph", graph_path, "graph JSON")->required();
  srch->add_option("--config", config_path, "search config JSON");
  srch->add_option("--out", out, "search result JSON");
  srch->add_option("--witness", witness_path, "witness state JSON");
  add_tol(srch);
  add_run(srch);

  auto* cat = app.add_subcommand("catalog", "print a three-qubit catalog state");
  cat->add_option("label", letter, "a, b, g, h, i or j")->required();
  cat->add_option("--out", out, "state JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return cmd_build_mixed(graph_path, out, dense_out, common);
    if (*classify) return cmd_classify(state_path, out, report_path, dot_path, common);
    if (*feas) return cmd_feasibility(graph_path, do_search, config_path, out, witness_path, common);
    if (*cen) return cmd_census(n, out, witness_dir, common);
    if (*srch) return cmd_search(graph_path, config_path, out, witness_path, common);
    if (*cat) return cmd_catalog(letter, out);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
