#include "egraph/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "egraph/error.hpp"

namespace egraph {

namespace {

using RealVector = Eigen::VectorXd;

constexpr double kRenormalizeSlack = 1e-6;
// fraction of the per-restart budget available to the optimizer proper; the
// rest is reserved for least-squares polishing
constexpr double kOptimizerShare = 0.8;
constexpr double kPolishTrigger = 1e-3;

// Penalty terms of one target graph, with per-pair basis-index tables.
class PenaltyModel {
 public:
  PenaltyModel(const EntangledGraph& g, const SearchConfig& cfg)
      : n_(g.size()), floor_c_(cfg.target_concurrence_floor), floor_d_(cfg.correlation_floor) {
    const std::size_t rest_count = std::size_t{1} << (n_ - 2);
    for (Vertex i = 0; i < n_; ++i)
      for (Vertex j = i + 1; j < n_; ++j) {
        Term t;
        t.cls = g.pair_class(i, j);
        const std::size_t bi = std::size_t{1} << (n_ - 1 - i);
        const std::size_t bj = std::size_t{1} << (n_ - 1 - j);
        for (std::size_t x = 0; x < rest_count; ++x) {
          std::size_t full = 0;
          int bit = n_ - 3;
          for (int p = 0; p < n_; ++p) {
            if (p == i || p == j) continue;
            if ((x >> bit) & 1U) full |= std::size_t{1} << (n_ - 1 - p);
            --bit;
          }
          t.rows.push_back({static_cast<int>(full), static_cast<int>(full | bj), static_cast<int>(full | bi),
                            static_cast<int>(full | bi | bj)});
        }
        terms_.push_back(std::move(t));
      }
  }

  int qubits() const { return n_; }
  Eigen::Index dim() const { return Eigen::Index{1} << n_; }

  double value(const Vector& psi) const {
    double total = 0.0;
    for (const auto& t : terms_) {
      const Matrix4 rho = reduce(psi, t);
      switch (t.cls) {
        case PairClass::kEntangled:
          total += std::max(0.0, floor_c_ - two_qubit::concurrence(rho));
          break;
        case PairClass::kClassicalOnly:
          total += two_qubit::negativity(rho) + std::max(0.0, floor_d_ - two_qubit::factorization_distance(rho));
          break;
        case PairClass::kUncorrelated:
          total += two_qubit::factorization_distance(rho);
          break;
      }
    }
    return total;
  }

  // Residual vector whose squared norm is small iff value() is small; the
  // uncorrelated terms are the entrywise differences rho_ij - rho_i x rho_j.
  void residuals(const Vector& psi, std::vector<double>& out) const {
    out.clear();
    for (const auto& t : terms_) {
      const Matrix4 rho = reduce(psi, t);
      switch (t.cls) {
        case PairClass::kEntangled:
          out.push_back(std::max(0.0, floor_c_ - two_qubit::concurrence(rho)));
          break;
        case PairClass::kClassicalOnly:
          out.push_back(two_qubit::negativity(rho));
          out.push_back(std::max(0.0, floor_d_ - two_qubit::factorization_distance(rho)));
          break;
        case PairClass::kUncorrelated: {
          const Matrix2 a = two_qubit::marginal_first(rho);
          const Matrix2 b = two_qubit::marginal_second(rho);
          for (int r = 0; r < 4; ++r)
            for (int c = r; c < 4; ++c) {
              const Complex d = rho(r, c) - a(r / 2, c / 2) * b(r % 2, c % 2);
              // off-diagonal entries stand for both (r,c) and (c,r)
              const double w = r == c ? 1.0 : std::sqrt(2.0);
              out.push_back(w * d.real());
              if (r != c) out.push_back(w * d.imag());
            }
          break;
        }
      }
    }
  }

 private:
  struct Term {
    PairClass cls;
    std::vector<std::array<int, 4>> rows;
  };

  static Matrix4 reduce(const Vector& psi, const Term& t) {
    Matrix4 rho = Matrix4::Zero();
    for (const auto& r : t.rows) {
      const Eigen::Vector4cd v(psi(r[0]), psi(r[1]), psi(r[2]), psi(r[3]));
      rho.noalias() += v * v.adjoint();
    }
    return rho;
  }

  int n_;
  double floor_c_;
  double floor_d_;
  std::vector<Term> terms_;
};

// x holds real parts followed by imaginary parts.
Vector to_state(const RealVector& x, Eigen::Index dim) {
  Vector psi(dim);
  for (Eigen::Index k = 0; k < dim; ++k) psi(k) = Complex(x(k), x(dim + k));
  const double norm = psi.norm();
  if (norm > 0.0) psi /= norm;
  return psi;
}

class Evaluator {
 public:
  Evaluator(const PenaltyModel& model, long budget) : model_(model), budget_(budget) {}

  double operator()(const RealVector& x) {
    ++evals_;
    if (x.squaredNorm() < 1e-200) return std::numeric_limits<double>::infinity();
    return model_.value(to_state(x, model_.dim()));
  }

  void residuals(const RealVector& x, std::vector<double>& out) {
    ++evals_;
    model_.residuals(to_state(x, model_.dim()), out);
  }

  long evals() const { return evals_; }
  long remaining() const { return std::max(0L, budget_ - evals_); }
  void set_budget(long b) { budget_ = b; }

 private:
  const PenaltyModel& model_;
  long budget_;
  long evals_ = 0;
};

struct Minimum {
  RealVector x;
  double f;
};

// Nelder-Mead with dimension-adapted coefficients; the simplex is rebuilt
// around the incumbent whenever it collapses while budget remains.
Minimum nelder_mead(Evaluator& eval, RealVector start, double step) {
  const auto d = static_cast<int>(start.size());
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / d;
  const double gamma = 0.75 - 1.0 / (2.0 * d);
  const double delta = 1.0 - 1.0 / d;

  Minimum best{start, eval(start)};
  double last_rebuild_f = std::numeric_limits<double>::infinity();
  while (eval.remaining() > d + 1 && best.f > 0.0) {
    std::vector<RealVector> pts(static_cast<std::size_t>(d + 1), best.x);
    std::vector<double> fs(static_cast<std::size_t>(d + 1), best.f);
    for (int k = 0; k < d; ++k) {
      pts[k + 1](k) += step;
      fs[k + 1] = eval(pts[k + 1]);
    }
    std::vector<int> order(static_cast<std::size_t>(d + 1));
    while (eval.remaining() > 0) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
      const int lo = order.front(), hi = order.back(), second = order[d - 1];
      if (fs[lo] <= 0.0) break;
      double size = 0.0;
      for (int k = 0; k <= d; ++k) size = std::max(size, (pts[k] - pts[lo]).lpNorm<Eigen::Infinity>());
      if (fs[hi] - fs[lo] <= 1e-15 + 1e-12 * std::abs(fs[lo]) && size <= 1e-11) break;

      RealVector centroid = RealVector::Zero(d);
      for (int k = 0; k <= d; ++k)
        if (k != hi) centroid += pts[k];
      centroid /= d;

      const RealVector xr = centroid + alpha * (centroid - pts[hi]);
      const double fr = eval(xr);
      if (fr < fs[lo]) {
        const RealVector xe = centroid + beta * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          pts[hi] = xe;
          fs[hi] = fe;
        } else {
          pts[hi] = xr;
          fs[hi] = fr;
        }
        continue;
      }
      if (fr < fs[second]) {
        pts[hi] = xr;
        fs[hi] = fr;
        continue;
      }
      bool shrink = false;
      if (fr < fs[hi]) {
        const RealVector xc = centroid + gamma * (xr - centroid);
        const double fc = eval(xc);
        if (fc <= fr) {
          pts[hi] = xc;
          fs[hi] = fc;
        } else {
          shrink = true;
        }
      } else {
        const RealVector xc = centroid + gamma * (pts[hi] - centroid);
        const double fc = eval(xc);
        if (fc < fs[hi]) {
          pts[hi] = xc;
          fs[hi] = fc;
        } else {
          shrink = true;
        }
      }
      if (shrink) {
        for (int k = 0; k <= d; ++k) {
          if (k == lo) continue;
          pts[k] = pts[lo] + delta * (pts[k] - pts[lo]);
          fs[k] = eval(pts[k]);
        }
      }
    }
    const auto lo = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    if (fs[lo] < best.f) best = {pts[lo], fs[lo]};
    // stop rebuilding once a rebuild no longer buys a relative improvement
    if (best.f >= last_rebuild_f * (1.0 - 1e-6)) break;
    last_rebuild_f = best.f;
    step *= 0.5;
  }
  return best;
}

Minimum finite_difference_descent(Evaluator& eval, RealVector x, double) {
  const auto d = static_cast<int>(x.size());
  double f = eval(x);
  double t = 1e-2;
  constexpr double h = 1e-7;
  RealVector grad(d);
  while (eval.remaining() > 2 * d + 1 && f > 0.0) {
    for (int k = 0; k < d; ++k) {
      RealVector xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      grad(k) = (eval(xp) - eval(xm)) / (2.0 * h);
    }
    const double g2 = grad.squaredNorm();
    if (g2 < 1e-24) break;
    bool moved = false;
    while (eval.remaining() > 0 && t > 1e-16) {
      const RealVector xn = x - t * grad;
      const double fn = eval(xn);
      if (fn <= f - 1e-4 * t * g2) {
        x = xn;
        f = fn;
        t *= 2.0;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return {x, f};
}

// Levenberg-Marquardt on the residual vector with forward-difference
// Jacobians. Only accepts steps that lower the squared residual.
RealVector polish(Evaluator& eval, RealVector x) {
  const auto d = static_cast<int>(x.size());
  std::vector<double> r0, r1;
  eval.residuals(x, r0);
  auto sq = [](const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  };
  double cost = sq(r0);
  double mu = 1e-6;
  const auto m = static_cast<Eigen::Index>(r0.size());
  Eigen::MatrixXd jac(m, d);
  for (int iter = 0; iter < 100 && cost > 1e-30 && eval.remaining() > d + 1; ++iter) {
    const double h = 1e-8 * std::max(1.0, x.norm());
    for (int k = 0; k < d; ++k) {
      RealVector xp = x;
      xp(k) += h;
      eval.residuals(xp, r1);
      for (Eigen::Index q = 0; q < m; ++q) jac(q, k) = (r1[q] - r0[q]) / h;
    }
    const Eigen::Map<const RealVector> r(r0.data(), m);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const RealVector jtr = jac.transpose() * r;
    bool improved = false;
    while (eval.remaining() > 0 && mu < 1e12) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const RealVector step = a.ldlt().solve(-jtr);
      const RealVector xn = x + step;
      eval.residuals(xn, r1);
      const double cn = sq(r1);
      if (cn < cost) {
        x = xn;
        r0 = r1;
        cost = cn;
        mu = std::max(mu * 0.1, 1e-15);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
    // renormalize so the finite-difference scale stays meaningful
    x /= x.norm();
  }
  return x;
}

class NormalStream {
 public:
  NormalStream(std::uint64_t seed, int restart)
      : gen_([&] {
          std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                            static_cast<std::uint32_t>(restart)};
          return std::mt19937_64(seq);
        }()) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct RestartOutcome {
  RestartTrace trace;
  Vector state;
};

RestartOutcome run_restart(const PenaltyModel& model, const EntangledGraph& g, const SearchConfig& cfg,
                           int restart) {
  const Eigen::Index dim = model.dim();
  NormalStream normal(cfg.seed, restart);
  RealVector x(2 * dim);
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = normal.next();
  x /= x.norm();

  const long total = cfg.max_evals_per_restart;
  Evaluator eval(model, static_cast<long>(kOptimizerShare * static_cast<double>(total)));
  const double step = 0.5 / std::sqrt(static_cast<double>(dim));
  Minimum best = cfg.method == SearchMethod::kNelderMead ? nelder_mead(eval, x, step)
                                                         : finite_difference_descent(eval, x, step);
  eval.set_budget(total);
  RealVector xb = best.x / best.x.norm();
  double fb = best.f;
  if (fb > 0.0 && fb < kPolishTrigger && eval.remaining() > 0) {
    const RealVector xp = polish(eval, xb);
    const double fp = eval(xp);
    if (fp < fb) {
      xb = xp;
      fb = fp;
    }
  }

  RestartOutcome out;
  out.state = to_state(xb, dim);
  out.trace.restart = restart;
  out.trace.best = fb;
  out.trace.evals = eval.evals();
  out.trace.verified = extract_graph(PureState::on(g.size(), out.state), cfg.accept_tol).graph == g;
  return out;
}

}  // namespace

std::string to_string(SearchMethod m) {
  return m == SearchMethod::kNelderMead ? "nelder-mead" : "finite-difference-descent";
}

SearchMethod parse_search_method(const std::string& s) {
  if (s == "nelder-mead") return SearchMethod::kNelderMead;
  if (s == "finite-difference-descent") return SearchMethod::kFiniteDifferenceDescent;
  throw Error(ErrorCode::kInvalidArgument, "unknown search method '" + s + "'");
}

SearchConfig default_search_config(int n) {
  SearchConfig cfg;
  if (n <= 3) {
    cfg.restarts = 16;
    cfg.max_evals_per_restart = 5000;
  } else if (n == 4) {
    cfg.restarts = 64;
    cfg.max_evals_per_restart = 20000;
  } else {
    cfg.restarts = 64;
    cfg.max_evals_per_restart = 60000;
  }
  return cfg;
}

void validate_config(const SearchConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, "invalid search config: " + msg); };
  if (cfg.restarts < 1) fail("restarts must be at least 1");
  if (cfg.max_evals_per_restart < 100) fail("max_evals_per_restart must be at least 100");
  if (cfg.jobs < 1) fail("jobs must be at least 1");
  if (!(cfg.accept_tol.entanglement > 0.0) || !(cfg.accept_tol.factorization > 0.0))
    fail("acceptance tolerances must be positive");
  if (!(cfg.target_concurrence_floor > cfg.accept_tol.entanglement))
    fail("target_concurrence_floor must exceed the entanglement threshold");
  if (!(cfg.correlation_floor > cfg.accept_tol.factorization))
    fail("correlation_floor must exceed the factorization threshold");
}

double objective(const PureState& psi, const EntangledGraph& g, const SearchConfig& cfg) {
  require_valid(g);
  if (psi.qubit_count() != g.size())
    throw Error(ErrorCode::kInvalidArgument, "state has " + std::to_string(psi.qubit_count()) +
                                                 " qubits, graph has " + std::to_string(g.size()));
  if (g.size() < 2) return 0.0;
  Vector v = psi.amplitudes();
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 - 1.0) > kRenormalizeSlack)
    throw Error(ErrorCode::kInvalidState, "objective input is not normalized");
  v /= std::sqrt(norm2);
  return PenaltyModel(g, cfg).value(v);
}

SearchResult search(const EntangledGraph& g, const SearchConfig& cfg) {
  require_valid(g);
  validate_config(cfg);
  if (g.size() > cfg.max_qubits)
    throw Error(ErrorCode::kCapExceeded, "search cap exceeded: n=" + std::to_string(g.size()) + " > " +
                                             std::to_string(cfg.max_qubits));
  if (connected_components(g).size() != 1)
    throw Error(ErrorCode::kInvalidArgument, "search expects a connected graph; decompose it first");

  SearchResult result;
  if (g.size() == 1) {
    result.found = true;
    result.witness = PureState::basis(1, 0);
    result.best_restart = 0;
    result.per_restart_trace.push_back({0, 0.0, 0, true});
    return result;
  }

  const PenaltyModel model(g, cfg);
  std::vector<std::optional<RestartOutcome>> outcomes(static_cast<std::size_t>(cfg.restarts));
  std::atomic<int> next{0};
  std::atomic<int> first_found{cfg.restarts};
  auto worker = [&] {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= cfg.restarts || r > first_found.load()) return;
      outcomes[r] = run_restart(model, g, cfg, r);
      if (outcomes[r]->trace.verified) {
        int cur = first_found.load();
        while (r < cur && !first_found.compare_exchange_weak(cur, r)) {
        }
      }
    }
  };
  const int jobs = std::min(cfg.jobs, cfg.restarts);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const int last = std::min(first_found.load(), cfg.restarts - 1);
  result.best_objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r <= last; ++r) {
    const auto& o = *outcomes[r];
    result.per_restart_trace.push_back(o.trace);
    result.evals += o.trace.evals;
    if (o.trace.best < result.best_objective) {
      result.best_objective = o.trace.best;
      result.best_restart = r;
    }
  }
  if (first_found.load() < cfg.restarts) {
    const auto& o = *outcomes[first_found.load()];
    result.found = true;
    result.best_restart = first_found.load();
    result.best_objective = o.trace.best;
    result.witness = PureState::on(g.size(), o.state);
  }
  return result;
}

}  // namespace egraph
