#include "otsp/relaxation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "otsp/error.hpp"
#include "otsp/lp/exact.hpp"
#include "otsp/lp/revised_simplex.hpp"
#include "otsp/maxflow.hpp"

namespace otsp {

Rational StrollPoint::x_at(Vertex u, Vertex v) const {
  auto it = x.find(make_edge(u, v));
  return it == x.end() ? Rational(0) : it->second;
}

Rational StrollPoint::cost(const CostMatrix& c) const {
  Rational total = 0;
  for (const auto& [e, val] : x) total += val * from_int64(c(e.first, e.second));
  return total;
}

std::vector<Rational> StrollPoint::degrees() const {
  std::vector<Rational> d(y.size());
  for (const auto& [e, val] : x) {
    d[e.first] += val;
    d[e.second] += val;
  }
  return d;
}

StrollPoint make_stroll_point(int index, Vertex s, Vertex t, int n, const std::map<Edge, Rational>& x) {
  StrollPoint p;
  p.index = index;
  p.s = s;
  p.t = t;
  for (const auto& [e, v] : x)
    if (sgn(v) != 0) p.x[e] = v;
  p.y.assign(static_cast<std::size_t>(n), Rational(0));
  for (const auto& [e, v] : p.x) {
    p.y[e.first] += v;
    p.y[e.second] += v;
  }
  for (auto& v : p.y) v /= 2;
  return p;
}

namespace {

// ---- separation, shared by the float and exact paths ----

template <class T>
struct WeightedEdge {
  Vertex u, v;
  T w;
};

template <class T>
struct CutCandidate {
  CutFamily family;
  std::vector<Vertex> side;
  Vertex vertex = -1;
  T violation;
};

template <class T>
std::vector<Vertex> members(const std::vector<char>& in, int n) {
  std::vector<Vertex> out;
  for (int v = 0; v < n; ++v)
    if (in[v]) out.push_back(v);
  return out;
}

template <class T>
std::vector<CutCandidate<T>> separate_generic(int n, Vertex s, Vertex t, const std::vector<WeightedEdge<T>>& edges,
                                              const std::vector<T>& y, const T& tol) {
  std::vector<CutCandidate<T>> out;
  T total(0);
  for (const auto& e : edges) total += e.w;

  {
    DenseMaxFlow<T> f(n);
    for (const auto& e : edges) f.add_undirected(e.u, e.v, e.w);
    T one(1);
    T flow = f.run(s, t, &one);
    if (flow < one - tol) {
      // limit not reached: the flow is maximum and the residual cut is minimum
      out.push_back({CutFamily::SourceSink, members<T>(f.source_side(s), n), -1, T(one - flow)});
    }
  }

  DenseMaxFlow<T> base(n + 1);
  for (const auto& e : edges) base.add_undirected(e.u, e.v, e.w);
  const T big = total + T(1);
  base.add_capacity(s, n, big);
  base.add_capacity(t, n, big);
  std::optional<CutCandidate<T>> best;
  for (Vertex v = 0; v < n; ++v) {
    if (v == s || v == t || !(y[v] > tol)) continue;
    DenseMaxFlow<T> f = base;
    T need = y[v] * 2;
    T flow = f.run(v, n, &need);
    if (!(flow < need - tol)) continue;
    T viol = need - flow;
    if (!best || best->violation < viol) {
      auto side = f.source_side(v);
      side.resize(static_cast<std::size_t>(n));
      best = CutCandidate<T>{CutFamily::Vertex, members<T>(side, n), v, viol};
    }
  }
  if (best) out.push_back(*best);
  return out;
}

// ---- LP model ----

struct Model {
  int n = 0, k = 0;
  struct Col {
    int stroll;
    Vertex u, v;
  };
  std::vector<Col> cols;
  std::vector<std::map<Edge, int>> col_of;  // per stroll
  std::vector<std::vector<char>> active;    // per stroll, vertex usable
  struct Row {
    std::vector<std::pair<int, int>> terms;
    lp::RowSense sense;
    int rhs;
  };
  std::vector<Row> rows;
  std::vector<std::vector<std::pair<int, int>>> col_rows;  // column -> (row, coef)
  std::vector<Cost> cost;

  void add_row(Row r) {
    const int id = static_cast<int>(rows.size());
    for (const auto& [j, c] : r.terms) col_rows[j].push_back({id, c});
    rows.push_back(std::move(r));
  }
};

Model build_model(const Instance& inst) {
  Model m;
  m.n = inst.n();
  m.k = inst.k();
  m.col_of.resize(static_cast<std::size_t>(m.k));
  m.active.assign(static_cast<std::size_t>(m.k), std::vector<char>(static_cast<std::size_t>(m.n), 0));
  for (int i = 0; i < m.k; ++i) {
    auto& act = m.active[i];
    for (Vertex v = 0; v < m.n; ++v) act[v] = !inst.is_ordered(v);
    act[inst.d(i)] = act[inst.d(i + 1)] = 1;
    for (Vertex u = 0; u < m.n; ++u)
      for (Vertex v = u + 1; v < m.n; ++v)
        if (act[u] && act[v]) {
          m.col_of[i][{u, v}] = static_cast<int>(m.cols.size());
          m.cols.push_back({i, u, v});
          m.cost.push_back(inst.costs()(u, v));
        }
  }
  m.col_rows.resize(m.cols.size());
  auto degree_terms = [&](int i, Vertex v) {
    std::vector<std::pair<int, int>> terms;
    for (Vertex u = 0; u < m.n; ++u) {
      if (u == v) continue;
      auto it = m.col_of[i].find(make_edge(u, v));
      if (it != m.col_of[i].end()) terms.push_back({it->second, 1});
    }
    return terms;
  };
  for (int i = 0; i < m.k; ++i) {
    m.add_row({degree_terms(i, inst.d(i)), lp::RowSense::Equal, 1});
    m.add_row({degree_terms(i, inst.d(i + 1)), lp::RowSense::Equal, 1});
  }
  for (Vertex v = 0; v < m.n; ++v) {
    if (inst.is_ordered(v)) continue;
    std::vector<std::pair<int, int>> terms;
    for (int i = 0; i < m.k; ++i) {
      auto t = degree_terms(i, v);
      terms.insert(terms.end(), t.begin(), t.end());
    }
    m.add_row({std::move(terms), lp::RowSense::Equal, 2});
  }
  return m;
}

Model::Row cut_row(const Model& m, const StrollCut& cut) {
  std::vector<char> in(static_cast<std::size_t>(m.n), 0);
  for (Vertex v : cut.side) in[v] = 1;
  std::map<int, int> coef;
  for (const auto& [e, col] : m.col_of[cut.stroll]) {
    if (in[e.first] != in[e.second]) coef[col] += 1;
    if (cut.family == CutFamily::Vertex && (e.first == cut.vertex || e.second == cut.vertex)) coef[col] -= 1;
  }
  Model::Row r{{}, lp::RowSense::AtLeast, cut.family == CutFamily::SourceSink ? 1 : 0};
  for (const auto& [col, c] : coef)
    if (c != 0) r.terms.push_back({col, c});
  return r;
}

std::string cut_key(const StrollCut& c) {
  std::string key = std::to_string(c.stroll) + (c.family == CutFamily::SourceSink ? "s" : "v") +
                    std::to_string(c.vertex) + ":";
  for (Vertex v : c.side) key += std::to_string(v) + ",";
  return key;
}

lp::SparseColumn to_sparse(const Model::Row& r) {
  lp::SparseColumn out;
  for (const auto& [j, c] : r.terms) out.push_back({j, static_cast<double>(c)});
  return out;
}

std::vector<StrollCut> float_separation(const Model& m, const Instance& inst, const std::vector<double>& x,
                                        lp::Exec exec) {
  std::vector<std::vector<StrollCut>> per(static_cast<std::size_t>(m.k));
#pragma omp parallel for schedule(dynamic) if (exec == lp::Exec::Parallel)
  for (int i = 0; i < m.k; ++i) {
    std::vector<WeightedEdge<double>> edges;
    std::vector<double> y(static_cast<std::size_t>(m.n), 0.0);
    for (const auto& [e, col] : m.col_of[i]) {
      double v = x[col];
      if (v <= 1e-12) continue;
      edges.push_back({e.first, e.second, v});
      y[e.first] += v / 2;
      y[e.second] += v / 2;
    }
    auto cands = separate_generic<double>(m.n, inst.d(i), inst.d(i + 1), edges, y, 1e-6);
    for (auto& c : cands) per[i].push_back({i, c.family, c.side, c.vertex, Rational(0)});
  }
  std::vector<StrollCut> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

struct Certificate {
  bool ok = false;
  std::string why;
  std::vector<Rational> x;  // per column
};

Rational rat(int v) { return Rational(v); }

Certificate certify(const Model& m, lp::RevisedSimplex& sim) {
  sim.refactor();
  Certificate cert;
  const int ncols = static_cast<int>(m.cols.size());
  const int nrows = static_cast<int>(m.rows.size());
  const auto& basis = sim.basis();

  std::vector<int> row_idx(static_cast<std::size_t>(nrows), -1), tight;
  for (int r = 0; r < nrows; ++r) {
    bool surplus_basic = m.rows[r].sense == lp::RowSense::AtLeast && sim.is_basic(ncols + r);
    if (!surplus_basic) {
      row_idx[r] = static_cast<int>(tight.size());
      tight.push_back(r);
    }
  }
  std::vector<int> bcols;  // basic structurals and basic artificials
  std::vector<int> pos_of_basic;
  for (int pos = 0; pos < static_cast<int>(basis.size()); ++pos) {
    int j = basis[pos];
    if (j >= ncols && m.rows[j - ncols].sense == lp::RowSense::AtLeast) continue;
    bcols.push_back(j);
    pos_of_basic.push_back(pos);
  }
  const int sz = static_cast<int>(tight.size());
  if (static_cast<int>(bcols.size()) != sz) {
    cert.why = "reduced basis is not square";
    return cert;
  }
  std::vector<int> col_idx_struct(static_cast<std::size_t>(ncols), -1);
  for (int c = 0; c < sz; ++c)
    if (bcols[c] < ncols) col_idx_struct[bcols[c]] = c;

  // B' restricted to tight rows
  std::vector<lp::RationalRow> brows(static_cast<std::size_t>(sz));
  std::vector<Rational> rhs(static_cast<std::size_t>(sz));
  for (int a = 0; a < sz; ++a) {
    const auto& row = m.rows[tight[a]];
    rhs[a] = row.rhs;
    for (const auto& [j, c] : row.terms)
      if (col_idx_struct[j] >= 0) brows[a].push_back({col_idx_struct[j], rat(c)});
  }
  for (int c = 0; c < sz; ++c)
    if (bcols[c] >= ncols) brows[row_idx[bcols[c] - ncols]].push_back({c, Rational(1)});

  auto residual_ok = [&](const std::vector<Rational>& xb) {
    for (int a = 0; a < sz; ++a) {
      Rational s = 0;
      for (const auto& [c, v] : brows[a]) s += v * xb[c];
      if (s != rhs[a]) return false;
    }
    return true;
  };
  std::vector<Rational> xb(static_cast<std::size_t>(sz));
  for (int c = 0; c < sz; ++c)
    xb[c] = bcols[c] < ncols ? lp::reconstruct_rational(sim.basic_value(pos_of_basic[c])) : Rational(0);
  if (!residual_ok(xb)) {
    auto solved = lp::solve_square_exact(brows, rhs, sz);
    if (!solved) {
      cert.why = "basis matrix is singular in exact arithmetic";
      return cert;
    }
    xb = std::move(*solved);
  }
  cert.x.assign(static_cast<std::size_t>(ncols), Rational(0));
  for (int c = 0; c < sz; ++c) {
    if (bcols[c] >= ncols) {
      if (sgn(xb[c]) != 0) {
        cert.why = "artificial variable nonzero";
        return cert;
      }
      continue;
    }
    if (sgn(xb[c]) < 0) {
      cert.why = "negative basic variable";
      return cert;
    }
    cert.x[bcols[c]] = xb[c];
  }
  for (int r = 0; r < nrows; ++r) {
    if (row_idx[r] >= 0) continue;
    Rational act = 0;
    for (const auto& [j, c] : m.rows[r].terms) act += cert.x[j] * c;
    if (act < m.rows[r].rhs) {
      cert.why = "cut violated by the exact basic solution";
      return cert;
    }
  }

  // duals on tight rows: pi^T B' = c_B'
  std::vector<double> fpi = sim.row_duals();
  std::vector<Rational> pi(static_cast<std::size_t>(sz));
  for (int a = 0; a < sz; ++a) pi[a] = lp::reconstruct_rational(fpi[tight[a]]);
  std::vector<lp::RationalRow> bt(static_cast<std::size_t>(sz));
  std::vector<Rational> cb(static_cast<std::size_t>(sz));
  for (int a = 0; a < sz; ++a)
    for (const auto& [c, v] : brows[a]) bt[c].push_back({a, v});
  for (int c = 0; c < sz; ++c) cb[c] = bcols[c] < ncols ? from_int64(m.cost[bcols[c]]) : Rational(0);
  bool dual_ok = true;
  for (int c = 0; c < sz && dual_ok; ++c) {
    Rational s = 0;
    for (const auto& [a, v] : bt[c]) s += v * pi[a];
    dual_ok = s == cb[c];
  }
  if (!dual_ok) {
    auto solved = lp::solve_square_exact(bt, cb, sz);
    if (!solved) {
      cert.why = "transposed basis singular";
      return cert;
    }
    pi = std::move(*solved);
  }
  for (int a = 0; a < sz; ++a)
    if (m.rows[tight[a]].sense == lp::RowSense::AtLeast && sgn(pi[a]) < 0) {
      cert.why = "negative cut dual";
      return cert;
    }
  for (int j = 0; j < ncols; ++j) {
    if (col_idx_struct[j] >= 0) continue;
    Rational d = from_int64(m.cost[j]);
    for (const auto& [r, c] : m.col_rows[j])
      if (row_idx[r] >= 0) d -= pi[row_idx[r]] * c;
    if (sgn(d) < 0) {
      cert.why = "negative reduced cost";
      return cert;
    }
  }
  cert.ok = true;
  return cert;
}

std::vector<StrollPoint> points_from(const Model& m, const Instance& inst, const std::vector<Rational>& x) {
  std::vector<StrollPoint> pts;
  for (int i = 0; i < m.k; ++i) {
    std::map<Edge, Rational> xi;
    for (const auto& [e, col] : m.col_of[i])
      if (sgn(x[col]) != 0) xi[e] = x[col];
    pts.push_back(make_stroll_point(i, inst.d(i), inst.d(i + 1), m.n, xi));
  }
  return pts;
}

}  // namespace

std::vector<StrollCut> separate_stroll(const StrollPoint& p) {
  std::vector<WeightedEdge<Rational>> edges;
  for (const auto& [e, v] : p.x)
    if (sgn(v) > 0) edges.push_back({e.first, e.second, v});
  auto cands = separate_generic<Rational>(p.n(), p.s, p.t, edges, p.y, Rational(0));
  std::vector<StrollCut> out;
  for (auto& c : cands) out.push_back({p.index, c.family, std::move(c.side), c.vertex, c.violation});
  return out;
}

std::string check_stroll_feasible(const StrollPoint& p) {
  const int n = p.n();
  if (p.s == p.t) return "s and t coincide";
  if (p.s < 0 || p.s >= n || p.t < 0 || p.t >= n) return "endpoint out of range";
  for (const auto& [e, v] : p.x) {
    if (sgn(v) < 0) return "negative x on edge {" + std::to_string(e.first) + "," + std::to_string(e.second) + "}";
    if (e.first < 0 || e.second >= n || e.first >= e.second) return "malformed edge";
  }
  auto deg = p.degrees();
  for (Vertex v = 0; v < n; ++v) {
    if (sgn(p.y[v]) < 0) return "negative y at " + std::to_string(v);
    if (p.y[v] > 1) return "y above 1 at " + std::to_string(v);
    if (deg[v] != p.y[v] * 2) return "degree identity fails at vertex " + std::to_string(v);
  }
  if (p.y[p.s] != Rational(1, 2) || p.y[p.t] != Rational(1, 2)) return "y_s or y_t differs from 1/2";
  auto cuts = separate_stroll(p);
  if (!cuts.empty()) {
    const auto& c = cuts.front();
    std::string what = c.family == CutFamily::SourceSink ? "s-t cut" : "vertex cut at " + std::to_string(c.vertex);
    return what + " violated by " + to_fraction_string(c.violation);
  }
  return {};
}

RelaxationSolution solve_relaxation(const Instance& inst, const RelaxationOptions& opts) {
  Model m = build_model(inst);
  lp::SimplexOptions so;
  so.exec = opts.exec;
  std::vector<double> c(m.cost.begin(), m.cost.end());
  lp::RevisedSimplex sim(std::move(c), so);
  for (const auto& r : m.rows) sim.add_row(to_sparse(r), r.sense, r.rhs);

  RelaxationSolution sol;
  auto& st = sol.stats;
  const int max_rounds = opts.max_rounds > 0 ? opts.max_rounds : 10 * m.n * m.k;
  std::set<std::string> seen;
  auto add_cuts = [&](const std::vector<StrollCut>& cuts) {
    int added = 0;
    for (const auto& cut : cuts) {
      if (!seen.insert(cut_key(cut)).second) continue;
      auto row = cut_row(m, cut);
      sim.add_row(to_sparse(row), row.sense, row.rhs);
      m.add_row(std::move(row));
      sol.cuts.push_back(cut);
      ++added;
    }
    st.cuts_added += added;
    return added;
  };
  auto stats_text = [&]() {
    std::ostringstream o;
    o << "rounds=" << st.rounds << " cuts=" << st.cuts_added << " exact_checks=" << st.exact_checks
      << " simplex_iterations=" << sim.iterations();
    return o.str();
  };

  for (;;) {
    auto status = sim.solve();
    if (status == lp::RevisedSimplex::Status::Infeasible)
      throw ConsistencyError("relaxation LP reported infeasible (" + stats_text() + ")");
    if (status == lp::RevisedSimplex::Status::IterationLimit)
      throw ResourceError("simplex iteration limit reached (" + stats_text() + ")");
    if (st.rounds >= max_rounds)
      throw ResourceError("cut loop exceeded " + std::to_string(max_rounds) + " separation rounds (" +
                          stats_text() + ")");
    ++st.rounds;
    if (add_cuts(float_separation(m, inst, sim.primal(), opts.exec)) > 0) continue;

    ++st.exact_checks;
    Certificate cert = certify(m, sim);
    if (!cert.ok) {
      if (++st.exact_retries > 3)
        throw ConsistencyError("exact certification failed repeatedly: " + cert.why + " (" + stats_text() + ")");
      sim.tighten();
      continue;
    }
    auto pts = points_from(m, inst, cert.x);
    std::vector<std::vector<StrollCut>> per(pts.size());
#pragma omp parallel for schedule(dynamic) if (opts.exec == lp::Exec::Parallel)
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) per[i] = separate_stroll(pts[i]);
    std::vector<StrollCut> exact_cuts;
    for (auto& v : per) exact_cuts.insert(exact_cuts.end(), v.begin(), v.end());
    if (exact_cuts.empty()) {
      sol.strolls = std::move(pts);
      sol.objective = 0;
      for (std::size_t j = 0; j < m.cols.size(); ++j)
        if (sgn(cert.x[j]) != 0) sol.objective += cert.x[j] * from_int64(m.cost[j]);
      break;
    }
    ++st.rounds;
    if (add_cuts(exact_cuts) == 0)
      throw ConsistencyError("exact separation returned a cut that is already in the model");
  }
  st.simplex_iterations = sim.iterations();
  st.refactorizations = sim.refactorizations();
  st.rows = sim.num_rows();
  st.columns = sim.num_structural();
  return sol;
}

std::string verify_relaxation(const Instance& inst, const RelaxationSolution& sol) {
  const int n = inst.n(), k = inst.k();
  if (static_cast<int>(sol.strolls.size()) != k) return "expected " + std::to_string(k) + " strolls";
  std::vector<Rational> link(static_cast<std::size_t>(n), Rational(0));
  Rational obj = 0;
  for (int i = 0; i < k; ++i) {
    const auto& p = sol.strolls[i];
    if (p.n() != n) return "stroll " + std::to_string(i) + " has wrong vertex count";
    if (p.s != inst.d(i) || p.t != inst.d(i + 1)) return "stroll " + std::to_string(i) + " has wrong endpoints";
    auto why = check_stroll_feasible(p);
    if (!why.empty()) return "stroll " + std::to_string(i) + ": " + why;
    for (Vertex v = 0; v < n; ++v) {
      if (inst.is_ordered(v) && v != p.s && v != p.t && sgn(p.y[v]) != 0)
        return "stroll " + std::to_string(i) + " covers ordered vertex " + std::to_string(v);
      link[v] += p.y[v];
    }
    obj += p.cost(inst.costs());
  }
  for (Vertex v = 0; v < n; ++v)
    if (link[v] != 1) return "linking constraint fails at vertex " + std::to_string(v);
  if (obj != sol.objective) return "objective differs from c^T x";
  return {};
}

HeldKarpCertificate aggregate_held_karp(const RelaxationSolution& sol, int n) {
  HeldKarpCertificate cert;
  for (const auto& p : sol.strolls)
    for (const auto& [e, v] : p.x) cert.x[e] += v;
  std::vector<Rational> deg(static_cast<std::size_t>(n));
  for (const auto& [e, v] : cert.x) {
    deg[e.first] += v;
    deg[e.second] += v;
  }
  for (Vertex v = 0; v < n; ++v)
    if (deg[v] != 2)
      throw ConsistencyError("Held-Karp degree violated at vertex " + std::to_string(v) + ": x(delta(v)) = " +
                             to_fraction_string(deg[v]));
  cert.min_cut = Rational(-1);
  for (Vertex v = 1; v < n; ++v) {
    DenseMaxFlow<Rational> f(n);
    for (const auto& [e, w] : cert.x) f.add_undirected(e.first, e.second, w);
    Rational val = f.run(0, v);
    if (cert.min_cut < 0 || val < cert.min_cut) {
      cert.min_cut = val;
      auto side = f.source_side(0);
      cert.min_cut_side.clear();
      for (Vertex u = 0; u < n; ++u)
        if (side[u]) cert.min_cut_side.push_back(u);
    }
  }
  if (n >= 2 && cert.min_cut < 2) {
    std::string side;
    for (Vertex u : cert.min_cut_side) side += std::to_string(u) + " ";
    throw ConsistencyError("Held-Karp cut violated: x(delta(S)) = " + to_fraction_string(cert.min_cut) +
                           " < 2 for S = { " + side + "}");
  }
  cert.ok = true;
  return cert;
}

std::string relaxation_to_json(const RelaxationSolution& sol) {
  nlohmann::ordered_json j;
  j["objective"] = to_fraction_string(sol.objective);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : sol.strolls) {
    nlohmann::ordered_json s;
    s["i"] = p.index;
    auto xs = nlohmann::ordered_json::array();
    for (const auto& [e, v] : p.x) xs.push_back({e.first, e.second, to_fraction_string(v)});
    s["x"] = xs;
    auto ys = nlohmann::ordered_json::array();
    for (Vertex v = 0; v < p.n(); ++v)
      if (sgn(p.y[v]) != 0) ys.push_back({v, to_fraction_string(p.y[v])});
    s["y"] = ys;
    arr.push_back(s);
  }
  j["strolls"] = arr;
  return j.dump(1) + "\n";
}

RelaxationSolution relaxation_from_json(const std::string& text, const Instance& inst) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("LP dump: ") + e.what());
  }
  RelaxationSolution sol;
  try {
    sol.objective = parse_fraction(j.at("objective").get<std::string>());
    for (const auto& s : j.at("strolls")) {
      int i = s.at("i").get<int>();
      if (i < 0 || i >= inst.k()) throw ParseError("LP dump: stroll index out of range");
      StrollPoint p;
      p.index = i;
      p.s = inst.d(i);
      p.t = inst.d(i + 1);
      p.y.assign(static_cast<std::size_t>(inst.n()), Rational(0));
      for (const auto& e : s.at("x")) {
        Vertex u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u < 0 || v < 0 || u >= inst.n() || v >= inst.n() || u == v) throw ParseError("LP dump: bad edge");
        p.x[make_edge(u, v)] = parse_fraction(e.at(2).get<std::string>());
      }
      for (const auto& e : s.at("y")) {
        Vertex v = e.at(0).get<int>();
        if (v < 0 || v >= inst.n()) throw ParseError("LP dump: bad vertex");
        p.y[v] = parse_fraction(e.at(1).get<std::string>());
      }
      sol.strolls.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("LP dump: ") + e.what());
  }
  std::sort(sol.strolls.begin(), sol.strolls.end(),
            [](const StrollPoint& a, const StrollPoint& b) { return a.index < b.index; });
  return sol;
}

}  // namespace otsp
