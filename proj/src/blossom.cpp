// Maximum-weight general matching, O(n^3) primal-dual (Edmonds' blossoms with
// lazy slack maintenance). Vertices are 1-based internally; blossoms use ids n+1..2n.

#include "blossom.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace otsp::detail {

namespace {

class Blossom {
 public:
  using W = std::int64_t;

  explicit Blossom(int n)
      : n_(n),
        nx_(n),
        cap_(2 * n + 1),
        g_(static_cast<std::size_t>(cap_) * cap_),
        lab_(cap_, 0),
        match_(cap_, 0),
        slack_(cap_, 0),
        st_(cap_, 0),
        pa_(cap_, 0),
        flo_from_(static_cast<std::size_t>(cap_) * (n + 1), 0),
        s_(cap_, 0),
        vis_(cap_, 0),
        flo_(cap_) {
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v) edge(u, v) = {u, v, 0};
  }

  void set_weight(int u, int v, W w) {
    edge(u, v).w = w;
    edge(v, u).w = w;
  }

  // Returns mate per vertex (1-based, 0 = unmatched).
  std::vector<int> solve() {
    nx_ = n_;
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flo_[u].clear();
    }
    W wmax = 0;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        from(u, v) = (u == v ? u : 0);
        wmax = std::max(wmax, edge(u, v).w);
      }
    for (int u = 1; u <= n_; ++u) lab_[u] = wmax;
    while (augmenting_phase()) {
    }
    return std::vector<int>(match_.begin(), match_.begin() + n_ + 1);
  }

 private:
  struct E {
    int u = 0, v = 0;
    W w = 0;
  };

  E& edge(int u, int v) { return g_[static_cast<std::size_t>(u) * cap_ + v]; }
  int& from(int b, int x) { return flo_from_[static_cast<std::size_t>(b) * (n_ + 1) + x]; }

  W delta(const E& e) const { return lab_[e.u] + lab_[e.v] - e.w * 2; }

  void update_slack(int u, int x) {
    if (!slack_[x] || delta(edge(u, x)) < delta(edge(slack_[x], x))) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (edge(u, x).w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_)
      q_.push(x);
    else
      for (int y : flo_[x]) q_push(y);
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int y : flo_[x]) set_st(y, b);
  }

  int get_pr(int b, int xr) {
    auto& f = flo_[b];
    int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
    if (pr % 2 == 1) {
      std::reverse(f.begin() + 1, f.end());
      return static_cast<int>(f.size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = edge(u, v).v;
    if (u > n_) {
      E e = edge(u, v);
      int xr = from(u, e.u), pr = get_pr(u, xr);
      for (int i = 0; i < pr; ++i) set_match(flo_[u][i], flo_[u][i ^ 1]);
      set_match(xr, v);
      std::rotate(flo_[u].begin(), flo_[u].begin() + pr, flo_[u].end());
    }
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++stamp_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == stamp_) return u;
      vis_[u] = stamp_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= nx_ && st_[b]) ++b;
    if (b > nx_) ++nx_;
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    auto& f = flo_[b];
    f.clear();
    f.push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      f.push_back(x);
      f.push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(f.begin() + 1, f.end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      f.push_back(x);
      f.push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= nx_; ++x) edge(b, x).w = edge(x, b).w = 0;
    for (int x = 1; x <= n_; ++x) from(b, x) = 0;
    for (int xs : f) {
      for (int x = 1; x <= nx_; ++x)
        if (edge(b, x).w == 0 || delta(edge(xs, x)) < delta(edge(b, x))) {
          edge(b, x) = edge(xs, x);
          edge(x, b) = edge(x, xs);
        }
      for (int x = 1; x <= n_; ++x)
        if (from(xs, x)) from(b, x) = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int x : flo_[b]) set_st(x, x);
    int xr = from(b, edge(b, pa_[b]).u), pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flo_[b][i], xns = flo_[b][i + 1];
      pa_[xs] = edge(xns, xs).u;
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < flo_[b].size(); ++i) {
      int xs = flo_[b][i];
      s_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const E& e) {
    int u = st_[e.u], v = st_[e.v];
    if (s_[v] == -1) {
      pa_[v] = e.u;
      s_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      s_[nu] = 0;
      q_push(nu);
    } else if (s_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool augmenting_phase() {
    std::fill(s_.begin() + 1, s_.begin() + nx_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + nx_ + 1, 0);
    q_ = {};
    for (int x = 1; x <= nx_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (edge(u, v).w > 0 && st_[u] != st_[v]) {
            if (delta(edge(u, v)) == 0) {
              if (on_found_edge(edge(u, v))) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      W d = std::numeric_limits<W>::max();
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= nx_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1)
            d = std::min(d, delta(edge(slack_[x], x)));
          else if (s_[x] == 0)
            d = std::min(d, delta(edge(slack_[x], x)) / 2);
        }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b) {
          if (s_[st_[b]] == 0)
            lab_[b] += d * 2;
          else if (s_[st_[b]] == 1)
            lab_[b] -= d * 2;
        }
      q_ = {};
      for (int x = 1; x <= nx_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && delta(edge(slack_[x], x)) == 0)
          if (on_found_edge(edge(slack_[x], x))) return true;
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }

  int n_, nx_, cap_;
  std::vector<E> g_;
  std::vector<W> lab_;
  std::vector<int> match_, slack_, st_, pa_;
  std::vector<int> flo_from_;
  std::vector<int> s_, vis_;
  std::vector<std::vector<int>> flo_;
  std::queue<int> q_;
  int stamp_ = 0;
};

}  // namespace

std::vector<int> max_weight_matching(int n, const std::vector<std::int64_t>& weights) {
  Blossom b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      std::int64_t w = weights[static_cast<std::size_t>(u) * n + v];
      if (w > 0) b.set_weight(u + 1, v + 1, w);
    }
  auto mate = b.solve();
  std::vector<int> out(static_cast<std::size_t>(n), -1);
  for (int u = 1; u <= n; ++u) out[u - 1] = mate[u] ? mate[u] - 1 : -1;
  return out;
}

}  // namespace otsp::detail
