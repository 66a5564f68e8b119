#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "otsp/rational.hpp"

namespace otsp {

template <class T>
struct FlowTraits;

template <>
struct FlowTraits<double> {
  static bool positive(double v) { return v > 1e-12; }
};

template <>
struct FlowTraits<__int128> {
  static bool positive(__int128 v) { return v > 0; }
};

template <>
struct FlowTraits<Rational> {
  static bool positive(const Rational& v) { return sgn(v) > 0; }
};

// Dinic on a dense residual matrix. Fine for the few dozen vertices we deal with.
template <class T>
class DenseMaxFlow {
 public:
  explicit DenseMaxFlow(int n) : n_(n), cap_(static_cast<std::size_t>(n) * n, T(0)) {}

  int size() const { return n_; }
  void add_capacity(int u, int v, const T& c) { at(u, v) += c; }
  void add_undirected(int u, int v, const T& c) {
    at(u, v) += c;
    at(v, u) += c;
  }
  const T& residual(int u, int v) const { return cap_[static_cast<std::size_t>(u) * n_ + v]; }

  // Max flow from s to t. With a `limit`, stops as soon as the flow reaches it
  // (then the residual cut is not a minimum cut).
  T run(int s, int t, const T* limit = nullptr) {
    T flow(0);
    level_.assign(static_cast<std::size_t>(n_), -1);
    while (bfs(s, t)) {
      iter_.assign(static_cast<std::size_t>(n_), 0);
      for (;;) {
        T push = limit ? T(*limit - flow) : T(-1);
        T f = dfs(s, t, push, limit == nullptr);
        if (!FlowTraits<T>::positive(f)) break;
        flow += f;
        if (limit && !(flow < *limit)) return flow;
      }
    }
    return flow;
  }

  // Vertices reachable from s in the residual graph (call after run()).
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n_; ++v)
        if (!seen[v] && FlowTraits<T>::positive(residual(u, v))) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    return seen;
  }

 private:
  T& at(int u, int v) { return cap_[static_cast<std::size_t>(u) * n_ + v]; }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n_; ++v)
        if (level_[v] < 0 && FlowTraits<T>::positive(at(u, v))) {
          level_[v] = level_[u] + 1;
          q.push(v);
        }
    }
    return level_[t] >= 0;
  }

  // `unbounded` means the pushed amount is only limited by capacities.
  T dfs(int u, int t, const T& pushed, bool unbounded) {
    if (u == t) return pushed;
    for (int& v = iter_[u]; v < n_; ++v) {
      if (level_[v] != level_[u] + 1 || !FlowTraits<T>::positive(at(u, v))) continue;
      T room = at(u, v);
      if (!unbounded && pushed < room) room = pushed;
      T f = dfs(v, t, room, false);
      if (FlowTraits<T>::positive(f)) {
        at(u, v) -= f;
        at(v, u) += f;
        return f;
      }
    }
    return T(0);
  }

  int n_;
  std::vector<T> cap_;
  std::vector<int> level_, iter_;
};

}  // namespace otsp
