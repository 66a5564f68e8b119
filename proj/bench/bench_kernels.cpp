// Serial reference vs OpenMP kernels. On a single core the two should tie; the
// point is that both paths stay exercised and comparable.
#include <benchmark/benchmark.h>

#include "otsp/assembly.hpp"
#include "otsp/lp/kernels.hpp"
#include "otsp/rng.hpp"

using namespace otsp;
using lp::Exec;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

std::vector<double> random_dense(int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  for (auto& x : a) x = rng.unit() - 0.5;
  for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i) * m + i] += m;
  return a;
}

void BM_EtaUpdate(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  auto binv = random_dense(m, 1);
  std::vector<double> alpha(static_cast<std::size_t>(m), 0.01), norms(static_cast<std::size_t>(m));
  alpha[0] = 1.0;
  for (auto _ : st) {
    lp::kernels::eta_update(binv, m, 0, alpha, exec_of(st), &norms);
    benchmark::DoNotOptimize(binv.data());
  }
}

void BM_Ftran(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  auto binv = random_dense(m, 2);
  lp::SparseColumn a;
  for (int i = 0; i < m; i += 7) a.push_back({i, 1.0});
  std::vector<double> alpha;
  for (auto _ : st) {
    lp::kernels::ftran(binv, m, a, alpha, exec_of(st));
    benchmark::DoNotOptimize(alpha.data());
  }
}

void BM_PivotRow(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  Rng rng(3);
  std::vector<double> rho(static_cast<std::size_t>(m));
  for (auto& x : rho) x = rng.unit();
  std::vector<lp::SparseColumn> cols(static_cast<std::size_t>(8 * m));
  std::vector<int> idx;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (int t = 0; t < 4; ++t) cols[c].push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(m))), 1.0});
    idx.push_back(static_cast<int>(c));
  }
  std::vector<double> out;
  for (auto _ : st) {
    lp::kernels::pivot_row(rho, cols, idx, out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
}

// Whole pipeline: LP cut loop plus per-stroll decomposition.
void BM_Prepare(benchmark::State& st) {
  auto inst = generate(GenKind::Euclidean, static_cast<int>(st.range(0)), 4, 11);
  AssemblyOptions o;
  o.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(prepare(inst, o).lp.objective.get_d());
}

}  // namespace

BENCHMARK(BM_EtaUpdate)->ArgsProduct({{200, 800}, {0, 1}})->ArgNames({"m", "par"});
BENCHMARK(BM_Ftran)->ArgsProduct({{200, 800}, {0, 1}})->ArgNames({"m", "par"});
BENCHMARK(BM_PivotRow)->ArgsProduct({{200, 800}, {0, 1}})->ArgNames({"m", "par"});
BENCHMARK(BM_Prepare)->ArgsProduct({{16, 28}, {0, 1}})->ArgNames({"n", "par"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
