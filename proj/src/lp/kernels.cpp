#include "otsp/lp/kernels.hpp"

#include <cstddef>

namespace otsp::lp::kernels {

namespace {
// Below this the thread fork costs more than the loop.
constexpr int kParallelMin = 96;
}  // namespace

void eta_update(std::vector<double>& binv, int m, int r, const std::vector<double>& alpha, Exec exec,
                std::vector<double>* row_norms) {
  double* row_r = binv.data() + static_cast<std::ptrdiff_t>(r) * m;
  const double inv = 1.0 / alpha[r];
  double nr = 0.0;
  for (int j = 0; j < m; ++j) {
    row_r[j] *= inv;
    nr += row_r[j] * row_r[j];
  }
  if (row_norms) (*row_norms)[r] = nr;
  const bool par = exec == Exec::Parallel && m >= kParallelMin;
#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < m; ++i) {
    if (i == r) continue;
    const double f = alpha[i];
    if (f == 0.0) continue;
    double* row_i = binv.data() + static_cast<std::ptrdiff_t>(i) * m;
    if (row_norms) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) {
        row_i[j] -= f * row_r[j];
        s += row_i[j] * row_i[j];
      }
      (*row_norms)[i] = s;
    } else {
      for (int j = 0; j < m; ++j) row_i[j] -= f * row_r[j];
    }
  }
}

void ftran(const std::vector<double>& binv, int m, const SparseColumn& a, std::vector<double>& alpha,
           Exec exec) {
  alpha.assign(static_cast<std::size_t>(m), 0.0);
  const bool par = exec == Exec::Parallel && m >= kParallelMin;
#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < m; ++i) {
    const double* row = binv.data() + static_cast<std::ptrdiff_t>(i) * m;
    double s = 0.0;
    for (const auto& [r, c] : a) s += row[r] * c;
    alpha[i] = s;
  }
}

void pivot_row(const std::vector<double>& rho, const std::vector<SparseColumn>& columns,
               const std::vector<int>& cols, std::vector<double>& out, Exec exec) {
  const int cnt = static_cast<int>(cols.size());
  out.resize(cols.size());
  const bool par = exec == Exec::Parallel && cnt >= 4 * kParallelMin;
#pragma omp parallel for schedule(static) if (par)
  for (int c = 0; c < cnt; ++c) {
    double s = 0.0;
    for (const auto& [r, v] : columns[cols[c]]) s += rho[r] * v;
    out[c] = s;
  }
}

}  // namespace otsp::lp::kernels
