#pragma once

#include <utility>
#include <vector>

namespace otsp::lp {

enum class Exec { Serial, Parallel };

using SparseColumn = std::vector<std::pair<int, double>>;

namespace kernels {

// Product-form update of a dense row-major m x m inverse after pivoting on row r
// with entering column alpha = B^{-1} a_q:  row r /= alpha[r]; row i -= alpha[i] * row r.
// If `row_norms` is given, the squared norms of the touched rows are refreshed
// (these are the exact dual steepest-edge weights).
void eta_update(std::vector<double>& binv, int m, int r, const std::vector<double>& alpha, Exec exec,
                std::vector<double>* row_norms = nullptr);

// alpha = B^{-1} a for a sparse column a.
void ftran(const std::vector<double>& binv, int m, const SparseColumn& a, std::vector<double>& alpha,
           Exec exec);

// out[c] = rho . column(cols[c]) for the listed structural columns.
void pivot_row(const std::vector<double>& rho, const std::vector<SparseColumn>& columns,
               const std::vector<int>& cols, std::vector<double>& out, Exec exec);

}  // namespace kernels
}  // namespace otsp::lp
