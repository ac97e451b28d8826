#include "causalnet/simplex.h"

#include <cmath>
#include <limits>

#include "causalnet/errors.h"

namespace causalnet {

namespace {

constexpr double kPivotTolerance = 1e-12;

}  // namespace

L1FitResult FitNonnegativeL1(const DenseMatrix& a, std::span<const double> b) {
  const int m = a.rows();
  const int n = a.cols();
  if (static_cast<int>(b.size()) != m) {
    throw QueryError("right-hand side length does not match the matrix");
  }
  // Columns: x (n), r_plus (m), r_minus (m), rhs.
  // Row i: A_i x + r_plus_i - r_minus_i = b_i, negated when b_i < 0 so the
  // starting basic variable (r_plus_i, or r_minus_i after negation) is >= 0.
  const int cols = n + 2 * m;
  const int rhs = cols;
  DenseMatrix t(m + 1, cols + 1);  // last row holds reduced costs
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
    t(i, n + i) = sign;
    t(i, n + m + i) = -sign;
    t(i, rhs) = sign * b[i];
    basis[i] = sign > 0 ? n + i : n + m + i;
  }
  // Reduced costs c_j - c_B^T B^-1 A_j with unit cost on residual columns.
  for (int j = n; j < cols; ++j) t(m, j) = 1.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= cols; ++j) t(m, j) -= t(i, j);
  }

  L1FitResult result;
  const int max_iterations = 50 * (m + cols);
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (t(m, j) < -kPivotTolerance) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) <= kPivotTolerance) continue;
      const double ratio = t(i, rhs) / t(i, enter);
      if (ratio < best - kPivotTolerance ||
          (ratio <= best + kPivotTolerance && leave >= 0 &&
           basis[i] < basis[leave])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    // The objective is bounded below by zero, so an entering column always
    // has a blocking row.
    if (leave < 0) throw InternalError("L1 fit reported an unbounded ray");

    const double pivot = t(leave, enter);
    for (int j = 0; j <= cols; ++j) t(leave, j) /= pivot;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
    if (++result.iterations > max_iterations) {
      throw InternalError("L1 fit exceeded its iteration budget");
    }
  }

  result.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, t(i, rhs));
  }
  result.residual.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double r = -b[i];
    for (int j = 0; j < n; ++j) r += a(i, j) * result.x[j];
    result.residual[i] = r;
    result.objective += std::abs(r);
  }
  return result;
}

}  // namespace causalnet
