#ifndef CAUSALNET_SIMPLEX_H_
#define CAUSALNET_SIMPLEX_H_

#include <span>
#include <vector>

namespace causalnet {

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[r * cols_ + c]; }
  double operator()(int r, int c) const { return data_[r * cols_ + c]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct L1FitResult {
  std::vector<double> x;         // x >= 0
  std::vector<double> residual;  // A x - b
  double objective = 0.0;        // sum |residual|
  int iterations = 0;
};

// Minimizes ||A x - b||_1 subject to x >= 0 with a dense tableau simplex.
// Each row gets a pair of nonnegative residual variables, so the all-residual
// basis is feasible from the start and no separate phase is needed. Bland's
// rule guarantees termination on degenerate problems. The linear system
// A x = b, x >= 0 is feasible iff the optimum is zero.
L1FitResult FitNonnegativeL1(const DenseMatrix& a, std::span<const double> b);

}  // namespace causalnet

#endif  // CAUSALNET_SIMPLEX_H_
