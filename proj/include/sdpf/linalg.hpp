#ifndef SDPF_LINALG_HPP
#define SDPF_LINALG_HPP

#include <vector>

namespace sdpf {

// Small dense row-major matrix. Sized for the 25-column frame computations;
// not a general-purpose linear algebra library.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int n);
};

Mat matmul(const Mat& x, const Mat& y);
Mat transpose(const Mat& x);
double frobenius_norm(const Mat& x);
// ||X^T X - I||_F, the deviation of X from having orthonormal columns
double gram_identity_deviation(const Mat& x);

struct SvdResult {
  std::vector<double> sigma;  // descending
  Mat v;                      // right singular vectors as columns, cols x cols
};

// One-sided Jacobi SVD of an m x n matrix, m >= n. Returns singular values
// and right singular vectors; U is never materialized (not needed here).
// tol is the relative off-diagonal threshold for the column Gram matrix.
SvdResult jacobi_svd(Mat x, double tol = 1e-14);

// Largest singular value; transposes internally when rows < cols.
double spectral_norm(const Mat& x);

}  // namespace sdpf

#endif
