#include "sdpf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sdpf {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat matmul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
  Mat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double xik = x.at(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += xik * y.at(k, j);
    }
  return out;
}

Mat transpose(const Mat& x) {
  Mat out(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
  return out;
}

double frobenius_norm(const Mat& x) {
  double s = 0.0;
  for (double v : x.a) s += v * v;
  return std::sqrt(s);
}

double gram_identity_deviation(const Mat& x) {
  Mat g = matmul(transpose(x), x);
  for (int i = 0; i < g.rows; ++i) g.at(i, i) -= 1.0;
  return frobenius_norm(g);
}

SvdResult jacobi_svd(Mat x, double tol) {
  const int m = x.rows, n = x.cols;
  if (m < n) throw std::invalid_argument("jacobi_svd: requires rows >= cols");
  Mat v = Mat::identity(n);

  const int max_sweeps = 64;
  bool changed = true;
  for (int sweep = 0; sweep < max_sweeps && changed; ++sweep) {
    changed = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < m; ++i) {
          const double xp = x.at(i, p), xq = x.at(i, q);
          app += xp * xp;
          aqq += xq * xq;
          apq += xp * xq;
        }
        if (apq == 0.0 || std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
        changed = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < m; ++i) {
          const double xp = x.at(i, p), xq = x.at(i, q);
          x.at(i, p) = c * xp - s * xq;
          x.at(i, q) = s * xp + c * xq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = v.at(i, p), vq = v.at(i, q);
          v.at(i, p) = c * vp - s * vq;
          v.at(i, q) = s * vp + c * vq;
        }
      }
    }
  }

  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += x.at(i, j) * x.at(i, j);
    sigma[j] = std::sqrt(s);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sigma[i] > sigma[j]; });

  SvdResult res;
  res.sigma.resize(n);
  res.v = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    res.sigma[j] = sigma[order[j]];
    for (int i = 0; i < n; ++i) res.v.at(i, j) = v.at(i, order[j]);
  }
  return res;
}

double spectral_norm(const Mat& x) {
  if (x.rows >= x.cols) return jacobi_svd(x).sigma.front();
  return jacobi_svd(transpose(x)).sigma.front();
}

}  // namespace sdpf
