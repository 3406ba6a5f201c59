#ifndef SDPF_SDPF_HPP
#define SDPF_SDPF_HPP

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "sdpf/linalg.hpp"

namespace sdpf {

enum class FilterTag { lowpass, first_order, second_order, completion };

std::string tag_to_string(FilterTag tag, int k);

// A 5x5 dictionary element. Entries are stored row-major with row 0 at the
// top, matching the display convention of printed filter matrices.
struct Filter5x5 {
  std::array<double, 25> entries{};
  FilterTag tag = FilterTag::lowpass;
  int k = 0;  // 1-based index within the tag family; 0 for the lowpass

  double& at(int row, int col) { return entries[static_cast<size_t>(row) * 5 + col]; }
  double at(int row, int col) const { return entries[static_cast<size_t>(row) * 5 + col]; }

  double entry_sum() const;
  int nonzero_count(double eps = 1e-14) const;
};

// The vectorization map: bottom row first, left-to-right within a row.
std::array<double, 25> vectorize(const Filter5x5& f);
Filter5x5 unvectorize(const std::array<double, 25>& v, FilterTag tag, int k);

// Offsets (dcol, drow) from the filter center, drow increasing upward in the
// printed matrix. Row-major over the upper half-grid; covers every antipodal
// pair of the Chebyshev radius-1 and radius-2 rings exactly once.
std::array<std::pair<int, int>, 12> difference_directions();

// Tensor product of (1,4,6,4,1)/16 with itself. Entries sum to 1 and the
// square roots of its vectorization form a unit vector.
Filter5x5 build_lowpass();

// 12 first-order then 12 second-order central difference filters, unscaled.
std::vector<Filter5x5> build_difference_filters();

// c_k = sqrt(a_k), a = vectorize(build_lowpass())
std::array<double, 25> lowpass_sqrt_vector();

// Rows d(lambda, h_i) = lambda * (vectorize(h_i)_k / c_k), 24 x 25.
Mat build_d1(double lambda);

// Maximal lambda with sigma_max([c; D1(lambda)]) <= 1, computed as
// 1 / sigma_max(D1(1)).
double lambda_star_closed_form();
// Independent route: bisection on sigma_max([c; D1(lambda)]).
double lambda_star_bisection();
// Closed form, asserting agreement of both routes to 1e-10.
double solve_lambda_star();

// Stack [c; D1(lambda)] into the 25x25 matrix Q.
Mat build_q(double lambda);

// Completion rows: Q = U S1 V^T, S2 = diag(sqrt(1 - s_i^2)), D2 = S2 V^T with
// the leading (numerically zero) row dropped. 24 x 25.
Mat svd_complete(const Mat& q);

struct Dictionary {
  std::vector<Filter5x5> filters;  // 49: lowpass, 12 first, 12 second, 24 completion
  double lambda_star = 0.0;
  std::array<double, 25> c{};
  Mat frame_matrix;  // 49 x 25; rows [c; D1(lambda*); D2]
};

Dictionary assemble_dictionary();

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;  // the measured quantity the check thresholds
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

// (a) ||M^T M - I||_F, (b) Parseval energy identity on 1000 seeded vectors,
// (c) rows 2..49 orthogonal to row 1, (d) filter support/tag invariants.
VerifyReport verify_dictionary(const Dictionary& d);

void export_dictionary(const Dictionary& d, const std::filesystem::path& path);
// Parses, rebuilds the frame matrix, and re-runs verify_dictionary; throws
// std::runtime_error on malformed input or failed verification.
Dictionary import_dictionary(const std::filesystem::path& path);

}  // namespace sdpf

#endif
