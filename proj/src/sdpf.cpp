#include "sdpf/sdpf.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sdpf/util.hpp"

namespace sdpf {

namespace {

constexpr double kNearZeroRowNorm = 1e-7;

int lambda_index(int row, int col) {  // position of entry (row,col) in the vectorization
  return (4 - row) * 5 + col;
}

}  // namespace

std::string tag_to_string(FilterTag tag, int k) {
  switch (tag) {
    case FilterTag::lowpass: return "lowpass";
    case FilterTag::first_order: return "first_order(" + std::to_string(k) + ")";
    case FilterTag::second_order: return "second_order(" + std::to_string(k) + ")";
    case FilterTag::completion: return "completion(" + std::to_string(k) + ")";
  }
  return "?";
}

double Filter5x5::entry_sum() const {
  double s = 0.0;
  for (double e : entries) s += e;
  return s;
}

int Filter5x5::nonzero_count(double eps) const {
  int n = 0;
  for (double e : entries)
    if (std::abs(e) > eps) ++n;
  return n;
}

std::array<double, 25> vectorize(const Filter5x5& f) {
  std::array<double, 25> v{};
  for (int row = 0; row < 5; ++row)
    for (int col = 0; col < 5; ++col) v[lambda_index(row, col)] = f.at(row, col);
  return v;
}

Filter5x5 unvectorize(const std::array<double, 25>& v, FilterTag tag, int k) {
  Filter5x5 f;
  f.tag = tag;
  f.k = k;
  for (int row = 0; row < 5; ++row)
    for (int col = 0; col < 5; ++col) f.at(row, col) = v[lambda_index(row, col)];
  return f;
}

std::array<std::pair<int, int>, 12> difference_directions() {
  std::array<std::pair<int, int>, 12> dirs{};
  int i = 0;
  for (int drow : {2, 1})
    for (int dcol : {2, 1, 0, -1, -2}) dirs[i++] = {dcol, drow};
  dirs[i++] = {2, 0};
  dirs[i++] = {1, 0};
  return dirs;
}

Filter5x5 build_lowpass() {
  const std::array<double, 5> b{1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  Filter5x5 f;
  f.tag = FilterTag::lowpass;
  f.k = 0;
  for (int row = 0; row < 5; ++row)
    for (int col = 0; col < 5; ++col) f.at(row, col) = b[row] * b[col];
  return f;
}

std::vector<Filter5x5> build_difference_filters() {
  std::vector<Filter5x5> hs;
  hs.reserve(24);
  const auto dirs = difference_directions();
  for (int i = 0; i < 12; ++i) {
    const auto [dcol, drow] = dirs[i];
    Filter5x5 f;
    f.tag = FilterTag::first_order;
    f.k = i + 1;
    f.at(2 - drow, 2 + dcol) = 1.0;
    f.at(2 + drow, 2 - dcol) = -1.0;
    hs.push_back(f);
  }
  for (int i = 0; i < 12; ++i) {
    const auto [dcol, drow] = dirs[i];
    Filter5x5 f;
    f.tag = FilterTag::second_order;
    f.k = i + 1;
    f.at(2, 2) = 2.0;
    f.at(2 - drow, 2 + dcol) = -1.0;
    f.at(2 + drow, 2 - dcol) = -1.0;
    hs.push_back(f);
  }
  return hs;
}

std::array<double, 25> lowpass_sqrt_vector() {
  const auto a = vectorize(build_lowpass());
  std::array<double, 25> c{};
  for (int k = 0; k < 25; ++k) c[k] = std::sqrt(a[k]);
  return c;
}

Mat build_d1(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("build_d1: lambda must be positive");
  const auto c = lowpass_sqrt_vector();
  const auto hs = build_difference_filters();
  Mat d1(24, 25);
  for (int i = 0; i < 24; ++i) {
    const auto v = vectorize(hs[i]);
    for (int k = 0; k < 25; ++k) d1.at(i, k) = lambda * v[k] / c[k];
  }
  return d1;
}

Mat build_q(double lambda) {
  const auto c = lowpass_sqrt_vector();
  const Mat d1 = build_d1(lambda);
  Mat q(25, 25);
  for (int k = 0; k < 25; ++k) q.at(0, k) = c[k];
  for (int i = 0; i < 24; ++i)
    for (int k = 0; k < 25; ++k) q.at(i + 1, k) = d1.at(i, k);
  return q;
}

double lambda_star_closed_form() {
  const double smax = spectral_norm(build_d1(1.0));
  if (!(smax > 0.0)) throw std::runtime_error("lambda_star: sigma_max(D1(1)) is zero");
  return 1.0 / smax;
}

double lambda_star_bisection() {
  // sigma_max(Q(lambda)) == 1 for lambda <= lambda* and grows linearly above;
  // bisect the admissibility predicate.
  const double guard = 1e-12;
  auto admissible = [&](double lambda) {
    return spectral_norm(build_q(lambda)) <= 1.0 + guard;
  };
  double lo = 1e-6, hi = 1.0;
  if (!admissible(lo)) throw std::runtime_error("lambda_star_bisection: no admissible bracket");
  while (admissible(hi)) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  return lo;
}

double solve_lambda_star() {
  const double closed = lambda_star_closed_form();
  const double bisect = lambda_star_bisection();
  if (std::abs(closed - bisect) > 1e-10)
    throw std::runtime_error("lambda_star: closed form and bisection disagree: " +
                             format_g17(closed) + " vs " + format_g17(bisect));
  return closed;
}

Mat svd_complete(const Mat& q) {
  if (q.rows != 25 || q.cols != 25) throw std::invalid_argument("svd_complete: Q must be 25x25");
  SvdResult svd = jacobi_svd(q);
  for (double& s : svd.sigma) {
    if (s > 1.0 + 1e-9)
      throw std::runtime_error("svd_complete: singular value above 1: " + format_g17(s));
    if (s > 1.0) s = 1.0;
  }
  // D2_full = S2 V^T; the first row (sigma_1 = 1) is numerically zero and dropped.
  Mat d2(24, 25);
  for (int i = 1; i < 25; ++i) {
    const double s2 = std::sqrt(std::max(0.0, 1.0 - svd.sigma[i] * svd.sigma[i]));
    for (int k = 0; k < 25; ++k) d2.at(i - 1, k) = s2 * svd.v.at(k, i);
  }
  return d2;
}

Dictionary assemble_dictionary() {
  Dictionary d;
  d.lambda_star = solve_lambda_star();
  d.c = lowpass_sqrt_vector();

  const Mat q = build_q(d.lambda_star);
  const Mat d1 = build_d1(d.lambda_star);
  const Mat d2 = svd_complete(q);

  d.frame_matrix = Mat(49, 25);
  for (int k = 0; k < 25; ++k) d.frame_matrix.at(0, k) = d.c[k];
  for (int i = 0; i < 24; ++i)
    for (int k = 0; k < 25; ++k) d.frame_matrix.at(1 + i, k) = d1.at(i, k);
  for (int i = 0; i < 24; ++i)
    for (int k = 0; k < 25; ++k) d.frame_matrix.at(25 + i, k) = d2.at(i, k);

  d.filters.reserve(49);
  // Filter i = Lambda^{-1}(M_i * c) elementwise: row 1 gives h0 itself and the
  // D1 rows give lambda* h_i exactly.
  for (int i = 0; i < 49; ++i) {
    std::array<double, 25> row{};
    for (int k = 0; k < 25; ++k) row[k] = d.frame_matrix.at(i, k) * d.c[k];
    FilterTag tag;
    int kk;
    if (i == 0) {
      tag = FilterTag::lowpass;
      kk = 0;
    } else if (i <= 12) {
      tag = FilterTag::first_order;
      kk = i;
    } else if (i <= 24) {
      tag = FilterTag::second_order;
      kk = i - 12;
    } else {
      tag = FilterTag::completion;
      kk = i - 24;
    }
    d.filters.push_back(unvectorize(row, tag, kk));
  }
  return d;
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

VerifyReport verify_dictionary(const Dictionary& d) {
  VerifyReport rep;
  const Mat& m = d.frame_matrix;

  {
    VerifyCheck c;
    c.name = "parseval_gram";
    if (m.rows == 49 && m.cols == 25) {
      c.value = gram_identity_deviation(m);
      c.pass = c.value < 1e-10;
      c.detail = "||M^T M - I||_F = " + format_g17(c.value);
    } else {
      c.detail = "frame matrix is not 49x25";
    }
    rep.checks.push_back(c);
  }

  {
    VerifyCheck c;
    c.name = "parseval_energy";
    double worst = 0.0;
    if (m.rows == 49 && m.cols == 25) {
      auto rng = make_rng(0x5d9f5ull);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int trial = 0; trial < 1000; ++trial) {
        std::array<double, 25> v{};
        double vv = 0.0;
        for (double& x : v) {
          x = gauss(rng);
          vv += x * x;
        }
        double energy = 0.0;
        for (int i = 0; i < 49; ++i) {
          double dot = 0.0;
          for (int k = 0; k < 25; ++k) dot += m.at(i, k) * v[k];
          energy += dot * dot;
        }
        worst = std::max(worst, std::abs(energy - vv) / vv);
      }
      c.value = worst;
      c.pass = worst < 1e-8;
      c.detail = "max relative energy deviation over 1000 vectors = " + format_g17(worst);
    } else {
      c.detail = "frame matrix is not 49x25";
    }
    rep.checks.push_back(c);
  }

  {
    VerifyCheck c;
    c.name = "row1_orthogonality";
    double worst = 0.0;
    bool ok = m.rows == 49 && m.cols == 25;
    if (ok) {
      for (int i = 1; i < 49; ++i) {
        double dot = 0.0, norm2 = 0.0;
        for (int k = 0; k < 25; ++k) {
          dot += m.at(i, k) * m.at(0, k);
          norm2 += m.at(i, k) * m.at(i, k);
        }
        // near-zero completion rows are the numerically-zero degenerate
        // direction; orthogonality is vacuous for them
        if (std::sqrt(norm2) <= kNearZeroRowNorm) continue;
        worst = std::max(worst, std::abs(dot));
      }
      c.value = worst;
      c.pass = worst < 1e-12;
      c.detail = "max |<row_i, c>| = " + format_g17(worst);
    } else {
      c.detail = "frame matrix is not 49x25";
    }
    rep.checks.push_back(c);
  }

  {
    VerifyCheck c;
    c.name = "row_norms";
    double worst = 0.0;
    if (m.rows == 49 && m.cols == 25) {
      for (int i = 0; i < 49; ++i) {
        double norm2 = 0.0;
        for (int k = 0; k < 25; ++k) norm2 += m.at(i, k) * m.at(i, k);
        worst = std::max(worst, std::sqrt(norm2));
      }
      c.value = worst;
      c.pass = worst <= 1.0 + 1e-12;
      c.detail = "max row norm = " + format_g17(worst);
    } else {
      c.detail = "frame matrix is not 49x25";
    }
    rep.checks.push_back(c);
  }

  {
    VerifyCheck c;
    c.name = "filter_support";
    c.pass = d.filters.size() == 49;
    std::string why;
    const double lam = d.lambda_star;
    const double tol = 1e-12;
    const double support_eps = lam * 0.5;
    for (size_t i = 0; c.pass && i < d.filters.size(); ++i) {
      const Filter5x5& f = d.filters[i];
      if (i == 0) {
        if (f.tag != FilterTag::lowpass) { c.pass = false; why = "filter 1 tag"; break; }
        bool positive = true;
        for (double e : f.entries) positive = positive && e > 0.0;
        if (!positive || std::abs(f.entry_sum() - 1.0) > tol) {
          c.pass = false;
          why = "lowpass entries";
        }
      } else if (i <= 12) {
        if (f.tag != FilterTag::first_order || f.nonzero_count(support_eps) != 2 ||
            std::abs(f.entry_sum()) > tol) {
          c.pass = false;
          why = "first_order support at filter " + std::to_string(i + 1);
        }
      } else if (i <= 24) {
        if (f.tag != FilterTag::second_order || f.nonzero_count(support_eps) != 3 ||
            std::abs(f.entry_sum()) > tol) {
          c.pass = false;
          why = "second_order support at filter " + std::to_string(i + 1);
        }
      } else if (f.tag != FilterTag::completion) {
        c.pass = false;
        why = "completion tag at filter " + std::to_string(i + 1);
      }
    }
    c.detail = c.pass ? "49 filters, tags and supports consistent" : why;
    rep.checks.push_back(c);
  }

  return rep;
}

void export_dictionary(const Dictionary& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_dictionary: cannot open " + path.string());
  out << "SDPF v1 size=5 count=" << d.filters.size() << " lambda=" << format_g17(d.lambda_star)
      << "\n";
  for (size_t i = 0; i < d.filters.size(); ++i) {
    const Filter5x5& f = d.filters[i];
    out << (i + 1) << ' ' << tag_to_string(f.tag, f.k);
    for (double e : f.entries) out << ' ' << format_g17(e);
    out << "\n";
  }
  if (!out) throw std::runtime_error("export_dictionary: write failed for " + path.string());
}

Dictionary import_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_dictionary: cannot open " + path.string());

  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("import_dictionary: empty file");
  std::istringstream hs(header);
  std::string magic, ver, size_kv, count_kv, lambda_kv;
  hs >> magic >> ver >> size_kv >> count_kv >> lambda_kv;
  if (magic != "SDPF" || ver != "v1" || size_kv != "size=5" || count_kv != "count=49" ||
      lambda_kv.rfind("lambda=", 0) != 0)
    throw std::runtime_error("import_dictionary: malformed header: " + header);

  Dictionary d;
  try {
    d.lambda_star = std::stod(lambda_kv.substr(7));
  } catch (const std::exception&) {
    throw std::runtime_error("import_dictionary: malformed lambda");
  }

  for (int i = 1; i <= 49; ++i) {
    std::string line;
    if (!std::getline(in, line))
      throw std::runtime_error("import_dictionary: truncated at filter " + std::to_string(i));
    std::istringstream ls(line);
    int idx = 0;
    std::string tag;
    if (!(ls >> idx >> tag) || idx != i)
      throw std::runtime_error("import_dictionary: bad index at filter " + std::to_string(i));

    FilterTag expected_tag;
    int expected_k;
    if (i == 1) {
      expected_tag = FilterTag::lowpass;
      expected_k = 0;
    } else if (i <= 13) {
      expected_tag = FilterTag::first_order;
      expected_k = i - 1;
    } else if (i <= 25) {
      expected_tag = FilterTag::second_order;
      expected_k = i - 13;
    } else {
      expected_tag = FilterTag::completion;
      expected_k = i - 25;
    }
    if (tag != tag_to_string(expected_tag, expected_k))
      throw std::runtime_error("import_dictionary: unexpected tag '" + tag + "' at filter " +
                               std::to_string(i));

    Filter5x5 f;
    f.tag = expected_tag;
    f.k = expected_k;
    for (int e = 0; e < 25; ++e)
      if (!(ls >> f.entries[e]))
        throw std::runtime_error("import_dictionary: truncated entries at filter " +
                                 std::to_string(i));
    double extra;
    if (ls >> extra)
      throw std::runtime_error("import_dictionary: trailing data at filter " + std::to_string(i));
    d.filters.push_back(f);
  }

  // Rebuild c and the frame matrix: c = sqrt(vec(filter 1)), M_i = vec(f_i)/c.
  const auto a = vectorize(d.filters[0]);
  for (int k = 0; k < 25; ++k) {
    if (!(a[k] > 0.0)) throw std::runtime_error("import_dictionary: lowpass entries must be positive");
    d.c[k] = std::sqrt(a[k]);
  }
  d.frame_matrix = Mat(49, 25);
  for (int k = 0; k < 25; ++k) d.frame_matrix.at(0, k) = d.c[k];
  for (int i = 1; i < 49; ++i) {
    const auto v = vectorize(d.filters[i]);
    for (int k = 0; k < 25; ++k) d.frame_matrix.at(i, k) = v[k] / d.c[k];
  }

  const VerifyReport rep = verify_dictionary(d);
  if (!rep.all_pass()) {
    std::string msg = "import_dictionary: verification failed:";
    for (const auto& c : rep.checks)
      if (!c.pass) msg += " [" + c.name + ": " + c.detail + "]";
    throw std::runtime_error(msg);
  }
  return d;
}

}  // namespace sdpf
