#include "generate.hpp"

namespace simpson {

RingElt random_elt(const Ring& R, Rng& rng) {
  std::vector<int64_t> c(static_cast<size_t>(R.degree()));
  for (auto& v : c) v = rng.below(R.modulus());
  return R.from_coeffs(c);
}

Mat random_mat(const Ring& R, int rows, int cols, Rng& rng) {
  Mat M(R, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = random_elt(R, rng);
  return M;
}

std::vector<Mat> random_commuting_small(const Ring& R, int rank, int d, Rng& rng, int min_pi) {
  Mat B = random_mat(R, rank, rank, rng);
  RingElt s = R.pi().pow(min_pi);
  std::vector<Mat> out;
  for (int i = 0; i < d; ++i) {
    Mat q(R, rank, rank);
    Mat pw = Mat::identity(R, rank);
    for (int k = 0; k < rank; ++k) {
      q += pw * random_elt(R, rng);
      pw = pw * B;
    }
    out.push_back(q * s);
  }
  return out;
}

std::vector<Mat> random_small_rep(const Ring& R, int rank, int d, Rng& rng) {
  RingElt c = c_const(R);
  std::vector<Mat> out;
  for (const auto& X : random_commuting_small(R, rank, d, rng, 1)) out.push_back(Mat::identity(R, rank) + X * c);
  return out;
}

Mat random_invertible(const Ring& R, int n, Rng& rng) {
  Mat L = Mat::identity(R, n), U = Mat::identity(R, n), D(R, n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) L(i, j) = random_elt(R, rng);
    for (int j = i + 1; j < n; ++j) U(i, j) = random_elt(R, rng);
    RingElt u = random_elt(R, rng);
    while (!u.is_unit()) u = random_elt(R, rng);
    D(i, i) = u;
  }
  return L * D * U;
}

SemistableElt random_semistable(const Ring& R, const ChartParams& chart, Rng& rng, int terms) {
  SemistableElt x(R, chart);
  for (int t = 0; t < terms; ++t) {
    Exponents J(static_cast<size_t>(chart.d + 1));
    for (int i = 0; i <= chart.d; ++i) J[static_cast<size_t>(i)] = static_cast<int>(i <= chart.r ? rng.range(0, 2) : rng.range(-2, 2));
    x.add_term(J, random_elt(R, rng));
  }
  return x;
}

PerfElt random_perf(const Ring& R, const ChartParams& chart, Rng& rng, int comps) {
  auto idx = all_perf_indices(chart, R);
  PerfElt x(R, chart);
  for (int t = 0; t < comps; ++t)
    x.add_comp(idx[static_cast<size_t>(rng.below(static_cast<int64_t>(idx.size())))], random_semistable(R, chart, rng, 2));
  return x;
}

GammaElement random_gamma(const ChartParams& chart, Rng& rng, int bound) {
  std::vector<int64_t> m(static_cast<size_t>(chart.d));
  for (auto& v : m) v = rng.range(-bound, bound);
  return GammaElement::from_reduced(m, chart);
}

}  // namespace simpson
