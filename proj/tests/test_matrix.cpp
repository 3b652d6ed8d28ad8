#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "matrix.hpp"
#include "oracle.hpp"

using namespace simpson;

namespace {

RingElt rnd(const Ring& R, std::mt19937_64& rng) {
  return R.from_coeffs(oracle::random_coeffs(rng, R.degree(), R.modulus()));
}

Mat rnd_mat(const Ring& R, std::mt19937_64& rng, int m, int n, int min_w = 0) {
  Mat A(R, m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rnd(R, rng) * R.pi().pow(static_cast<int64_t>(rng() % 3) + min_w);
  return A;
}

std::vector<RingElt> all_elements(const Ring& R) {
  std::vector<RingElt> out;
  int64_t q = R.modulus();
  for (int64_t a = 0; a < q; ++a)
    for (int64_t b = 0; b < q; ++b) out.push_back(R.from_coeffs({a, b}));
  return out;
}

using Key = std::vector<int64_t>;

Key key_of(const Mat& v) {
  Key k;
  for (int i = 0; i < v.rows(); ++i)
    for (int64_t c : v(i, 0).coeffs()) k.push_back(c);
  return k;
}

// every vector x in W^n with A x = 0, by enumeration
std::set<Key> brute_kernel(const Mat& A, const std::vector<RingElt>& elems) {
  std::set<Key> out;
  int n = A.cols();
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  while (true) {
    Mat x(A.ring(), n, 1);
    for (int i = 0; i < n; ++i) x(i, 0) = elems[idx[static_cast<size_t>(i)]];
    if ((A * x).is_zero()) out.insert(key_of(x));
    int i = 0;
    while (i < n && ++idx[static_cast<size_t>(i)] == elems.size()) idx[static_cast<size_t>(i++)] = 0;
    if (i == n) break;
  }
  return out;
}

std::set<Key> span_of(const Mat& G, const std::vector<RingElt>& elems) {
  std::set<Key> out;
  int k = G.cols();
  std::vector<size_t> idx(static_cast<size_t>(k), 0);
  while (true) {
    Mat x(G.ring(), G.rows(), 1);
    for (int j = 0; j < k; ++j) x = x + G.col(j) * elems[idx[static_cast<size_t>(j)]];
    out.insert(key_of(x));
    int j = 0;
    while (j < k && ++idx[static_cast<size_t>(j)] == elems.size()) idx[static_cast<size_t>(j++)] = 0;
    if (j == k) break;
  }
  return out;
}

RingElt leibniz_det(const Mat& A) {
  const Ring& R = A.ring();
  int n = A.rows();
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  RingElt d = R.zero();
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)];
    RingElt t = R.one();
    for (int i = 0; i < n; ++i) t *= A(i, perm[static_cast<size_t>(i)]);
    d = (inv % 2) ? d - t : d + t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return d;
}

}  // namespace

TEST_CASE("howell of trivial matrices") {
  const Ring& R = Ring::get(3, 1, 8);
  Howell z = howell(Mat(R, 3, 3));
  CHECK(z.H.rows() == 0);
  Howell id = howell(Mat::identity(R, 3));
  CHECK(id.H == Mat::identity(R, 3));
}

TEST_CASE("kernel of multiplication by pi over W(1,2)") {
  const Ring& R = Ring::get(3, 1, 2, 1);
  Mat A(R, 1, 1);
  A(0, 0) = R.pi();
  Mat K = kernel(A);
  Mat expect(R, 1, 1);
  expect(0, 0) = R.pi().pow(2 * 2 - 1);
  CHECK(same_column_span(K, expect));
  auto elems = all_elements(R);
  CHECK(brute_kernel(A, elems) == span_of(K, elems));
  CHECK(brute_kernel(A, elems).size() == 3);
}

TEST_CASE("kernels agree with enumeration over W(1,2)") {
  const Ring& R = Ring::get(3, 1, 2, 1);
  auto elems = all_elements(R);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 6; ++it) {
    Mat A = rnd_mat(R, rng, 1 + static_cast<int>(rng() % 2), 2);
    Mat K = kernel(A);
    CHECK((A * K).is_zero());
    CHECK(brute_kernel(A, elems) == span_of(K, elems));
  }
}

TEST_CASE("smith decomposition reconstructs the matrix") {
  const Ring& R = Ring::get(3, 1, 8);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 30; ++it) {
    int m = 1 + static_cast<int>(rng() % 5), n = 1 + static_cast<int>(rng() % 5);
    Mat A = rnd_mat(R, rng, m, n) * R.pi().pow(static_cast<int64_t>(rng() % 2));
    Smith s = smith(A);
    Mat D = s.U * A * s.V;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        RingElt expect = (i == j && i < s.rank) ? R.pi().pow(s.k[static_cast<size_t>(i)]) : R.zero();
        CHECK(D(i, j) == expect);
      }
    CHECK(s.V * s.Vinv == Mat::identity(R, n));
    for (size_t i = 1; i < s.k.size(); ++i) CHECK(s.k[i - 1] <= s.k[i]);
  }
}

TEST_CASE("solve and inverse") {
  const Ring& R = Ring::get(3, 1, 8);
  std::mt19937_64 rng(21);
  for (int it = 0; it < 30; ++it) {
    Mat A = rnd_mat(R, rng, 4, 3);
    Mat X = rnd_mat(R, rng, 3, 2);
    Mat B = A * X;
    auto Y = solve(A, B);
    REQUIRE(Y.has_value());
    CHECK(A * (*Y) == B);
  }
  Mat U = Mat::identity(R, 3) + rnd_mat(R, rng, 3, 3, 1);
  auto Ui = inverse(U);
  REQUIRE(Ui.has_value());
  CHECK(U * (*Ui) == Mat::identity(R, 3));
  Mat S(R, 1, 1);
  S(0, 0) = R.from_int(3);
  Mat one(R, 1, 1);
  one(0, 0) = R.one();
  CHECK_FALSE(solve(S, one).has_value());
}

TEST_CASE("howell form is canonical for the row span") {
  const Ring& R = Ring::get(3, 1, 6);
  std::mt19937_64 rng(17);
  for (int it = 0; it < 30; ++it) {
    Mat A = rnd_mat(R, rng, 3, 4, static_cast<int>(rng() % 2));
    Mat P = Mat::identity(R, 3) + rnd_mat(R, rng, 3, 3, 1);
    Mat B = P * A;
    Howell ha = howell(A, true), hb = howell(B);
    CHECK(ha.H == hb.H);
    CHECK(ha.T * A == ha.H);
    // every row of A is a member; a random vector usually is not detected falsely
    for (int i = 0; i < 3; ++i) CHECK(howell_contains(ha, A.row(i)));
    Mat extra = Mat::vstack(A, rnd_mat(R, rng, 1, 4));
    Howell he = howell(extra);
    bool member = howell_contains(ha, extra.row(3));
    CHECK(member == (he.H == ha.H));
  }
}

TEST_CASE("characteristic polynomial agrees with principal minors") {
  const Ring& R = Ring::get(3, 1, 8);
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 4; ++n) {
    Mat A = rnd_mat(R, rng, n, n);
    auto c = charpoly(A);
    REQUIRE(static_cast<int>(c.size()) == n);
    for (int k = 1; k <= n; ++k) {
      // (-1)^k c_k = sum of principal k-minors
      RingElt s = R.zero();
      for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) idx.push_back(i);
        s += leibniz_det(A.select_rows(idx).select_cols(idx));
      }
      CHECK((k % 2 ? -c[static_cast<size_t>(k - 1)] : c[static_cast<size_t>(k - 1)]) == s);
    }
  }
}
