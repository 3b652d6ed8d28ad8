#include <doctest.h>

#include "generate.hpp"
#include "higgs.hpp"
#include "oracle.hpp"

using namespace simpson;

namespace {

Mat m1(const RingElt& x) { return Mat::from_rows(x.ring(), {{x}}); }

Mat block_diag(const Mat& a, const Mat& b) {
  Mat r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

}  // namespace

TEST_CASE("topological nilpotence certificates") {
  const Ring& R = Ring::get(3, 1, 8);
  CHECK(is_top_nilpotent({Mat(R, 2, 2)}).accepted);
  CHECK(is_top_nilpotent({m1(R.from_int(3))}).accepted);
  auto bad = is_top_nilpotent({m1(R.one())});
  CHECK_FALSE(bad.accepted);
  CHECK(bad.reason.find("c_1") != std::string::npos);
  // nilpotent but not divisible by pi still passes
  Mat n = Mat::from_rows(R, {{R.zero(), R.one()}, {R.zero(), R.zero()}});
  CHECK(is_top_nilpotent({n}).accepted);
  CHECK(power_nilpotent(n, 2));
  CHECK_FALSE(power_nilpotent(m1(R.one()), 5));
}

TEST_CASE("rep_from_higgs on explicit fixtures") {
  const Ring& R = Ring::get(3, 1, 8);
  auto M0 = rep_from_higgs(make_higgs({Mat(R, 2, 2)}));
  CHECK(M0.A[0] == Mat::identity(R, 2));
  // theta = (3): A = exp(-c * 3) = exp(9 zeta_3)
  auto M = rep_from_higgs(make_higgs({m1(R.from_int(3))}));
  auto expect = oracle::exp_scaled({0, 1}, 2, 3, 1, 8, 40);
  CHECK(M.A[0](0, 0).coeffs() == expect);
}

TEST_CASE("F and the exponential identity") {
  const Ring& R = Ring::get(3, 1, 8);
  CHECK(F_matrix(Mat(R, 2, 2), R.one()) == Mat::identity(R, 2));
  // 1 - z1 * 3 * F(3) = exp(-3 z1), with exp(-3 z1) summed by the oracle
  RingElt z1 = rho_K(R);
  Mat F = F_matrix(m1(R.from_int(3)), R.one());
  auto expect = oracle::exp_scaled({1, oracle::ipow(3, 8) - 1}, 1, 3, 1, 8, 40);
  CHECK((Mat::identity(R, 1) - F * (z1 * R.from_int(3)))(0, 0).coeffs() == expect);
  CHECK(exp_z1_matrix(m1(R.from_int(3)))(0, 0).coeffs() == expect);
  Rng rng(3);
  for (int it = 0; it < 20; ++it) {
    auto th = random_commuting_small(R, 2, 1, rng)[0];
    HiggsModule H = make_higgs({th});
    Mat A = rep_from_higgs(H).A[0];
    // exp(-c theta) = 1 - c theta F(rho_K theta)
    Mat rhs = Mat::identity(R, 2) - th * F_matrix(th, z1) * c_const(R);
    CHECK(A == rhs);
    CHECK(inverse(F_matrix(th, z1)).has_value());
  }
}

TEST_CASE("correspondence round trips") {
  Rng rng(17);
  for (auto [p, n, e] : {std::tuple{3, 1, 8}, std::tuple{5, 1, 5}, std::tuple{3, 2, 4}}) {
    const Ring& R = Ring::get(p, n, e);
    const int g = R.e() - R.guard();
    for (int d = 1; d <= 2; ++d)
      for (int rho = 1; rho <= 2; ++rho)
        for (int it = 0; it < 5; ++it) {
          HiggsModule H = make_higgs(random_commuting_small(R, rho, d, rng));
          REQUIRE(H.cert);
          GammaRep M = rep_from_higgs(H);
          M.witness.reset();
          HiggsModule H2 = higgs_from_rep(M);
          for (int i = 0; i < d; ++i) CHECK(H2.theta[static_cast<size_t>(i)].equals_mod(H.theta[static_cast<size_t>(i)], g));
          GammaRep M2{&R, rho, random_small_rep(R, rho, d, rng), std::nullopt};
          GammaRep M3 = rep_from_higgs(higgs_from_rep(M2));
          for (int i = 0; i < d; ++i) CHECK(M3.A[static_cast<size_t>(i)].equals_mod(M2.A[static_cast<size_t>(i)], g));
        }
  }
}

TEST_CASE("higgs_from_rep rejects non-small representations") {
  const Ring& R = Ring::get(3, 1, 8);
  GammaRep M{&R, 1, {m1(zeta(R, 1))}, std::nullopt};
  bool not_small = false;
  try {
    higgs_from_rep(M);
  } catch (const Error& e) {
    not_small = e.code() == Status::not_small;
  }
  CHECK(not_small);
  GammaRep I{&R, 2, {Mat::identity(R, 2)}, std::nullopt};
  CHECK(higgs_from_rep(I).theta[0].is_zero());
}

TEST_CASE("direct sums, tensor products, duals") {
  const Ring& R = Ring::get(3, 1, 8);
  const int g = R.e() - R.guard();
  Rng rng(23);
  for (int it = 0; it < 10; ++it) {
    auto a = random_commuting_small(R, 2, 2, rng), b = random_commuting_small(R, 1, 2, rng);
    HiggsModule Ha = make_higgs(a), Hb = make_higgs(b);
    auto Ma = rep_from_higgs(Ha), Mb = rep_from_higgs(Hb);
    std::vector<Mat> sum, ten, dual;
    for (int i = 0; i < 2; ++i) {
      sum.push_back(block_diag(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]));
      ten.push_back(a[static_cast<size_t>(i)].kron(Mat::identity(R, 1)) + Mat::identity(R, 2).kron(b[static_cast<size_t>(i)]));
      dual.push_back(-a[static_cast<size_t>(i)].transpose());
    }
    auto Ms = rep_from_higgs(make_higgs(sum)), Mt = rep_from_higgs(make_higgs(ten)), Md = rep_from_higgs(make_higgs(dual));
    for (int i = 0; i < 2; ++i) {
      CHECK(Ms.A[static_cast<size_t>(i)].equals_mod(block_diag(Ma.A[static_cast<size_t>(i)], Mb.A[static_cast<size_t>(i)]), g));
      CHECK(Mt.A[static_cast<size_t>(i)].equals_mod(Ma.A[static_cast<size_t>(i)].kron(Mb.A[static_cast<size_t>(i)]), g));
      CHECK((Md.A[static_cast<size_t>(i)].transpose() * Ma.A[static_cast<size_t>(i)]).equals_mod(Mat::identity(R, 2), g));
    }
  }
}

TEST_CASE("flat generators on the period algebra") {
  const Ring& R = Ring::get(3, 1, 8);
  HiggsModule H = make_higgs({m1(R.from_int(3))});
  Mat G = rep_module_on_pd(H, 12);
  for (int k = 0; k <= 12; ++k) {
    int64_t v = 1;
    for (int i = 0; i < k; ++i) v *= -3;
    CHECK(G(k, 0) == R.from_int(v));
  }
  HiggsModule Z = make_higgs({Mat(R, 2, 2), Mat(R, 2, 2)});
  Mat G0 = rep_module_on_pd(Z, 4);
  CHECK(G0.block(0, 0, 2, 2) == Mat::identity(R, 2));
  CHECK(G0.block(2, 0, G0.rows() - 2, 2).is_zero());
  // gamma_i acts on the generators through A_i
  Rng rng(5);
  const int g = R.e() - R.guard();
  for (int it = 0; it < 5; ++it) {
    HiggsModule Hr = make_higgs(random_commuting_small(R, 2, 2, rng));
    GammaRep M = rep_from_higgs(Hr);
    Mat Gr = rep_module_on_pd(Hr, 12);
    const PdBasis& B = pd_basis(2, 12);
    for (int i = 0; i < 2; ++i) {
      std::vector<int64_t> m(2, 0);
      m[static_cast<size_t>(i)] = 1;
      Mat act = pd_gamma_matrix(R, B, m).kron(Mat::identity(R, 2));
      CHECK((act * Gr).equals_mod(Gr * M.A[static_cast<size_t>(i)], g));
    }
  }
}

TEST_CASE("twist functor") {
  const Ring& R = Ring::get(3, 1, 8);
  Rng rng(8);
  HiggsModule Z = make_higgs({Mat(R, 2, 2)});
  CHECK(twist(Z, TwistDirection::twist).theta[0].is_zero());
  for (int it = 0; it < 10; ++it) {
    HiggsModule H = make_higgs(random_commuting_small(R, 2, 2, rng));
    HiggsModule T = twist(H, TwistDirection::twist);
    REQUIRE(T.cert);
    CHECK(T.cert->kind == SmallKind::small);
    HiggsModule U = twist(T, TwistDirection::untwist);
    CHECK(U.cert->kind == SmallKind::twisted_small);
    for (int i = 0; i < 2; ++i) CHECK(U.theta[static_cast<size_t>(i)] == H.theta[static_cast<size_t>(i)]);
  }
  bool nd = false;
  try {
    twist(make_higgs({m1(R.one())}), TwistDirection::untwist);
  } catch (const Error& e) {
    nd = e.code() == Status::not_divisible;
  }
  CHECK(nd);
}

TEST_CASE("Hitchin map and the small locus") {
  const Ring& R = Ring::get(3, 1, 8);
  RingElt z1 = rho_K(R);
  auto zero = make_higgs({Mat(R, 2, 2)});
  for (auto& c : hitchin(zero.theta[0])) CHECK(c.is_zero());
  CHECK(in_small_locus(zero));
  auto pos = make_higgs({m1(z1 * R.from_int(3))});
  CHECK(hitchin(pos.theta[0])[0] == z1 * R.from_int(3));
  CHECK(in_small_locus(pos));
  CHECK_FALSE(in_small_locus(make_higgs({m1(z1)})));
  // 2x2: c_1 = trace, c_2 = det
  Mat t = Mat::from_rows(R, {{R.from_int(1), R.from_int(2)}, {R.from_int(3), R.from_int(4)}});
  auto cs = hitchin(t);
  CHECK(cs[0] == R.from_int(5));
  CHECK(cs[1] == R.from_int(-2));
  Rng rng(13);
  for (int it = 0; it < 20; ++it) {
    auto th = random_commuting_small(R, 2, 2, rng);
    Mat P = random_invertible(R, 2, rng);
    Mat Pi = *inverse(P);
    for (const auto& x : th) {
      auto a = hitchin(x), b = hitchin(P * x * Pi);
      for (size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
    }
    // a small presentation lands in the locus
    HiggsModule S = twist(make_higgs(th), TwistDirection::twist);
    CHECK(in_small_locus(S));
  }
}

TEST_CASE("decompletion components") {
  const Ring& R = Ring::get(3, 1, 8);
  auto r0 = decompletion_component_check(make_higgs({Mat(R, 1, 1)}), {0, 1}, 1, 0);
  CHECK(r0.ok());
  Rng rng(31);
  for (int it = 0; it < 10; ++it) {
    HiggsModule H = make_higgs(random_commuting_small(R, 2, 2, rng));
    for (auto alpha : {std::vector<int>{0, 1, 0}, std::vector<int>{0, 2, 1}, std::vector<int>{1, 0, 2}})
      CHECK(decompletion_component_check(H, alpha, 1, 1).ok());
  }
  const Ring& R9 = Ring::get(3, 2, 5);
  HiggsModule H9 = make_higgs(random_commuting_small(R9, 2, 1, rng));
  CHECK(decompletion_component_check(H9, {0, 4}, 2, 0).ok());
}
