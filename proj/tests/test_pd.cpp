#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pd.hpp"

using namespace simpson;

namespace {

using P = PdPoly<RingElt>;

RingElt rnd(const Ring& R, std::mt19937_64& rng) {
  return R.from_coeffs(oracle::random_coeffs(rng, R.degree(), R.modulus()));
}

P rnd_poly(const Ring& R, int d, int D, int maxdeg, std::mt19937_64& rng) {
  P f{d, D, true, {}};
  for (const auto& J : pd_basis(d, maxdeg).idx) f.add(J, rnd(R, rng));
  return f;
}

GammaElement rnd_gamma(int d, std::mt19937_64& rng) {
  std::vector<int64_t> m(static_cast<size_t>(d));
  for (auto& v : m) v = static_cast<int64_t>(rng() % 9) - 4;
  return GammaElement::from_reduced(m, ChartParams{d, 0, 1, 0});
}

}  // namespace

TEST_CASE("pd products") {
  const Ring& R = Ring::get(3, 1, 8);
  P y1 = P::monomial(1, 12, {1}, R.one());
  CHECK(pd_mul(y1, y1) == P::monomial(1, 12, {2}, R.from_int(2)));
  CHECK(pd_mul(P::monomial(1, 12, {2}, R.one()), P::monomial(1, 12, {3}, R.one())) == P::monomial(1, 12, {5}, R.from_int(10)));
  std::mt19937_64 rng(1);
  P f = rnd_poly(R, 2, 6, 4, rng);
  CHECK(pd_mul(f, P::constant(2, 6, R.one())) == f);
  CHECK(pd_mul(f, P::constant(2, 6, R.one())).sound);
  P big = pd_mul(P::monomial(1, 4, {3}, R.one()), P::monomial(1, 4, {2}, R.one()));
  CHECK_FALSE(big.sound);
  CHECK(big.is_zero());
}

TEST_CASE("pd products agree with ordinary polynomials after scaling by factorials") {
  // over Z/p^e with p > degree, Y^[n] = Y^n / n! is an honest change of basis
  const Ring& R = Ring::get(7, 1, 3);
  std::mt19937_64 rng(2);
  int64_t q = R.modulus();
  auto fact = [](int n) {
    int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (int it = 0; it < 30; ++it) {
    int a = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 3);
    P prod = pd_mul(P::monomial(1, 6, {a}, R.one()), P::monomial(1, 6, {b}, R.one()));
    // Y^a/a! * Y^b/b! = c * Y^{a+b}/(a+b)!  =>  c = (a+b)!/(a! b!)
    int64_t c = fact(a + b) / (fact(a) * fact(b)) % q;
    CHECK(prod == P::monomial(1, 6, {a + b}, R.from_int(c)));
  }
}

TEST_CASE("Theta derivation") {
  const Ring& R = Ring::get(3, 1, 8);
  auto th = theta_derivation(P::monomial(2, 8, {0, 4}, R.one()));
  CHECK(th.twist == -1);
  CHECK(th.c[1].is_zero());
  CHECK(th.c[2] == P::monomial(2, 8, {0, 3}, R.one()));
  auto t1 = theta_derivation(P::constant(2, 8, R.one()));
  for (auto& c : t1.c) CHECK(c.is_zero());
  std::mt19937_64 rng(4);
  for (int it = 0; it < 20; ++it) {
    P f = rnd_poly(R, 2, 8, 4, rng), g = rnd_poly(R, 2, 8, 4, rng);
    P fg = pd_mul(f, g);
    REQUIRE(fg.sound);
    auto tfg = theta_derivation(fg), tf = theta_derivation(f), tg = theta_derivation(g);
    for (int i = 1; i <= 2; ++i) CHECK(tfg.c[static_cast<size_t>(i)] == pd_mul(tf.c[static_cast<size_t>(i)], g) + pd_mul(f, tg.c[static_cast<size_t>(i)]));
    // flatness: the mixed partials agree, so Theta o Theta vanishes in Lambda^2
    CHECK(pd_partial(pd_partial(f, 0), 1) == pd_partial(pd_partial(f, 1), 0));
  }
}

TEST_CASE("Gamma on pd variables") {
  const Ring& R = Ring::get(3, 1, 8);
  RingElt z = zeta(R, 1);
  for (int m = -3; m <= 3; ++m) {
    auto g = GammaElement::from_reduced({m}, ChartParams{1, 0, 1, 0});
    P img = gamma_act_pd(g, P::monomial(1, 12, {1}, R.one()));
    P expect = P::monomial(1, 12, {1}, R.one()) + P::constant(1, 12, R.from_int(-3) * z * R.from_int(m));
    CHECK(img == expect);
  }
  CHECK(gamma_act_pd(GammaElement::identity(ChartParams{1, 0, 1, 0}), P::monomial(1, 12, {5}, R.one())) ==
        P::monomial(1, 12, {5}, R.one()));
}

TEST_CASE("Gamma on pd polynomials is an action by ring automorphisms commuting with Theta") {
  const Ring& R = Ring::get(3, 1, 8);
  std::mt19937_64 rng(6);
  for (int d = 1; d <= 2; ++d)
    for (int it = 0; it < 15; ++it) {
      auto g = rnd_gamma(d, rng), h = rnd_gamma(d, rng);
      P f = rnd_poly(R, d, 10, 5, rng), k = rnd_poly(R, d, 10, 5, rng);
      CHECK(gamma_act_pd(g * h, f) == gamma_act_pd(g, gamma_act_pd(h, f)));
      CHECK(gamma_act_pd(g, pd_mul(f, k)) == pd_mul(gamma_act_pd(g, f), gamma_act_pd(g, k)));
      auto a = theta_derivation(gamma_act_pd(g, f)), b = theta_derivation(f);
      for (int i = 1; i <= d; ++i) CHECK(a.c[static_cast<size_t>(i)] == gamma_act_pd(g, b.c[static_cast<size_t>(i)]));
      // counit is a ring map
      auto cf = pd_mul(f, k).counit(), c1 = f.counit(), c2 = k.counit();
      CHECK(*cf == *c1 * *c2);
    }
}

TEST_CASE("Gamma with perfectoid coefficients") {
  const Ring& R = Ring::get(3, 1, 8);
  ChartParams ch{1, 0, 1, 1};
  auto one = SemistableElt::constant(R, ch, R.one());
  PerfElt t = PerfElt::monomial(R, ch, {0, 1}, one);
  PdPoly<PerfElt> f = PdPoly<PerfElt>::monomial(1, 6, {1}, t);
  auto g = GammaElement::generator(1, ch);
  auto img = gamma_act_pd(g, f);
  auto expect = PdPoly<PerfElt>::monomial(1, 6, {1}, t * zeta(R, 1)) + PdPoly<PerfElt>::constant(1, 6, t * (zeta(R, 1) * c_const(R)));
  CHECK(img == expect);
  CHECK(gamma_act_pd(g * g, f) == gamma_act_pd(g, gamma_act_pd(g, f)));
}

TEST_CASE("matrix forms agree with the polynomial operations") {
  const Ring& R = Ring::get(3, 1, 8);
  std::mt19937_64 rng(8);
  const PdBasis& B = pd_basis(2, 6);
  CHECK(B.size() == 28);
  CHECK(B.idx[0] == MultiIndex{0, 0});
  Mat G = pd_gamma_matrix(R, B, {2, -1});
  Mat D0 = pd_partial_matrix(R, B, pd_basis(2, 5), 0);
  auto g = GammaElement::from_reduced({2, -1}, ChartParams{2, 0, 1, 0});
  for (int it = 0; it < 10; ++it) {
    P f = rnd_poly(R, 2, 6, 6, rng);
    Mat v = pd_to_vector(R, B, f);
    CHECK(pd_from_vector(B, G * v) == gamma_act_pd(g, f));
    P df = pd_partial(f, 0);
    df.D = 5;
    CHECK(pd_from_vector(pd_basis(2, 5), D0 * v) == df);
  }
}

TEST_CASE("truncated Poincare lemma") {
  const Ring& R = Ring::get(3, 1, 8);
  auto h0 = poincare_defect(R, 1, 6, 0);
  CHECK(h0.free == 1);
  CHECK(h0.torsion.empty());
  CHECK(h0.length(R.length()) == R.length());
  auto h1 = poincare_defect(R, 1, 6, 1);
  CHECK(h1.length(R.length()) == 0);
  for (int q = 1; q <= 2; ++q) CHECK(poincare_defect(R, 2, 5, q).negligible());
  CHECK(poincare_defect(R, 2, 5, 0).free == 1);
  auto z = poincare_defect(R, 1, 0, 0);
  CHECK(z.free == 1);
  FreeComplex C = poincare_complex(R, 2, 5);
  CHECK(C.is_complex());
  CHECK(C.ranks == std::vector<int>{21, 30, 10});
}
