#include "extension.hpp"

#include <algorithm>

#include "generate.hpp"

namespace simpson {

// ---------------------------------------------------------------------------
// Faltings extension

FaltingsExtElt ext_zero(const Ring& R, const ChartParams& chart) {
  return FaltingsExtElt{PerfElt(R, chart), std::vector<PerfElt>(static_cast<size_t>(chart.d + 1), PerfElt(R, chart))};
}

FaltingsExtElt ext_y(const Ring& R, const ChartParams& chart, int j, const PerfElt& coeff) {
  FaltingsExtElt x = ext_zero(R, chart);
  x.b[static_cast<size_t>(j)] = coeff;
  return x;
}

FaltingsExtElt ext_reduce(const FaltingsExtElt& x, const ChartParams& chart) {
  LogDiff<PerfElt> v{x.b, 0};
  return FaltingsExtElt{x.a, reduce_logdiff(v, chart).c};
}

bool ext_equal(const FaltingsExtElt& x, const FaltingsExtElt& y, const ChartParams& chart) {
  FaltingsExtElt a = ext_reduce(x, chart), b = ext_reduce(y, chart);
  if (!(a.a == b.a)) return false;
  for (size_t j = 0; j < a.b.size(); ++j)
    if (!(a.b[j] == b.b[j])) return false;
  return true;
}

FaltingsExtElt ext_add(const FaltingsExtElt& x, const FaltingsExtElt& y) {
  FaltingsExtElt r = x;
  r.a += y.a;
  for (size_t j = 0; j < r.b.size(); ++j) r.b[j] += y.b[j];
  return r;
}

FaltingsExtElt ext_gamma_act(const GammaElement& g, const FaltingsExtElt& x) {
  const Ring& R = x.a.ring();
  FaltingsExtElt r{gamma_act(g, x.a), {}};
  RingElt rho = rho_K(R);
  for (size_t j = 0; j < x.b.size(); ++j) {
    PerfElt bj = gamma_act(g, x.b[j]);
    if (g.n[j] != 0) r.a += bj * (rho * R.from_int(g.n[j]));
    r.b.push_back(bj);
  }
  return r;
}

FaltingsExtElt ext_include(const PerfElt& a, int d) {
  return FaltingsExtElt{a, std::vector<PerfElt>(static_cast<size_t>(d + 1), PerfElt(a.ring(), a.chart()))};
}

LogDiff<PerfElt> ext_project(const FaltingsExtElt& x, const ChartParams& chart) {
  return reduce_logdiff(LogDiff<PerfElt>{x.b, -1}, chart);
}

namespace {

bool logdiff_equal(const LogDiff<PerfElt>& a, const LogDiff<PerfElt>& b) {
  if (a.twist != b.twist || a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!(a.c[i] == b.c[i])) return false;
  return true;
}

}  // namespace

ExtSesReport ext_ses_check(const Ring& R, const ChartParams& chart, uint64_t seed, int samples) {
  validate_chart(chart, R);
  Rng rng(seed);
  ExtSesReport rep;
  rep.samples = samples;
  auto one = PerfElt::embed(SemistableElt::constant(R, chart, R.one()));
  for (int j = 0; j <= chart.d; ++j) {
    LogDiff<PerfElt> ej{std::vector<PerfElt>(static_cast<size_t>(chart.d + 1), PerfElt(R, chart)), -1};
    ej.c[static_cast<size_t>(j)] = one;
    if (!logdiff_equal(ext_project(ext_y(R, chart, j, one), chart), reduce_logdiff(ej, chart))) rep.pr_of_y = false;
  }
  for (int it = 0; it < samples; ++it) {
    PerfElt a = random_perf(R, chart, rng, 2);
    FaltingsExtElt x = ext_zero(R, chart);
    x.a = random_perf(R, chart, rng, 2);
    for (auto& b : x.b) b = random_perf(R, chart, rng, 2);
    GammaElement g = random_gamma(chart, rng, 4), h = random_gamma(chart, rng, 4);

    FaltingsExtElt ia = ext_include(a, chart.d);
    if (!a.is_zero() && ext_equal(ia, ext_zero(R, chart), chart)) rep.injective = false;
    for (const auto& c : ext_project(ia, chart).c)
      if (!c.is_zero()) rep.pr_after_i_zero = false;

    // kill the projection by adding a multiple of the relation y_0 + ... + y_r (or y_0 when r = 0)
    FaltingsExtElt k = ext_include(a, chart.d);
    PerfElt t = random_perf(R, chart, rng, 1);
    for (int j = 0; j <= chart.r; ++j) k.b[static_cast<size_t>(j)] = t;
    for (const auto& c : ext_project(k, chart).c)
      if (!c.is_zero()) rep.kernel_is_image = false;
    if (!ext_equal(k, ia, chart)) rep.kernel_is_image = false;

    LogDiff<PerfElt> px = ext_project(x, chart), pgx = ext_project(ext_gamma_act(g, x), chart);
    for (auto& c : px.c) c = gamma_act(g, c);
    if (!logdiff_equal(px, pgx)) rep.equivariant = false;
    if (!ext_equal(ext_gamma_act(g, ia), ext_include(gamma_act(g, a), chart.d), chart)) rep.equivariant = false;

    if (!ext_equal(ext_gamma_act(g * h, x), ext_gamma_act(g, ext_gamma_act(h, x)), chart)) rep.action_law = false;
    if (!ext_equal(ext_gamma_act(g, ext_reduce(x, chart)), ext_gamma_act(g, x), chart)) rep.action_law = false;
  }
  return rep;
}

SplittingObstruction ext_splitting_obstruction(const Ring& R, const ChartParams& chart, int j) {
  validate_chart(chart, R);
  require(j >= 1 && j <= chart.d, "splitting direction out of range");
  const Ring& G = R.guarded();
  auto idx = all_perf_indices(chart, R);
  const int na = static_cast<int>(idx.size());
  const int d = chart.d;
  // (gamma_i - 1) s_alpha = -rho_K n_j(gamma_i) [alpha = 0]
  Mat A(R, d * na, na), b(R, d * na, 1);
  PerfIndex zero(static_cast<size_t>(d + 1), 0);
  for (int i = 1; i <= d; ++i) {
    GammaElement gi = GammaElement::generator(i, chart);
    for (int k = 0; k < na; ++k) {
      int row = (i - 1) * na + k;
      A(row, k) = gamma_character(gi, idx[static_cast<size_t>(k)], chart, R) - R.one();
      if (idx[static_cast<size_t>(k)] == zero && gi.n[static_cast<size_t>(j)] != 0)
        b(row, 0) = -rho_K(R) * R.from_int(gi.n[static_cast<size_t>(j)]);
    }
  }
  SplittingObstruction out;
  out.solvable = solve(A.project(G), b.project(G)).has_value();
  out.direction = j;
  out.obstruction = rho_K(R) * R.from_int(GammaElement::generator(j, chart).n[static_cast<size_t>(j)]);
  out.obstruction_val = val(out.obstruction.project(G));
  return out;
}

// ---------------------------------------------------------------------------
// Divided powers of a short exact sequence

SzData make_sz(const Mat& v, int n) {
  const Ring& R = v.ring();
  require(n >= 0, "SZ degree must be >= 0");
  Smith s = smith(v, false, true);
  for (int k : s.k) require(k == 0, "SZ: v must be surjective (split)");
  require(s.rank == v.rows(), "SZ: v must be surjective (split)");
  SzData out{&R, v, s.V.block(0, s.rank, v.cols(), v.cols() - s.rank), n};
  return out;
}

std::vector<MultiIndex> homogeneous_indices(int vars, int m) {
  std::vector<MultiIndex> out;
  if (vars == 0) {
    if (m == 0) out.push_back({});
    return out;
  }
  for (const auto& J : pd_basis(vars, m).idx)
    if (degree(J) == m) out.push_back(J);
  return out;
}

SzBasis sz_basis(int rank_f, int rank_g, int m, int i) {
  SzBasis b;
  if (m < 0 || i < 0 || i > rank_g) return b;
  b.gamma = homogeneous_indices(rank_f, m);
  b.wedge = subsets(rank_g, i);
  return b;
}

Mat sz_differential(const SzData& s, int m, int i) {
  const Ring& R = *s.R;
  SzBasis src = sz_basis(s.rank_f(), s.rank_g(), m, i);
  SzBasis dst = sz_basis(s.rank_f(), s.rank_g(), m - 1, i + 1);
  Mat D(R, dst.size(), src.size());
  if (dst.size() == 0 || src.size() == 0) return D;
  const int nw = static_cast<int>(dst.wedge.size());
  for (size_t gi = 0; gi < src.gamma.size(); ++gi)
    for (size_t wi = 0; wi < src.wedge.size(); ++wi) {
      const MultiIndex& M = src.gamma[gi];
      const auto& S = src.wedge[wi];
      int col = static_cast<int>(gi * src.wedge.size() + wi);
      for (int k = 0; k < s.rank_f(); ++k) {
        if (M[static_cast<size_t>(k)] == 0) continue;
        MultiIndex M2 = M;
        --M2[static_cast<size_t>(k)];
        auto g2 = std::find(dst.gamma.begin(), dst.gamma.end(), M2) - dst.gamma.begin();
        for (int l = 0; l < s.rank_g(); ++l) {
          if (std::find(S.begin(), S.end(), l) != S.end()) continue;
          int before = static_cast<int>(std::count_if(S.begin(), S.end(), [&](int x) { return x < l; }));
          std::vector<int> T = S;
          T.insert(std::upper_bound(T.begin(), T.end(), l), l);
          auto w2 = std::find(dst.wedge.begin(), dst.wedge.end(), T) - dst.wedge.begin();
          RingElt c = s.v(l, k);
          D(static_cast<int>(g2) * nw + static_cast<int>(w2), col) += before % 2 ? -c : c;
        }
      }
    }
  return D;
}

Mat sz_gamma_u(const SzData& s) {
  const Ring& R = *s.R;
  const int n = s.n, f = s.rank_f();
  auto src = homogeneous_indices(s.rank_e(), n);
  auto dst = homogeneous_indices(f, n);
  Mat U(R, static_cast<int>(dst.size()), static_cast<int>(src.size()));
  using P = PdPoly<RingElt>;
  for (size_t c = 0; c < src.size(); ++c) {
    P acc = P::constant(f, n, R.one());
    for (int a = 0; a < s.rank_e(); ++a) {
      int m = src[c][static_cast<size_t>(a)];
      // (sum_k u_ka f_k)^[m] = sum_{|K| = m} u^K f^[K]
      P pw{f, n, true, {}};
      for (const auto& K : homogeneous_indices(f, m)) {
        RingElt coef = R.one();
        for (int k = 0; k < f; ++k) coef = coef * s.u(k, a).pow(K[static_cast<size_t>(k)]);
        pw.add(K, coef);
      }
      acc = pd_mul(acc, pw);
    }
    for (const auto& [K, v] : acc.terms) {
      auto r = std::find(dst.begin(), dst.end(), K) - dst.begin();
      U(static_cast<int>(r), static_cast<int>(c)) = v;
    }
  }
  return U;
}

FreeComplex sz_complex(const SzData& s) {
  FreeComplex C;
  C.R = s.R;
  C.ranks.push_back(static_cast<int>(homogeneous_indices(s.rank_e(), s.n).size()));
  for (int i = 0; i <= s.n; ++i) C.ranks.push_back(sz_basis(s.rank_f(), s.rank_g(), s.n - i, i).size());
  C.diff.push_back(sz_gamma_u(s));
  for (int i = 0; i < s.n; ++i) C.diff.push_back(sz_differential(s, s.n - i, i));
  return C;
}

SzReport sz_exactness_check(const SzData& s) {
  SzReport rep;
  FreeComplex C = sz_complex(s);
  rep.ranks = C.ranks;
  rep.squares_to_zero = C.is_complex();
  auto prof = cohomology(C);
  rep.exact = true;
  for (const auto& d : prof.degrees)
    if (!d.negligible()) rep.exact = false;
  return rep;
}

// ---------------------------------------------------------------------------
// The period algebra from Gamma(E+)

PdPoly<RingElt> period_map(const PdPoly<RingElt>& x) {
  PdPoly<RingElt> out{x.d - 1, x.D, x.sound, {}};
  for (const auto& [J, c] : x.terms) {
    MultiIndex K(J.begin() + 1, J.end());
    out.add(K, c * pd_power_zeta(c.ring(), J[0]));
  }
  return out;
}

PdPoly<RingElt> ext_pd_gamma(const GammaElement& g, const PdPoly<RingElt>& x) {
  using P = PdPoly<RingElt>;
  const int d = x.d - 1;
  std::vector<int64_t> m = g.reduced();
  require(static_cast<int>(m.size()) == d, "ext_pd_gamma: Gamma element rank mismatch");
  P out{x.d, x.D, x.sound, {}};
  for (const auto& [J, c] : x.terms) {
    const Ring& R = c.ring();
    MultiIndex E0(static_cast<size_t>(x.d), 0);
    E0[0] = J[0];
    P acc = P::monomial(x.d, x.D, E0, c);
    for (int j = 1; j <= d; ++j) {
      // (y_j + rho_K m_j e)^[n] = sum_k y_j^[k] (rho_K m_j)^{n-k} e^[n-k]
      RingElt s = rho_K(R) * R.from_int(m[static_cast<size_t>(j - 1)]);
      P f{x.d, x.D, true, {}};
      int n = J[static_cast<size_t>(j)];
      for (int k = 0; k <= n; ++k) {
        MultiIndex K(static_cast<size_t>(x.d), 0);
        K[static_cast<size_t>(j)] = k;
        K[0] = n - k;
        f.add(K, s.pow(n - k));
      }
      acc = pd_mul(acc, f);
    }
    out = out + acc;
  }
  return out;
}

Mat period_map_matrix(const Ring& R, int d, int D) {
  const PdBasis& src = pd_basis(d + 1, D);
  const PdBasis& dst = pd_basis(d, D);
  Mat M(R, dst.size(), src.size());
  for (int c = 0; c < src.size(); ++c) {
    const MultiIndex& J = src.idx[static_cast<size_t>(c)];
    M(dst.index(MultiIndex(J.begin() + 1, J.end())), c) = pd_power_zeta(R, J[0]);
  }
  return M;
}

Mat pd_ideal_generators(const Ring& R, int d, int D) {
  const PdBasis& src = pd_basis(d + 1, D);
  std::vector<Mat> cols;
  for (const auto& J : src.idx) {
    int k = J[0];
    if (k == 0) continue;
    Mat v(R, src.size(), 1);
    // (e - z1)^[k] = sum_i e^[i] (-z1)^[k-i]
    for (int i = 0; i <= k; ++i) {
      MultiIndex K = J;
      K[0] = i;
      RingElt c = pd_power_zeta(R, k - i);
      v(src.index(K), 0) = (k - i) % 2 ? -c : c;
    }
    cols.push_back(v);
  }
  Mat G(R, src.size(), static_cast<int>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) G.set_block(0, static_cast<int>(i), cols[i]);
  return G;
}

PeriodAlgebraReport derive_period_algebra(const Ring& R, int d, int D, uint64_t seed, int samples) {
  using P = PdPoly<RingElt>;
  PeriodAlgebraReport rep;
  MultiIndex e1(static_cast<size_t>(d + 1), 0);
  e1[0] = 1;
  rep.e_maps_to_z1 = period_map(P::monomial(d + 1, D, e1, R.one())) == P::constant(d, D, rho_K(R));
  Mat Phi = period_map_matrix(R, d, D);
  Mat I = pd_ideal_generators(R, d, D);
  rep.dim_source = Phi.cols();
  rep.dim_target = Phi.rows();
  rep.dim_ideal = I.cols();
  rep.dims_match = rep.dim_source - rep.dim_ideal == rep.dim_target;
  rep.kernel_is_ideal = same_column_span(kernel(Phi), I);
  Rng rng(seed);
  rep.ring_map = rep.gamma_transport = rep.theta_transport = true;
  ChartParams point{d, 0, 1, 0};
  auto rnd = [&](int maxdeg) {
    P f{d + 1, D, true, {}};
    for (const auto& J : pd_basis(d + 1, maxdeg).idx) f.add(J, random_elt(R, rng));
    return f;
  };
  for (int it = 0; it < samples; ++it) {
    P x = rnd(D / 2), y = rnd(D - D / 2);
    if (!(period_map(pd_mul(x, y)) == pd_mul(period_map(x), period_map(y)))) rep.ring_map = false;
    GammaElement g = random_gamma(point, rng, 4);
    P z = rnd(D);
    if (!(period_map(ext_pd_gamma(g, z)) == gamma_act_pd(g, period_map(z)))) rep.gamma_transport = false;
    for (int i = 0; i < d; ++i)
      if (!(period_map(pd_partial(z, i + 1)) == pd_partial(period_map(z), i))) rep.theta_transport = false;
  }
  return rep;
}

}  // namespace simpson
