#include "comparison.hpp"

#include <algorithm>

#include "generate.hpp"

namespace simpson {

namespace {

Mat block_diag(const std::vector<Mat>& blocks) {
  int r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Mat out(blocks.front().ring(), r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Mat hcat(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  return Mat::hstack(a, b);
}

std::vector<Mat> minus_one(const std::vector<Mat>& A) {
  std::vector<Mat> xs;
  for (const auto& a : A) xs.push_back(a - Mat::identity(a.ring(), a.rows()));
  return xs;
}

}  // namespace

std::vector<int> pd_degrees(int d, int D, int rank) {
  const PdBasis& B = pd_basis(d, D);
  std::vector<int> out;
  for (const auto& J : B.idx)
    for (int h = 0; h < rank; ++h) out.push_back(degree(J));
  return out;
}

Mat high_degree_columns(const Ring& R, int d, int D, int rank, int q, int slack) {
  auto deg = pd_degrees(d, D, rank);
  const int m = static_cast<int>(deg.size());
  const int blocks = static_cast<int>(subsets(d, q).size());
  std::vector<int> sel;
  for (int b = 0; b < blocks; ++b)
    for (int k = 0; k < m; ++k)
      if (deg[static_cast<size_t>(k)] > D - slack) sel.push_back(b * m + k);
  Mat E(R, blocks * m, static_cast<int>(sel.size()));
  for (size_t j = 0; j < sel.size(); ++j) E(sel[j], static_cast<int>(j)) = R.one();
  return E;
}

FreeComplex group_cohomology_complex(const GammaRep& M, int D) {
  const Ring& R = *M.R;
  const PdBasis& B = pd_basis(M.d(), D);
  std::vector<Mat> xs;
  for (int i = 0; i < M.d(); ++i) {
    std::vector<int64_t> e(static_cast<size_t>(M.d()), 0);
    e[static_cast<size_t>(i)] = 1;
    Mat g = pd_gamma_matrix(R, B, e).kron(M.A[static_cast<size_t>(i)]);
    xs.push_back(g - Mat::identity(R, g.rows()));
  }
  return koszul(xs);
}

FreeComplex group_cohomology_complex(const GammaRep& M) { return koszul(minus_one(M.A)); }

GroupCohomology group_cohomology(const GammaRep& M, int D) {
  GroupCohomology out;
  out.complex = group_cohomology_complex(M, D);
  out.profile = cohomology(out.complex);
  out.h0 = kernel(out.complex.diff[0]);
  return out;
}

FreeComplex higgs_de_rham(const HiggsModule& H) { return koszul(H.theta); }

bool h0_matches_closed_form(const HiggsModule& H, int D, int slack) {
  const Ring& R = *H.R;
  const Ring& G = R.guarded();
  GammaRep M = rep_from_higgs(H);
  FreeComplex C = group_cohomology_complex(M, D);
  Mat inv = invariant_module_on_pd(H, D);
  // every exact invariant lies in the closed-form module
  Mat E = high_degree_columns(R, H.d(), D, H.rank, 0, slack);
  if (!column_span_contains(hcat(inv, E).project(G), kernel(C.diff[0]).project(G))) return false;
  // the closed-form generators are invariant below the truncation boundary
  Mat res = (C.diff[0] * inv).project(G);
  auto deg = pd_degrees(H.d(), D, H.rank);
  for (int r = 0; r < res.rows(); ++r) {
    if (deg[static_cast<size_t>(r) % deg.size()] > D - slack) continue;
    for (int c = 0; c < res.cols(); ++c)
      if (!res(r, c).is_zero()) return false;
  }
  return true;
}

int torsion_slack(int d) { return 2 * d + 1; }

bool higher_cohomology_killed(const GammaRep& M, int D, const RingElt& f, int slack) {
  FreeComplex C = group_cohomology_complex(M, D);
  for (int q = 1; q <= C.top(); ++q)
    if (!killed_by(C, q, f, high_degree_columns(*M.R, M.d(), D, M.rank, q, slack))) return false;
  return true;
}

ComparisonCocycle comparison_cocycle(const HiggsModule& H, const std::vector<Mat>& omega, int D, int slack, const Mat& flat) {
  const Ring& R = *H.R;
  const int d = H.d(), rho = H.rank;
  require(static_cast<int>(omega.size()) == d, "omega needs one component per direction");
  for (const auto& x : omega) require(x.rows() == rho && x.cols() == 1, "omega components must be rank x 1");
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!(H.theta[i] * omega[j] - H.theta[j] * omega[i]).exact().is_zero())
        fail(Status::invalid_input, "omega is not closed: theta_i(x_j) != theta_j(x_i)");
  const PdBasis& B = pd_basis(d, D);
  ComparisonCocycle out;
  out.omega = omega;
  out.m = Mat(R, B.size() * rho, 1);
  // h_0 = 0, h_{1_i} = x_i, h_{n + 1_i} = -theta_i h_n
  std::map<MultiIndex, Mat> h;
  for (int k = 0; k < B.size(); ++k) {
    const MultiIndex& J = B.idx[static_cast<size_t>(k)];
    if (degree(J) == 0) {
      h.emplace(J, Mat(R, rho, 1));
      continue;
    }
    int i = 0;
    while (J[static_cast<size_t>(i)] == 0) ++i;
    MultiIndex P = J;
    --P[static_cast<size_t>(i)];
    Mat v = degree(J) == 1 ? omega[static_cast<size_t>(i)] : -(H.theta[static_cast<size_t>(i)] * h.at(P));
    out.m.set_block(k * rho, 0, v);
    h.emplace(J, v);
  }
  const Ring& G = R.guarded();
  Mat E = high_degree_columns(R, d, D, rho, 0, slack);
  out.agree = true;
  const RingElt c = c_const(R);
  for (int i = 0; i < d; ++i) {
    std::vector<int64_t> e(static_cast<size_t>(d), 0);
    e[static_cast<size_t>(i)] = 1;
    Mat g = pd_gamma_matrix(R, B, e).kron(Mat::identity(R, rho));
    out.v_direct.push_back(g * out.m - out.m);
    Mat x = F_matrix(H.theta[static_cast<size_t>(i)], rho_K(R)) * omega[static_cast<size_t>(i)] * c;
    out.v_closed.push_back(flat * x);
    Mat diff = out.v_direct.back() - out.v_closed.back();
    if (!column_span_contains(E.project(G), diff.project(G))) out.agree = false;
  }
  return out;
}

ComparisonCocycle comparison_cocycle(const HiggsModule& H, const std::vector<Mat>& omega, int D, int slack) {
  return comparison_cocycle(H, omega, D, slack, rep_module_on_pd(H, D));
}

Mat h1_comparison_map(const HiggsModule& H) {
  const RingElt c = c_const(*H.R);
  std::vector<Mat> blocks;
  for (const auto& t : H.theta) blocks.push_back(F_matrix(t, rho_K(*H.R)) * c);
  return block_diag(blocks);
}

H1ScalingReport h1_scaling_check(const HiggsModule& H, int D, uint64_t seed, int samples) {
  const Ring& R = *H.R;
  const Ring& G = R.guarded();
  const RingElt c = c_const(R);
  GammaRep M = rep_from_higgs(H);
  FreeComplex DR = higgs_de_rham(H), K = group_cohomology_complex(M);
  Mat phi = h1_comparison_map(H);
  Mat img = phi * cocycles(DR, 1);
  Mat cz = cocycles(K, 1) * c;
  Mat b = coboundaries(K, 1);
  H1ScalingReport rep;
  rep.image_in_scaled = column_span_contains(hcat(cz, b).project(G), img.project(G));
  rep.scaled_in_image = column_span_contains(hcat(img, b).project(G), cz.project(G));
  rep.samples = samples;
  Mat Z = cocycles(DR, 1);
  Mat flat = rep_module_on_pd(H, D);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Mat w = Z * random_mat(R, Z.cols(), 1, rng);
    std::vector<Mat> omega;
    for (int i = 0; i < H.d(); ++i) omega.push_back(w.block(i * H.rank, 0, H.rank, 1));
    if (comparison_cocycle(H, omega, D, 3, flat).agree) ++rep.agreeing;
  }
  return rep;
}

FreeComplex comparison_cone(const HiggsModule& H, const GammaRep& M) {
  const Ring& R = *H.R;
  const int d = H.d(), rho = H.rank;
  FreeComplex DR = higgs_de_rham(H), K = group_cohomology_complex(M);
  std::vector<Mat> phi1;
  for (const auto& t : H.theta) phi1.push_back(F_matrix(t, rho_K(R)) * (-c_const(R)));
  std::vector<Mat> phi;
  for (int q = 0; q <= d; ++q) {
    std::vector<Mat> blocks;
    for (const auto& S : subsets(d, q)) {
      Mat m = Mat::identity(R, rho);
      for (int i : S) m = phi1[static_cast<size_t>(i)] * m;
      blocks.push_back(m);
    }
    phi.push_back(block_diag(blocks));
  }
  // cone^j = DR^j (+) K^{j-1}, j = 0..d+1; d(a, b) = (-d a, phi a + d b)
  FreeComplex C;
  C.R = &R;
  for (int j = 0; j <= d + 1; ++j) C.ranks.push_back((j <= d ? DR.ranks[j] : 0) + (j >= 1 ? K.ranks[j - 1] : 0));
  for (int j = 0; j <= d; ++j) {
    const int a0 = DR.ranks[j], a1 = j + 1 <= d ? DR.ranks[j + 1] : 0;
    Mat Dj(R, C.ranks[j + 1], C.ranks[j]);
    if (j < d) Dj.set_block(0, 0, -DR.diff[j]);
    Dj.set_block(a1, 0, phi[j]);
    if (j >= 1) Dj.set_block(a1, a0, K.diff[j - 1]);
    C.diff.push_back(Dj);
  }
  return C;
}

ConeReport cone_torsion_check(const HiggsModule& H) {
  const Ring& R = *H.R;
  const int d = H.d();
  GammaRep M = rep_from_higgs(H);
  FreeComplex C = comparison_cone(H, M);
  ConeReport rep;
  rep.bound = std::max(d + 1, 2 * (d - 1));
  rep.chain_map = C.is_complex();
  rep.profile = cohomology(C);
  for (int k = 0; k <= rep.bound && rep.minimal < 0; ++k) {
    RingElt f = c_const(R).pow(k);
    bool all = true;
    for (int q = 0; q <= C.top() && all; ++q) all = killed_by(C, q, f, Mat(R, C.ranks[q], 0));
    if (all) rep.minimal = k;
  }
  return rep;
}

TwistEtaReport twist_eta_check(const HiggsModule& H) {
  const Ring& R = *H.R;
  const RingElt f = rho_K(R);
  std::vector<Mat> scaled;
  for (const auto& t : H.theta) scaled.push_back(t * f);
  FreeComplex C = koszul(scaled), DR = koszul(H.theta);
  EtaComplex eta = decalage(C, f);
  TwistEtaReport rep;
  rep.spans_match = rep.commutes = rep.induced_matches = true;
  for (int q = 0; q <= C.top(); ++q) {
    Mat fq = Mat::scalar(R, C.ranks[q], f.pow(q));
    if (!same_column_span(eta.gens[q], fq)) rep.spans_match = false;
    if (q == C.top()) continue;
    Mat lhs = C.diff[q] * fq;
    Mat rhs = Mat::scalar(R, C.ranks[q + 1], f.pow(q + 1)) * DR.diff[q];
    if (!(lhs - rhs).exact().is_zero()) rep.commutes = false;
    if (!(eta.gens[q + 1] * eta.diff[q] - C.diff[q] * eta.gens[q]).exact().is_zero()) rep.induced_matches = false;
  }
  return rep;
}

}  // namespace simpson
