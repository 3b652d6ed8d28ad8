#include "higgs.hpp"

#include <sstream>

namespace simpson {

namespace {

RingElt z1(const Ring& R) { return rho_K(R); }

// z1^m / (m+1)!, the coefficients of F
RingElt f_coeff(const Ring& R, int m) {
  const Ring& up = R.with_precision(R.e() + 1);
  RingElt q = exact_div(pd_power_zeta(up, m + 1), z1(up));
  return q.project(R);
}

// c^{n-1} / n, the coefficients of log(1 + cX) / c
RingElt log_coeff(const Ring& R, int n) {
  return exact_constant(R, [](const Ring& L) { return c_const(L); }, n - 1, n);
}

Mat entrywise_div(const Mat& A, const RingElt& y) {
  Mat Q(A.ring(), A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) Q(i, j) = exact_div(A(i, j), y);
  return Q;
}

int power_bound(const Mat& X) { return X.rows() * (X.ring().length() + 2) + 2; }

// sum_k coeff(k) X^k until X^k vanishes mod p^e
Mat power_series(const Mat& X, const std::function<RingElt(int)>& coeff, int start) {
  const Ring& R = X.ring();
  const int n = X.rows();
  Mat sum(R, n, n);
  Mat pw = Mat::identity(R, n);
  for (int k = 0; k < start; ++k) pw = pw * X;
  const int bound = power_bound(X);
  for (int k = start;; ++k) {
    if (pw.exact().is_zero()) return sum;
    if (k > bound) fail(Status::precision_exhausted, "series did not truncate below the precision floor");
    sum += pw * coeff(k);
    pw = pw * X;
  }
}

}  // namespace

void require_commuting(const std::vector<Mat>& xs) {
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (!(xs[i] * xs[j] - xs[j] * xs[i]).is_zero()) fail(Status::non_commuting, "matrices do not commute");
}

HiggsModule make_higgs(const std::vector<Mat>& theta) {
  require(!theta.empty(), "Higgs module needs at least one theta");
  const int n = theta[0].rows();
  for (const auto& t : theta) require(t.rows() == n && t.cols() == n, "theta matrices must be square of equal size");
  require_commuting(theta);
  HiggsModule H{&theta[0].ring(), n, theta, -1, std::nullopt};
  auto chk = is_top_nilpotent(theta);
  if (chk.accepted) H.cert = chk.cert;
  return H;
}

NilpotenceCheck is_top_nilpotent(const std::vector<Mat>& theta) {
  NilpotenceCheck out;
  out.accepted = true;
  for (size_t i = 0; i < theta.size(); ++i) {
    std::vector<Valuation> vals;
    auto cs = charpoly(theta[i]);
    for (size_t k = 0; k < cs.size(); ++k) {
      Valuation v = val(cs[k]);
      vals.push_back(v);
      if (!v.precision_zero && v.k == 0 && out.accepted) {
        out.accepted = false;
        std::ostringstream os;
        os << "theta_" << i + 1 << ": characteristic coefficient c_" << k + 1 << " = " << cs[k].str() << " is a unit";
        out.reason = os.str();
      }
    }
    out.cert.charpoly_vals.push_back(vals);
  }
  return out;
}

bool power_nilpotent(const Mat& X, int N) {
  Mat pw = X.pow(N);
  for (int i = 0; i < pw.rows(); ++i)
    for (int j = 0; j < pw.cols(); ++j)
      if (pi_valuation(pw(i, j)) < 1 && !pw(i, j).is_zero()) return false;
  return true;
}

Mat F_matrix(const Mat& theta, const RingElt& scale) {
  const Ring& R = theta.ring();
  Mat X = theta * scale;
  return power_series(X, [&](int m) { return m % 2 ? -f_coeff(R, m) : f_coeff(R, m); }, 0);
}

Mat exp_z1_matrix(const Mat& X) {
  const Ring& R = X.ring();
  return power_series(X, [&](int n) { return n % 2 ? -pd_power_zeta(R, n) : pd_power_zeta(R, n); }, 0);
}

GammaRep rep_from_higgs(const HiggsModule& H) {
  require(H.cert.has_value(), "rep_from_higgs needs a twisted-small Higgs module");
  const Ring& R = *H.R;
  GammaRep M{&R, H.rank, {}, H.theta};
  // (-c)^n/n! has valuation >= (n+1)/(p-1), so n <= e(p-1) suffices
  const int top = R.e() * (R.p() - 1) + 1;
  for (const auto& th : H.theta) {
    Mat A = Mat::identity(R, H.rank);
    Mat pw = Mat::identity(R, H.rank);
    for (int n = 1; n <= top; ++n) {
      pw = pw * th;
      RingElt k = c_pd_power(R, n);
      A += pw * (n % 2 ? -k : k);
    }
    M.A.push_back(A);
  }
  return M;
}

HiggsModule higgs_from_rep(const GammaRep& M, bool prefer_witness) {
  const Ring& R = *M.R;
  require_commuting(M.A);
  RingElt c = c_const(R);
  std::vector<Mat> theta;
  for (const auto& A : M.A) {
    Mat X;
    try {
      X = entrywise_div(A - Mat::identity(R, M.rank), c);
    } catch (const Error& e) {
      if (e.code() == Status::not_divisible) fail(Status::not_small, "gamma_i is not congruent to 1 modulo rho_K (zeta_p - 1)");
      throw;
    }
    if (!is_top_nilpotent({X}).accepted) fail(Status::not_small, "(gamma_i - 1) / (rho_K (zeta_p - 1)) is not topologically nilpotent");
    // theta = -log(1 + cX)/c = -sum (-1)^{n+1} c^{n-1}/n X^n
    Mat th = power_series(X, [&](int n) { return n % 2 ? -log_coeff(R, n) : log_coeff(R, n); }, 1);
    theta.push_back(th);
  }
  HiggsModule H = make_higgs(theta);
  if (!H.cert) fail(Status::not_small, "recovered Higgs field is not topologically nilpotent");
  if (prefer_witness && M.witness) {
    const int g = R.e() - R.guard();
    for (size_t i = 0; i < theta.size(); ++i)
      if (!theta[i].equals_mod((*M.witness)[i], g)) fail(Status::property_violation, "stored witness disagrees with the logarithm");
    return make_higgs(*M.witness);
  }
  return H;
}

namespace {

// sum_J s^{|J|} theta^J h Y^[J] with theta^J = prod theta_i^{J_i}
Mat exp_module(const HiggsModule& H, int D, int sign) {
  const Ring& R = *H.R;
  const PdBasis& B = pd_basis(H.d(), D);
  const int rho = H.rank;
  Mat G(R, B.size() * rho, rho);
  std::map<MultiIndex, Mat> pw;
  for (int k = 0; k < B.size(); ++k) {
    const MultiIndex& J = B.idx[static_cast<size_t>(k)];
    Mat T = Mat::identity(R, rho);
    if (degree(J) > 0) {
      // extend from a predecessor J - E_i (already computed: lower degree)
      int i = 0;
      while (J[static_cast<size_t>(i)] == 0) ++i;
      MultiIndex P = J;
      --P[static_cast<size_t>(i)];
      T = H.theta[static_cast<size_t>(i)] * pw.at(P);
    }
    pw.emplace(J, T);
    Mat S = (sign < 0 && degree(J) % 2) ? -T : T;
    G.set_block(k * rho, 0, S);
  }
  return G;
}

}  // namespace

Mat rep_module_on_pd(const HiggsModule& H, int D) {
  require(H.cert.has_value(), "rep_module_on_pd needs a twisted-small Higgs module");
  Mat G = exp_module(H, D, -1);
  const Ring& R = *H.R;
  const PdBasis& B = pd_basis(H.d(), D);
  const int rho = H.rank;
  const int g = R.e() - R.guard();
  // Theta_H-flatness up to the degree-D boundary
  for (int i = 0; i < H.d(); ++i) {
    Mat th = Mat::identity(R, B.size()).kron(H.theta[static_cast<size_t>(i)]);
    Mat dp = pd_partial_matrix(R, B, B, i).kron(Mat::identity(R, rho));
    Mat res = (th + dp) * G;
    if (!res.is_zero_mod(g)) fail(Status::precision_exhausted, "degree-D boundary terms of the flat generators exceed the guard");
  }
  return G;
}

Mat invariant_module_on_pd(const HiggsModule& H, int D) { return exp_module(H, D, +1); }

HiggsModule twist(const HiggsModule& H, TwistDirection dir) {
  const Ring& R = *H.R;
  std::vector<Mat> th;
  for (const auto& t : H.theta) {
    if (dir == TwistDirection::twist) {
      th.push_back(t * z1(R));
    } else {
      th.push_back(entrywise_div(t, z1(R)));
    }
  }
  HiggsModule out = make_higgs(th);
  out.twist = H.twist;
  if (dir == TwistDirection::twist && H.cert && out.cert) out.cert->kind = SmallKind::small;
  if (dir == TwistDirection::untwist && out.cert) out.cert->kind = SmallKind::twisted_small;
  return out;
}

std::vector<RingElt> hitchin(const Mat& theta) {
  auto cs = charpoly(theta);
  for (size_t k = 0; k < cs.size(); ++k)
    if (k % 2 == 0) cs[k] = -cs[k];
  return cs;
}

bool in_small_locus(const HiggsModule& H) {
  const Ring& R = *H.R;
  const int vz = pi_valuation(z1(R));
  for (const auto& t : H.theta) {
    auto cs = hitchin(t);
    for (size_t k = 0; k < cs.size(); ++k) {
      if (cs[k].is_zero()) continue;
      if (pi_valuation(cs[k]) < static_cast<int>(k + 1) * vz + 1) return false;
    }
  }
  return true;
}

DecompletionReport decompletion_component_check(const HiggsModule& H, const std::vector<int>& alpha, int level, int r) {
  const Ring& R = *H.R;
  const int d = H.d();
  require(static_cast<int>(alpha.size()) == d + 1, "alpha must have d + 1 entries");
  require(level >= 1 && level <= R.n(), "alpha level out of range");
  int64_t den = 1;
  for (int i = 0; i < level; ++i) den *= R.p();
  std::vector<int64_t> beta(static_cast<size_t>(d));
  for (int i = 1; i <= d; ++i) {
    int64_t b = i <= r ? alpha[static_cast<size_t>(i)] - alpha[0] : alpha[static_cast<size_t>(i)];
    beta[static_cast<size_t>(i - 1)] = ((b % den) + den) % den;
  }
  DecompletionReport rep;
  int dir = -1;
  for (int i = 0; i < d; ++i)
    if (beta[static_cast<size_t>(i)] != 0) {
      dir = i;
      break;
    }
  require(dir >= 0, "alpha = 0 component has no decompletion defect");
  rep.direction = dir + 1;
  GammaRep M = rep_from_higgs(H);
  const int g = R.e() - R.guard();
  RingElt zb = zeta_alpha(R, beta[static_cast<size_t>(dir)], level);
  RingElt ratio = exact_div(z1(R), zb - R.one());
  Mat X = H.theta[static_cast<size_t>(dir)] * z1(R);
  Mat XF = X * F_matrix(H.theta[static_cast<size_t>(dir)], z1(R));
  Mat U = Mat::identity(R, H.rank) - XF * (zb * ratio);
  Mat lhs = M.A[static_cast<size_t>(dir)] * zb - Mat::identity(R, H.rank);
  rep.identity_holds = lhs.equals_mod(U * (zb - R.one()), g);
  rep.unit_invertible = inverse(U).has_value();
  Mat dev = U - Mat::identity(R, H.rank);
  rep.u_congruent_one = true;
  for (int i = 0; i < dev.rows(); ++i)
    for (int j = 0; j < dev.cols(); ++j)
      if (!dev(i, j).is_zero() && pi_valuation(dev(i, j)) < 1) rep.u_congruent_one = false;
  std::vector<Mat> maps;
  for (int i = 0; i < d; ++i)
    maps.push_back(M.A[static_cast<size_t>(i)] * zeta_alpha(R, beta[static_cast<size_t>(i)], level) - Mat::identity(R, H.rank));
  FreeComplex K = koszul(maps);
  auto prof = cohomology(K);
  rep.h0_vanishes = prof.degrees[0].negligible();
  rep.cokernel_killed = true;
  for (int q = 0; q <= K.top(); ++q)
    if (!killed_by(K, q, z1(R), Mat(R, K.ranks[static_cast<size_t>(q)], 0))) rep.cokernel_killed = false;
  return rep;
}

}  // namespace simpson
