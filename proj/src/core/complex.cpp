#include "complex.hpp"

#include <algorithm>

namespace simpson {

namespace {

Mat zero_cols(const Ring& R, int rows) { return Mat(R, rows, 0); }

Mat stack_cols(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  return Mat::hstack(a, b);
}

}  // namespace

bool FreeComplex::is_complex() const {
  if (static_cast<int>(diff.size()) != top()) return false;
  for (int q = 0; q < top(); ++q) {
    if (diff[q].rows() != ranks[q + 1] || diff[q].cols() != ranks[q]) return false;
    if (q + 1 < top() && !(diff[q + 1] * diff[q]).exact().is_zero()) return false;
  }
  return true;
}

int ModuleProfile::length(int L) const {
  int s = free * L;
  for (int k : torsion) s += k;
  return s;
}

ModuleProfile subquotient_profile(const Mat& Z, const Mat& B, int t) {
  const Ring& R = Z.ring();
  const int L = R.length();
  ModuleProfile out;
  if (Z.cols() == 0 || Z.rows() == 0) return out;
  Smith s = smith(Z, true, false);
  const int r = s.rank;
  if (r == 0) return out;
  Mat Y = B.cols() ? s.U * B.exact() : zero_cols(R, Z.rows());
  Mat rel(R, r, Y.cols() + r), grel(R, r, Y.cols() + r);
  for (int i = 0; i < r; ++i) {
    int k = s.k[static_cast<size_t>(i)];
    for (int j = 0; j < Y.cols(); ++j) {
      const RingElt& y = Y(i, j);
      if (pi_valuation(y) < k) fail(Status::property_violation, "boundary not contained in the cycle module");
      RingElt w = pi_valuation(y) >= L ? R.zero() : div_pi_pow(y, k);
      rel(i, j) = w;
      grel(i, j) = w;
    }
    rel(i, Y.cols() + i) = R.pi().pow(L - k);
    grel(i, Y.cols() + i) = R.pi().pow(std::max(0, t - k));
  }
  Smith full = smith(rel, false, false);
  for (int k : full.k)
    if (k > 0) out.torsion.push_back(k);
  out.free = r - full.rank;
  Smith g = smith(grel, false, false);
  for (int k : g.k)
    if (k > 0) out.guarded.push_back(k);
  return out;
}

Mat coboundaries(const FreeComplex& C, int q) {
  if (q == 0) return zero_cols(*C.R, C.ranks[0]);
  return C.diff[static_cast<size_t>(q - 1)];
}

Mat cocycles(const FreeComplex& C, int q) {
  if (q == C.top()) return Mat::identity(*C.R, C.ranks[static_cast<size_t>(q)]);
  return kernel(C.diff[static_cast<size_t>(q)]);
}

CohomologyProfile cohomology(const FreeComplex& C) {
  CohomologyProfile out;
  out.L = C.R->length();
  out.t = C.R->degree() * (C.R->e() - C.R->guard());
  for (int q = 0; q <= C.top(); ++q) out.degrees.push_back(subquotient_profile(cocycles(C, q), coboundaries(C, q), out.t));
  return out;
}

int euler_length(const FreeComplex& C) {
  int s = 0;
  for (int q = 0; q <= C.top(); ++q) s += (q % 2 ? -1 : 1) * C.ranks[static_cast<size_t>(q)] * C.R->length();
  return s;
}

bool killed_by(const FreeComplex& C, int q, const RingElt& f, const Mat& extra) {
  const Ring& G = C.R->guarded();
  Mat Z = cocycles(C, q);
  if (Z.cols() == 0) return true;
  Mat gens = stack_cols(coboundaries(C, q), extra);
  return column_span_contains(gens.project(G), (Z * f).project(G));
}

std::vector<std::vector<int>> subsets(int d, int q) {
  std::vector<std::vector<int>> out;
  if (q < 0 || q > d) return out;
  std::vector<int> s(static_cast<size_t>(q));
  for (int i = 0; i < q; ++i) s[static_cast<size_t>(i)] = i;
  while (true) {
    out.push_back(s);
    int i = q - 1;
    while (i >= 0 && s[static_cast<size_t>(i)] == d - q + i) --i;
    if (i < 0) break;
    ++s[static_cast<size_t>(i)];
    for (int j = i + 1; j < q; ++j) s[static_cast<size_t>(j)] = s[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

FreeComplex koszul(const std::vector<Mat>& xs) {
  require(!xs.empty(), "koszul needs at least one endomorphism");
  const Ring& R = xs[0].ring();
  const int m = xs[0].rows();
  const int d = static_cast<int>(xs.size());
  for (const auto& x : xs) require(x.rows() == m && x.cols() == m, "koszul: endomorphisms must be square of equal size");
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!(xs[i] * xs[j] - xs[j] * xs[i]).exact().is_zero())
        fail(Status::non_commuting, "koszul: endomorphisms do not commute");
  FreeComplex C;
  C.R = &R;
  std::vector<std::vector<std::vector<int>>> sets;
  for (int q = 0; q <= d; ++q) {
    sets.push_back(subsets(d, q));
    C.ranks.push_back(static_cast<int>(sets.back().size()) * m);
  }
  for (int q = 0; q < d; ++q) {
    Mat D(R, C.ranks[q + 1], C.ranks[q]);
    const auto& src = sets[q];
    const auto& dst = sets[q + 1];
    for (size_t si = 0; si < src.size(); ++si) {
      const auto& S = src[si];
      for (int i = 0; i < d; ++i) {
        if (std::find(S.begin(), S.end(), i) != S.end()) continue;
        int before = static_cast<int>(std::count_if(S.begin(), S.end(), [&](int j) { return j < i; }));
        std::vector<int> T = S;
        T.insert(std::upper_bound(T.begin(), T.end(), i), i);
        size_t ti = static_cast<size_t>(std::find(dst.begin(), dst.end(), T) - dst.begin());
        Mat blk = before % 2 ? -xs[static_cast<size_t>(i)] : xs[static_cast<size_t>(i)];
        D.set_block(static_cast<int>(ti) * m, static_cast<int>(si) * m, blk);
      }
    }
    C.diff.push_back(D);
  }
  return C;
}

EtaComplex decalage(const FreeComplex& C, const RingElt& f) {
  const Ring& R = *C.R;
  require(!val(f).precision_zero, "decalage: f must be nonzero");
  const int s = pi_valuation(f);
  EtaComplex eta;
  for (int q = 0; q <= C.top(); ++q) {
    const int n = C.ranks[static_cast<size_t>(q)];
    Mat ys;
    if (q == C.top()) {
      ys = Mat::identity(R, n);
    } else {
      const Mat& d = C.diff[static_cast<size_t>(q)];
      const int m = d.rows();
      Mat sys = Mat::hstack(d * R.pi().pow(s * q), Mat::scalar(R, m, R.pi().pow(s * (q + 1))));
      Mat K = kernel(sys);
      ys = K.block(0, 0, n, K.cols());
    }
    eta.gens.push_back(ys * f.pow(q));
  }
  for (int q = 0; q < C.top(); ++q) {
    Mat img = C.diff[static_cast<size_t>(q)] * eta.gens[static_cast<size_t>(q)];
    auto x = solve(eta.gens[static_cast<size_t>(q + 1)], img);
    if (!x) fail(Status::property_violation, "decalage: differential does not preserve the eta terms");
    eta.diff.push_back(*x);
  }
  return eta;
}

CohomologyProfile eta_cohomology(const FreeComplex& C, const EtaComplex& eta) {
  CohomologyProfile out;
  out.L = C.R->length();
  out.t = C.R->degree() * (C.R->e() - C.R->guard());
  for (int q = 0; q <= C.top(); ++q) {
    const Mat& G = eta.gens[static_cast<size_t>(q)];
    Mat Z = q == C.top() ? G : G * kernel(C.diff[static_cast<size_t>(q)] * G);
    Mat B = q == 0 ? zero_cols(*C.R, C.ranks[0]) : C.diff[static_cast<size_t>(q - 1)] * eta.gens[static_cast<size_t>(q - 1)];
    out.degrees.push_back(subquotient_profile(Z, B, out.t));
  }
  return out;
}

}  // namespace simpson
