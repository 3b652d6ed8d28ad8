#include "matrix.hpp"

#include <algorithm>

namespace simpson {

namespace {

bool raw_zero(const RingElt& x) {
  const int N = x.ring().degree();
  for (int i = 0; i < N; ++i)
    if (x[i] != 0) return false;
  return true;
}

// x - f*y in place, floors ignored
void axpy_neg(RingElt& x, const RingElt& f, const RingElt& y) {
  if (raw_zero(y)) return;
  x -= f * y;
}

}  // namespace

Mat::Mat(const Ring& R, int rows, int cols) : R_(&R), rows_(rows), cols_(cols) {
  a_.assign(static_cast<size_t>(rows) * cols, R.zero());
}

Mat Mat::identity(const Ring& R, int n) { return scalar(R, n, R.one()); }

Mat Mat::scalar(const Ring& R, int n, const RingElt& s) {
  Mat m(R, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Mat Mat::from_rows(const Ring& R, const std::vector<std::vector<RingElt>>& rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows[0].size()) : 0;
  Mat m(R, nr, nc);
  for (int i = 0; i < nr; ++i) {
    require(static_cast<int>(rows[i].size()) == nc, "ragged matrix rows");
    for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  require(cols_ == o.rows_, "matrix product dimension mismatch");
  Mat r(*R_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const RingElt& a = (*this)(i, k);
      if (raw_zero(a)) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const RingElt& b = o(k, j);
        if (raw_zero(b)) continue;
        r(i, j) += a * b;
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r = *this;
  r += o;
  return r;
}

Mat& Mat::operator+=(const Mat& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat Mat::operator-(const Mat& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

Mat Mat::operator*(const RingElt& s) const {
  Mat r = *this;
  for (auto& x : r.a_) x = x * s;
  return r;
}

Mat operator*(const RingElt& s, const Mat& m) { return m * s; }

Mat Mat::transpose() const {
  Mat r(*R_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::kron(const Mat& o) const {
  Mat r(*R_, rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const RingElt& a = (*this)(i, j);
      if (raw_zero(a)) continue;
      for (int k = 0; k < o.rows_; ++k)
        for (int l = 0; l < o.cols_; ++l) r(i * o.rows_ + k, j * o.cols_ + l) = a * o(k, l);
    }
  return r;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat r(*R_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

void Mat::set_block(int r0, int c0, const Mat& b) {
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::col(int j) const { return block(0, j, rows_, 1); }
Mat Mat::row(int i) const { return block(i, 0, 1, cols_); }

Mat Mat::select_cols(const std::vector<int>& idx) const {
  Mat r(*R_, rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r(i, static_cast<int>(j)) = (*this)(i, idx[j]);
  return r;
}

Mat Mat::select_rows(const std::vector<int>& idx) const {
  Mat r(*R_, static_cast<int>(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) r(static_cast<int>(i), j) = (*this)(idx[i], j);
  return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  if (a.cols_ == 0 && a.rows_ == 0) return b;
  require(a.rows_ == b.rows_, "hstack row mismatch");
  Mat r(*a.R_, a.rows_, a.cols_ + b.cols_);
  r.set_block(0, 0, a);
  r.set_block(0, a.cols_, b);
  return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  if (a.cols_ == 0 && a.rows_ == 0) return b;
  require(a.cols_ == b.cols_, "vstack column mismatch");
  Mat r(*a.R_, a.rows_ + b.rows_, a.cols_);
  r.set_block(0, 0, a);
  r.set_block(a.rows_, 0, b);
  return r;
}

Mat Mat::pow(int k) const {
  Mat r = identity(*R_, rows_), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

Mat Mat::project(const Ring& target) const {
  Mat r(target, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].project(target);
  return r;
}

Mat Mat::lift(const Ring& target) const {
  Mat r(target, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].lift(target);
  return r;
}

Mat Mat::exact() const {
  Mat r = *this;
  for (auto& x : r.a_) x.set_floor(R_->e());
  return r;
}

int Mat::min_floor() const {
  int f = R_ ? R_->e() : 0;
  for (const auto& x : a_) f = std::min(f, x.floor());
  return f;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_zero_mod(int e2) const {
  for (const auto& x : a_)
    if (!x.is_zero_mod(e2)) return false;
  return true;
}

bool Mat::equals_mod(const Mat& o, int e2) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i) {
    RingElt d = a_[i] - o.a_[i];
    if (!d.is_zero_mod(e2)) return false;
  }
  return true;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

int Mat::min_pi_valuation() const {
  int best = R_->length();
  for (const auto& x : a_) {
    if (raw_zero(x)) continue;
    best = std::min(best, pi_valuation(x));
    if (best == 0) break;
  }
  return best;
}

// ---------------------------------------------------------------------------

Smith smith(const Mat& A0, bool want_U, bool want_V) {
  const Ring& R = A0.ring();
  const int L = R.length();
  Mat A = A0.exact();
  const int m = A.rows(), n = A.cols();
  Smith s;
  if (want_U) s.U = Mat::identity(R, m);
  if (want_V) {
    s.V = Mat::identity(R, n);
    s.Vinv = Mat::identity(R, n);
  }
  for (int t = 0; t < std::min(m, n); ++t) {
    int bi = -1, bj = -1, bw = L;
    for (int i = t; i < m && bw > 0; ++i)
      for (int j = t; j < n; ++j) {
        const RingElt& x = A(i, j);
        if (raw_zero(x)) continue;
        int w = x.is_unit() ? 0 : pi_valuation(x);
        if (w < bw) {
          bw = w;
          bi = i;
          bj = j;
          if (w == 0) break;
        }
      }
    if (bi < 0) break;
    if (bi != t) {
      for (int j = 0; j < n; ++j) std::swap(A(t, j), A(bi, j));
      if (want_U)
        for (int j = 0; j < m; ++j) std::swap(s.U(t, j), s.U(bi, j));
    }
    if (bj != t) {
      for (int i = 0; i < m; ++i) std::swap(A(i, t), A(i, bj));
      if (want_V) {
        for (int i = 0; i < n; ++i) std::swap(s.V(i, t), s.V(i, bj));
        for (int j = 0; j < n; ++j) std::swap(s.Vinv(t, j), s.Vinv(bj, j));
      }
    }
    // normalise the pivot to pi^bw
    RingElt u = split_unit(A(t, t)).second;
    RingElt uinv = unit_inverse(u);
    for (int j = t; j < n; ++j) A(t, j) = A(t, j) * uinv;
    if (want_U)
      for (int j = 0; j < m; ++j) s.U(t, j) = s.U(t, j) * uinv;
    // clear column t below the pivot
    for (int i = t + 1; i < m; ++i) {
      if (raw_zero(A(i, t))) continue;
      RingElt f = div_pi_pow(A(i, t), bw);
      for (int j = t; j < n; ++j) axpy_neg(A(i, j), f, A(t, j));
      if (want_U)
        for (int j = 0; j < m; ++j) axpy_neg(s.U(i, j), f, s.U(t, j));
    }
    // clear row t right of the pivot
    for (int j = t + 1; j < n; ++j) {
      if (raw_zero(A(t, j))) continue;
      RingElt f = div_pi_pow(A(t, j), bw);
      A(t, j) = R.zero();
      if (want_V) {
        for (int i = 0; i < n; ++i) axpy_neg(s.V(i, j), f, s.V(i, t));
        for (int l = 0; l < n; ++l) s.Vinv(t, l) += f * s.Vinv(j, l);
      }
    }
    s.k.push_back(bw);
    s.rank = t + 1;
  }
  return s;
}


RingElt canonical_residue(const RingElt& x, int k) {
  const Ring& R = x.ring();
  RingElt rem = R.zero(), y = x, pil = R.one();
  RingElt pi = R.pi();
  for (int l = 0; l < k; ++l) {
    if (raw_zero(y)) break;
    int64_t d = y.at_one() % R.p();
    if (d != 0) {
      rem += pil * d;
      y -= R.from_int(d);
    }
    y = div_pi(y);
    pil *= pi;
  }
  return rem;
}

Howell howell(const Mat& A0, bool want_transform) {
  const Ring& R = A0.ring();
  const int L = R.length();
  const int n = A0.cols();
  std::vector<Mat> rows, trans;
  for (int i = 0; i < A0.rows(); ++i) {
    rows.push_back(A0.row(i).exact());
    if (want_transform) {
      Mat t(R, 1, A0.rows());
      t(0, i) = R.one();
      trans.push_back(t);
    }
  }
  Howell h;
  std::vector<Mat> out, out_t;
  size_t r = 0;
  for (int j = 0; j < n; ++j) {
    int best = -1, bw = L;
    for (size_t i = r; i < rows.size(); ++i) {
      const RingElt& x = rows[i](0, j);
      if (raw_zero(x)) continue;
      int w = x.is_unit() ? 0 : pi_valuation(x);
      if (w < bw) {
        bw = w;
        best = static_cast<int>(i);
        if (w == 0) break;
      }
    }
    if (best < 0) continue;
    std::swap(rows[r], rows[static_cast<size_t>(best)]);
    if (want_transform) std::swap(trans[r], trans[static_cast<size_t>(best)]);
    RingElt uinv = unit_inverse(split_unit(rows[r](0, j)).second);
    rows[r] = rows[r] * uinv;
    if (want_transform) trans[r] = trans[r] * uinv;
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (raw_zero(rows[i](0, j))) continue;
      RingElt f = div_pi_pow(rows[i](0, j), bw);
      for (int c = j; c < n; ++c) axpy_neg(rows[i](0, c), f, rows[r](0, c));
      if (want_transform)
        for (int c = 0; c < trans[i].cols(); ++c) axpy_neg(trans[i](0, c), f, trans[r](0, c));
    }
    if (bw > 0) {
      // annihilator multiple keeps the span closed under the Howell property
      RingElt a = R.pi().pow(L - bw);
      Mat extra = rows[r] * a;
      bool nz = false;
      for (int c = j + 1; c < n; ++c) nz = nz || !raw_zero(extra(0, c));
      if (nz) {
        rows.push_back(extra);
        if (want_transform) trans.push_back(trans[r] * a);
      }
    }
    h.pivot_col.push_back(j);
    h.pivot_exp.push_back(bw);
    ++r;
  }
  rows.resize(r);
  if (want_transform) trans.resize(r);
  // reduce entries above each pivot to canonical residues
  for (size_t i = 0; i < r; ++i) {
    int j = h.pivot_col[i], k = h.pivot_exp[i];
    for (size_t u = 0; u < i; ++u) {
      RingElt x = rows[u](0, j);
      if (raw_zero(x)) continue;
      RingElt rem = canonical_residue(x, k);
      RingElt f = div_pi_pow(x - rem, k);
      for (int c = j; c < n; ++c) axpy_neg(rows[u](0, c), f, rows[i](0, c));
      if (want_transform)
        for (int c = 0; c < trans[u].cols(); ++c) axpy_neg(trans[u](0, c), f, trans[i](0, c));
    }
  }
  h.H = Mat(R, static_cast<int>(r), n);
  for (size_t i = 0; i < r; ++i) h.H.set_block(static_cast<int>(i), 0, rows[i]);
  if (want_transform) {
    h.T = Mat(R, static_cast<int>(r), A0.rows());
    for (size_t i = 0; i < r; ++i) h.T.set_block(static_cast<int>(i), 0, trans[i]);
  }
  return h;
}

Mat howell_reduce(const Howell& h, const Mat& row0) {
  Mat row = row0.exact();
  const int n = row.cols();
  size_t pi_idx = 0;
  for (int j = 0; j < n; ++j) {
    while (pi_idx < h.pivot_col.size() && h.pivot_col[pi_idx] < j) ++pi_idx;
    if (raw_zero(row(0, j))) continue;
    if (pi_idx >= h.pivot_col.size() || h.pivot_col[pi_idx] != j) return row;
    int k = h.pivot_exp[pi_idx];
    if (pi_valuation(row(0, j)) < k) return row;
    RingElt f = div_pi_pow(row(0, j), k);
    for (int c = j; c < n; ++c) axpy_neg(row(0, c), f, h.H(static_cast<int>(pi_idx), c));
  }
  return row;
}

bool howell_contains(const Howell& h, const Mat& row) {
  Mat r = howell_reduce(h, row);
  for (int j = 0; j < r.cols(); ++j)
    if (!raw_zero(r(0, j))) return false;
  return true;
}

Mat kernel(const Mat& A) {
  const Ring& R = A.ring();
  const int L = R.length();
  Smith s = smith(A, false, true);
  std::vector<Mat> gens;
  for (int i = 0; i < A.cols(); ++i) {
    if (i < s.rank) {
      if (s.k[static_cast<size_t>(i)] == 0) continue;
      gens.push_back(s.V.col(i) * R.pi().pow(L - s.k[static_cast<size_t>(i)]));
    } else {
      gens.push_back(s.V.col(i));
    }
  }
  Mat K(R, A.cols(), static_cast<int>(gens.size()));
  for (size_t j = 0; j < gens.size(); ++j) K.set_block(0, static_cast<int>(j), gens[j]);
  return K;
}

std::optional<Mat> solve(const Mat& A, const Mat& B) {
  const Ring& R = A.ring();
  require(A.rows() == B.rows(), "solve: row mismatch");
  Smith s = smith(A, true, true);
  Mat C = s.U * B.exact();
  Mat Y(R, A.cols(), B.cols());
  for (int c = 0; c < B.cols(); ++c) {
    for (int i = 0; i < A.rows(); ++i) {
      const RingElt& x = C(i, c);
      if (i < s.rank) {
        int k = s.k[static_cast<size_t>(i)];
        if (raw_zero(x)) continue;
        if (pi_valuation(x) < k) return std::nullopt;
        Y(i, c) = div_pi_pow(x, k);
      } else if (!raw_zero(x)) {
        return std::nullopt;
      }
    }
  }
  return s.V * Y;
}

bool column_span_contains(const Mat& gens, const Mat& vectors) {
  if (vectors.cols() == 0) return true;
  if (gens.cols() == 0) return vectors.exact().is_zero();
  Howell h = howell(gens.transpose());
  Mat vt = vectors.transpose();
  for (int i = 0; i < vt.rows(); ++i)
    if (!howell_contains(h, vt.row(i))) return false;
  return true;
}

bool same_column_span(const Mat& a, const Mat& b) {
  return column_span_contains(a, b) && column_span_contains(b, a);
}

std::optional<Mat> inverse(const Mat& A) {
  require(A.rows() == A.cols(), "inverse of a non-square matrix");
  return solve(A, Mat::identity(A.ring(), A.rows()));
}

std::vector<RingElt> charpoly(const Mat& A) {
  require(A.rows() == A.cols(), "charpoly of a non-square matrix");
  const Ring& R = A.ring();
  const int n = A.rows();
  if (n == 0) return {};
  // Berkowitz: coefficient vectors highest degree first
  std::vector<RingElt> poly = {R.one(), -A(0, 0)};
  for (int r = 1; r < n; ++r) {
    Mat Ar = A.block(0, 0, r, r);
    Mat C = A.block(0, r, r, 1);
    Mat S = A.block(r, 0, 1, r);
    std::vector<RingElt> t = {R.one(), -A(r, r)};
    Mat v = C;
    for (int k = 0; k < r; ++k) {
      t.push_back(-(S * v)(0, 0));
      v = Ar * v;
    }
    std::vector<RingElt> next(static_cast<size_t>(r + 2), R.zero());
    for (int i = 0; i < r + 2; ++i)
      for (int j = 0; j <= i && j < r + 1; ++j) next[static_cast<size_t>(i)] += t[static_cast<size_t>(i - j)] * poly[static_cast<size_t>(j)];
    poly = next;
  }
  return std::vector<RingElt>(poly.begin() + 1, poly.end());
}

}  // namespace simpson
