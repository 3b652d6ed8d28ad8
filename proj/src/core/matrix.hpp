#pragma once

#include <optional>
#include <vector>

#include "ring.hpp"

namespace simpson {

// Dense matrix over W(n,e). Maps act on column vectors: f(x) = A x.
class Mat {
 public:
  Mat() = default;
  Mat(const Ring& R, int rows, int cols);
  static Mat identity(const Ring& R, int n);
  static Mat scalar(const Ring& R, int n, const RingElt& s);
  static Mat from_rows(const Ring& R, const std::vector<std::vector<RingElt>>& rows);

  const Ring& ring() const { return *R_; }
  bool valid() const { return R_ != nullptr; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  RingElt& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const RingElt& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const RingElt& s) const;
  Mat& operator+=(const Mat& o);

  Mat transpose() const;
  Mat kron(const Mat& o) const;
  Mat block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Mat& b);
  Mat col(int j) const;
  Mat row(int i) const;
  Mat select_cols(const std::vector<int>& idx) const;
  Mat select_rows(const std::vector<int>& idx) const;
  static Mat hstack(const Mat& a, const Mat& b);
  static Mat vstack(const Mat& a, const Mat& b);
  Mat pow(int k) const;

  Mat project(const Ring& target) const;
  Mat lift(const Ring& target) const;
  // Forget floors: treat every entry as exact modulo p^e.
  Mat exact() const;
  int min_floor() const;

  bool is_zero() const;  // entries zero modulo their floors
  bool is_zero_mod(int e2) const;
  bool equals_mod(const Mat& o, int e2) const;
  bool operator==(const Mat& o) const;
  // smallest pi-adic valuation among entries (length() if all zero)
  int min_pi_valuation() const;

 private:
  const Ring* R_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<RingElt> a_;
};

Mat operator*(const RingElt& s, const Mat& m);

// U A V = diag(pi^{k_0}, ..., pi^{k_{rank-1}}, 0, ...), U and V invertible.
struct Smith {
  Mat U, V, Vinv;
  std::vector<int> k;  // pi exponents of the nonzero invariant factors, nondecreasing
  int rank = 0;
};
Smith smith(const Mat& A, bool want_U = true, bool want_V = true);

// Row-span canonical form over the chain ring.
struct Howell {
  Mat H;                       // nonzero rows only
  std::vector<int> pivot_col;  // per row
  std::vector<int> pivot_exp;  // pivot entry is exactly pi^{pivot_exp}
  Mat T;                       // H = T * A (only when requested)
};
Howell howell(const Mat& A, bool want_transform = false);
// Reduce a row vector against a Howell form; returns the residue (zero iff member).
Mat howell_reduce(const Howell& h, const Mat& row);
bool howell_contains(const Howell& h, const Mat& row);

// Canonical representative of x modulo pi^k: digits in [0, p) on powers of pi.
RingElt canonical_residue(const RingElt& x, int k);

// Column-space helpers.
Mat kernel(const Mat& A);  // generators of {x : A x = 0}, as columns
std::optional<Mat> solve(const Mat& A, const Mat& B);  // some X with A X = B
bool column_span_contains(const Mat& gens, const Mat& vectors);
bool same_column_span(const Mat& a, const Mat& b);
std::optional<Mat> inverse(const Mat& A);

// det(tI - A) = t^n + c_1 t^{n-1} + ... + c_n; returns (c_1..c_n).  Division-free.
std::vector<RingElt> charpoly(const Mat& A);

}  // namespace simpson
