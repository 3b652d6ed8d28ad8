#pragma once

#include <vector>

#include "matrix.hpp"

namespace simpson {

// Cochain complex of finite free W(n,e)-modules; diff[q] : C^q -> C^{q+1}.
struct FreeComplex {
  const Ring* R = nullptr;
  std::vector<int> ranks;
  std::vector<Mat> diff;

  int top() const { return static_cast<int>(ranks.size()) - 1; }
  // d^{q+1} d^q == 0 exactly mod p^e
  bool is_complex() const;
};

// Elementary divisors of a subquotient Z/B, as uniformizer exponents.
struct ModuleProfile {
  std::vector<int> torsion;  // exponents s with a W/pi^s summand, 0 < s < L
  int free = 0;              // summands isomorphic to W
  std::vector<int> guarded;  // exponents of Z / (B + Z cap pi^t C)
  int length(int L) const;
  bool negligible() const { return guarded.empty(); }
};

struct CohomologyProfile {
  int L = 0;  // length of W
  int t = 0;  // pi-exponent of the guard cut p^{e-g}
  std::vector<ModuleProfile> degrees;
};

// Profile of Z/B where Z, B are given by column generators in a common free module and B is in Z.
ModuleProfile subquotient_profile(const Mat& Z, const Mat& B, int t);
// Column generators of im d^{q-1} and ker d^q.
Mat coboundaries(const FreeComplex& C, int q);
Mat cocycles(const FreeComplex& C, int q);
CohomologyProfile cohomology(const FreeComplex& C);
int euler_length(const FreeComplex& C);

// f * Z^q is contained in B^q + span(extra) + p^{e-g} C^q.
bool killed_by(const FreeComplex& C, int q, const RingElt& f, const Mat& extra);

// Subsets of {0..d-1} of size q in lex order; index helpers for Lambda^q.
std::vector<std::vector<int>> subsets(int d, int q);

// K(x_1..x_d; M): C^q = Lambda^q (x) M, basis index = subset_index * m + k.
FreeComplex koszul(const std::vector<Mat>& xs);

// eta_f C as generator matrices inside C^q, with the differential expressed on generators.
struct EtaComplex {
  std::vector<Mat> gens;  // columns in C^q
  std::vector<Mat> diff;  // d(gens^q) = gens^{q+1} * diff[q]
};
EtaComplex decalage(const FreeComplex& C, const RingElt& f);
// cohomology profile of an eta complex, as a subcomplex of C
CohomologyProfile eta_cohomology(const FreeComplex& C, const EtaComplex& eta);

}  // namespace simpson
