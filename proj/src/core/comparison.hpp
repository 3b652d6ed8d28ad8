#pragma once

#include <vector>

#include "complex.hpp"
#include "higgs.hpp"

namespace simpson {

// pd-degree of each coordinate of H (x) P_{<=D} (index = pd_index * rank + h)
std::vector<int> pd_degrees(int d, int D, int rank);
// unit columns at the coordinates of Lambda^q (x) H (x) P_{<=D} whose pd-degree exceeds D - slack
Mat high_degree_columns(const Ring& R, int d, int D, int rank, int q, int slack);

// K(gamma_1 - 1, ..., gamma_d - 1; M (x) P_{<=D}), gamma_i acting diagonally.
FreeComplex group_cohomology_complex(const GammaRep& M, int D);
// K(gamma_1 - 1, ..., gamma_d - 1; M)
FreeComplex group_cohomology_complex(const GammaRep& M);

struct GroupCohomology {
  FreeComplex complex;
  CohomologyProfile profile;
  Mat h0;  // Howell kernel of the degree-0 map
};
GroupCohomology group_cohomology(const GammaRep& M, int D);

// DR(H, theta) = K(theta_1, ..., theta_d; H)
FreeComplex higgs_de_rham(const HiggsModule& H);

// Degree-0 invariants of M (x) P_{<=D} against exp(sum theta_i Y_i)(M), mod guard: the exact kernel lies in
// the closed-form span plus pd-degrees above D - slack, and the closed form is invariant below that boundary.
bool h0_matches_closed_form(const HiggsModule& H, int D, int slack);
// f Z^q in B^q + (pd-degree > D - slack) + guard, for q >= 1
int torsion_slack(int d);  // 2d + 1
bool higher_cohomology_killed(const GammaRep& M, int D, const RingElt& f, int slack);

struct ComparisonCocycle {
  std::vector<Mat> omega;     // x_1..x_d, rank x 1
  Mat m;                      // m(omega) in H (x) P_{<=D}
  std::vector<Mat> v_direct;  // (gamma_i - 1) m(omega)
  std::vector<Mat> v_closed;  // c F(rho_K theta_i) exp(-sum theta_k Y_k) x_i
  bool agree = false;         // mod guard up to pd-degree D - slack
};
// Gamma acts on H (x) P through P only.  flat = rep_module_on_pd(H, D).
ComparisonCocycle comparison_cocycle(const HiggsModule& H, const std::vector<Mat>& omega, int D, int slack, const Mat& flat);
ComparisonCocycle comparison_cocycle(const HiggsModule& H, const std::vector<Mat>& omega, int D, int slack = 3);

// x |-> (c F(rho_K theta_i) x_i)_i on DR^1 -> K^1
Mat h1_comparison_map(const HiggsModule& H);

struct H1ScalingReport {
  bool image_in_scaled = false;  // phi(Z^1_dR) in c Z^1 + B^1
  bool scaled_in_image = false;  // c Z^1 in phi(Z^1_dR) + B^1
  int samples = 0;
  int agreeing = 0;  // two-path agreements among the seeded omegas
  bool ok() const { return image_in_scaled && scaled_in_image && agreeing == samples; }
};
H1ScalingReport h1_scaling_check(const HiggsModule& H, int D, uint64_t seed, int samples);

struct ConeReport {
  int bound = 0;           // max(d + 1, 2(d - 1))
  int minimal = -1;        // least k <= bound with c^k killing the cone, -1 when none
  bool chain_map = false;  // phi commutes with the differentials exactly
  CohomologyProfile profile;
  bool ok() const { return chain_map && minimal >= 0; }
};
// Cone of phi : DR(H, theta) -> K(gamma - 1; M), phi(x e_S) = prod_{i in S} (-c F(rho_K theta_i)) x.
FreeComplex comparison_cone(const HiggsModule& H, const GammaRep& M);
ConeReport cone_torsion_check(const HiggsModule& H);

struct TwistEtaReport {
  bool spans_match = false;     // eta^q = f^q C^q
  bool commutes = false;        // d(f^q y) = f^{q+1} d_theta y
  bool induced_matches = false; // induced differential agrees with the generators
  bool ok() const { return spans_match && commutes && induced_matches; }
};
// eta_{zeta_p - 1} DR(H, (zeta_p - 1) theta) against DR(H, theta)
TwistEtaReport twist_eta_check(const HiggsModule& H);

}  // namespace simpson
