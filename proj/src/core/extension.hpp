#pragma once

#include <string>
#include <vector>

#include "chart.hpp"
#include "complex.hpp"
#include "pd.hpp"

namespace simpson {

// a e + sum_j b_j y_j modulo (y_0 + ... + y_r)
struct FaltingsExtElt {
  PerfElt a;
  std::vector<PerfElt> b;  // b_0..b_d
};

FaltingsExtElt ext_zero(const Ring& R, const ChartParams& chart);
FaltingsExtElt ext_y(const Ring& R, const ChartParams& chart, int j, const PerfElt& coeff);
FaltingsExtElt ext_reduce(const FaltingsExtElt& x, const ChartParams& chart);
bool ext_equal(const FaltingsExtElt& x, const FaltingsExtElt& y, const ChartParams& chart);
FaltingsExtElt ext_add(const FaltingsExtElt& x, const FaltingsExtElt& y);
FaltingsExtElt ext_gamma_act(const GammaElement& g, const FaltingsExtElt& x);
FaltingsExtElt ext_include(const PerfElt& a, int d);            // i(a) = a e
LogDiff<PerfElt> ext_project(const FaltingsExtElt& x, const ChartParams& chart);  // pr, reduced

struct ExtSesReport {
  int samples = 0;
  bool injective = true;
  bool pr_after_i_zero = true;
  bool pr_of_y = true;
  bool kernel_is_image = true;
  bool equivariant = true;
  bool action_law = true;
  bool ok() const { return injective && pr_after_i_zero && pr_of_y && kernel_is_image && equivariant && action_law; }
};
ExtSesReport ext_ses_check(const Ring& R, const ChartParams& chart, uint64_t seed, int samples);

struct SplittingObstruction {
  bool solvable = false;  // a Gamma-equivariant splitting exists mod p^{e-g}
  RingElt obstruction;    // rho_K n_j for the generator that fails
  int direction = 0;
  Valuation obstruction_val;
};
// Tries s(e_j / xi) = y_j + s_j e with s_j in the level-lvl span of the T^alpha over W.
SplittingObstruction ext_splitting_obstruction(const Ring& R, const ChartParams& chart, int j);

// Divided powers of a short exact sequence 0 -> E -> F -> G -> 0 of free W-modules.
struct SzData {
  const Ring* R = nullptr;
  Mat v;  // G x F surjection
  Mat u;  // F x E, basis of ker v
  int n = 1;
  int rank_f() const { return v.cols(); }
  int rank_g() const { return v.rows(); }
  int rank_e() const { return u.cols(); }
};
SzData make_sz(const Mat& v, int n);

// basis of Gamma^m(F) (x) Lambda^i(G)
struct SzBasis {
  std::vector<MultiIndex> gamma;
  std::vector<std::vector<int>> wedge;
  int size() const { return static_cast<int>(gamma.size() * wedge.size()); }
};
SzBasis sz_basis(int rank_f, int rank_g, int m, int i);
std::vector<MultiIndex> homogeneous_indices(int vars, int m);
// matrix of the differential Gamma^m(F) (x) Lambda^i G -> Gamma^{m-1}(F) (x) Lambda^{i+1} G
Mat sz_differential(const SzData& s, int m, int i);
// matrix of Gamma^n(u) : Gamma^n(E) -> Gamma^n(F)
Mat sz_gamma_u(const SzData& s);
// 0 -> Gamma^n E -> Gamma^n F -> ... -> Lambda^n G -> 0 as a FreeComplex starting at Gamma^n E
FreeComplex sz_complex(const SzData& s);

struct SzReport {
  bool squares_to_zero = false;
  bool exact = false;
  std::vector<int> ranks;
  bool ok() const { return squares_to_zero && exact; }
};
SzReport sz_exactness_check(const SzData& s);

// Gamma(E+) over a point chart: pd polynomials in (e, y_1..y_d), variable 0 is e.
PdPoly<RingElt> period_map(const PdPoly<RingElt>& x);  // e^[a] y^[J] -> z1^[a] Y^[J]
PdPoly<RingElt> ext_pd_gamma(const GammaElement& g, const PdPoly<RingElt>& x);
Mat period_map_matrix(const Ring& R, int d, int D);
Mat pd_ideal_generators(const Ring& R, int d, int D);  // eps^[k] y^[J], k >= 1

struct PeriodAlgebraReport {
  bool e_maps_to_z1 = false;
  bool dims_match = false;
  bool kernel_is_ideal = false;
  bool ring_map = false;
  bool gamma_transport = false;
  bool theta_transport = false;
  int dim_source = 0, dim_ideal = 0, dim_target = 0;
  bool ok() const { return e_maps_to_z1 && dims_match && kernel_is_ideal && ring_map && gamma_transport && theta_transport; }
};
PeriodAlgebraReport derive_period_algebra(const Ring& R, int d, int D, uint64_t seed, int samples);

}  // namespace simpson
