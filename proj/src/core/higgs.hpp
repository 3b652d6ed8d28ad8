#pragma once

#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "matrix.hpp"
#include "pd.hpp"

namespace simpson {

enum class SmallKind { twisted_small, small };

struct SmallnessCertificate {
  SmallKind kind = SmallKind::twisted_small;
  // per theta_i, valuations of the non-leading characteristic-polynomial coefficients
  std::vector<std::vector<Valuation>> charpoly_vals;
};

struct NilpotenceCheck {
  bool accepted = false;
  SmallnessCertificate cert;
  std::string reason;  // offending coefficient when rejected
};

// Higgs module over a point chart: commuting theta_1..theta_d on W^rank, target twist -1.
struct HiggsModule {
  const Ring* R = nullptr;
  int rank = 0;
  std::vector<Mat> theta;
  int twist = -1;
  std::optional<SmallnessCertificate> cert;
  int d() const { return static_cast<int>(theta.size()); }
};

// Gamma-representation: commuting A_1..A_d, optional theta-presentation.
struct GammaRep {
  const Ring* R = nullptr;
  int rank = 0;
  std::vector<Mat> A;
  std::optional<std::vector<Mat>> witness;
  int d() const { return static_cast<int>(A.size()); }
};

void require_commuting(const std::vector<Mat>& xs);
HiggsModule make_higgs(const std::vector<Mat>& theta);

NilpotenceCheck is_top_nilpotent(const std::vector<Mat>& theta);
// Fallback predicate: X^N == 0 mod pi.
bool power_nilpotent(const Mat& X, int N);

// F(X) = (1 - exp(-(zeta_p - 1) X)) / ((zeta_p - 1) X) for X = scale * theta.
Mat F_matrix(const Mat& theta, const RingElt& scale);
// exp(-(zeta_p - 1) X) as a series in divided powers of zeta_p - 1
Mat exp_z1_matrix(const Mat& X);

GammaRep rep_from_higgs(const HiggsModule& H);
// Logarithm path; with prefer_witness the stored theta is returned after agreement is checked.
HiggsModule higgs_from_rep(const GammaRep& M, bool prefer_witness = true);

// Columns: exp(-sum theta_i Y_i) h for the standard basis h, inside H (x) P_{<=D}
// (index = pd_index * rank + h).
Mat rep_module_on_pd(const HiggsModule& H, int D);
// Columns: exp(sum theta_i Y_i) h, the closed-form degree-0 Gamma-invariants of M (x) P_{<=D}.
Mat invariant_module_on_pd(const HiggsModule& H, int D);

enum class TwistDirection { twist, untwist };
HiggsModule twist(const HiggsModule& H, TwistDirection dir);

// e_k(eigenvalues) of theta_i, k = 1..rank
std::vector<RingElt> hitchin(const Mat& theta);
bool in_small_locus(const HiggsModule& H);

struct DecompletionReport {
  bool unit_invertible = false;
  bool identity_holds = false;     // zeta^beta A - 1 == (zeta^beta - 1) U
  bool h0_vanishes = false;
  bool cokernel_killed = false;    // by zeta_p - 1
  bool u_congruent_one = false;    // U == 1 mod pi
  int direction = 0;               // generator index used
  bool ok() const { return unit_invertible && identity_holds && h0_vanishes && cokernel_killed && u_congruent_one; }
};
// alpha: numerators at level `level` for T_0..T_d (r = crossing count of the chart).
DecompletionReport decompletion_component_check(const HiggsModule& H, const std::vector<int>& alpha, int level, int r);

}  // namespace simpson
