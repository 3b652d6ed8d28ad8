#pragma once

#include <map>
#include <vector>

#include "ring.hpp"

namespace simpson {

struct ChartParams {
  int d = 1;
  int r = 0;
  int a = 1;
  int lvl = 1;
  bool operator==(const ChartParams&) const = default;
};

void validate_chart(const ChartParams& c, const Ring& R);

using Exponents = std::vector<int>;  // J_0..J_d

// Apply T_0...T_r = p^a until min(J_0..J_r) = 0.  Returns the normal form and the scale p^{a k}.
std::pair<Exponents, RingElt> normalize(const Exponents& J, const ChartParams& chart, const Ring& R);

// Finite sum of normal-formed monomials of O<T_0..T_r, T_{r+1}^{+-1}..T_d^{+-1}>/(T_0...T_r - p^a).
class SemistableElt {
 public:
  SemistableElt() = default;
  SemistableElt(const Ring& R, const ChartParams& chart) : R_(&R), chart_(chart) {}
  static SemistableElt constant(const Ring& R, const ChartParams& chart, const RingElt& c);
  static SemistableElt monomial(const Ring& R, const ChartParams& chart, const Exponents& J, const RingElt& c);

  const Ring& ring() const { return *R_; }
  const ChartParams& chart() const { return chart_; }
  const std::map<Exponents, RingElt>& terms() const { return terms_; }
  void add_term(const Exponents& J, const RingElt& c);  // normalizes J

  SemistableElt operator+(const SemistableElt& o) const;
  SemistableElt operator-(const SemistableElt& o) const;
  SemistableElt operator-() const;
  SemistableElt operator*(const SemistableElt& o) const;
  SemistableElt operator*(const RingElt& s) const;
  SemistableElt& operator+=(const SemistableElt& o);
  bool operator==(const SemistableElt& o) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  void prune();
  const Ring* R_ = nullptr;
  ChartParams chart_;
  std::map<Exponents, RingElt> terms_;
};

// alpha numerators over the shared denominator p^lvl
using PerfIndex = std::vector<int>;
bool valid_perf_index(const PerfIndex& alpha, const ChartParams& chart, const Ring& R);
std::vector<PerfIndex> all_perf_indices(const ChartParams& chart, const Ring& R);

// Elements of the level-lvl perfectoid extension: sum over alpha of R^+ T^alpha.
class PerfElt {
 public:
  PerfElt() = default;
  PerfElt(const Ring& R, const ChartParams& chart) : R_(&R), chart_(chart) {}
  static PerfElt embed(const SemistableElt& x);
  static PerfElt monomial(const Ring& R, const ChartParams& chart, const PerfIndex& alpha, const SemistableElt& x);

  const Ring& ring() const { return *R_; }
  const ChartParams& chart() const { return chart_; }
  const std::map<PerfIndex, SemistableElt>& comps() const { return comps_; }
  void add_comp(const PerfIndex& alpha, const SemistableElt& x);

  PerfElt operator+(const PerfElt& o) const;
  PerfElt operator-(const PerfElt& o) const;
  PerfElt operator-() const;
  // Product; throws INVALID_INPUT when the result would need a fractional power of p.
  PerfElt operator*(const PerfElt& o) const;
  PerfElt operator*(const RingElt& s) const;
  PerfElt& operator+=(const PerfElt& o);
  bool operator==(const PerfElt& o) const;
  bool is_zero() const { return comps_.empty(); }

 private:
  void prune();
  const Ring* R_ = nullptr;
  ChartParams chart_;
  std::map<PerfIndex, SemistableElt> comps_;
};

std::map<PerfIndex, SemistableElt> decompose(const PerfElt& x);

// delta = prod delta_i^{n_i} with n_0 + ... + n_r = 0.
struct GammaElement {
  std::vector<int64_t> n;  // n_0..n_d

  static GammaElement identity(const ChartParams& chart);
  // gamma_1^{m_1} ... gamma_d^{m_d}
  static GammaElement from_reduced(const std::vector<int64_t>& m, const ChartParams& chart);
  static GammaElement generator(int i, const ChartParams& chart);  // gamma_i, 1 <= i <= d
  std::vector<int64_t> reduced() const;
  GammaElement operator*(const GammaElement& o) const;
  GammaElement inverse() const;
  bool valid(const ChartParams& chart) const;
};

// zeta^{<n, alpha>} for the action on T^alpha
RingElt gamma_character(const GammaElement& g, const PerfIndex& alpha, const ChartParams& chart, const Ring& R);
PerfElt gamma_act(const GammaElement& g, const PerfElt& x);

// sum c_i e_i modulo (e_0 + ... + e_r), with a Breuil-Kisin twist tag
template <class C>
struct LogDiff {
  std::vector<C> c;  // c_0..c_d
  int twist = 0;
};

// Eliminate e_0 = -(e_1 + ... + e_r); for r = 0 the relation is e_0 = 0.
template <class C>
LogDiff<C> reduce_logdiff(const LogDiff<C>& v, const ChartParams& chart) {
  LogDiff<C> out = v;
  if (out.c.empty()) return out;
  C c0 = out.c[0];
  for (int i = 1; i <= chart.r; ++i) out.c[static_cast<size_t>(i)] = out.c[static_cast<size_t>(i)] - c0;
  out.c[0] = c0 - c0;
  return out;
}

}  // namespace simpson
