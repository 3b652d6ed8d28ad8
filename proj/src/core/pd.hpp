#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "chart.hpp"
#include "complex.hpp"
#include "matrix.hpp"

namespace simpson {

using MultiIndex = std::vector<int>;

int degree(const MultiIndex& J);
// prod_i binomial(J_i + K_i, J_i)
int64_t pd_binomial(const MultiIndex& J, const MultiIndex& K);

// Multi-indices of total degree <= D in d variables, ordered by degree then lexicographically.
struct PdBasis {
  int d = 0;
  int D = 0;
  std::vector<MultiIndex> idx;
  std::map<MultiIndex, int> pos;
  int size() const { return static_cast<int>(idx.size()); }
  int index(const MultiIndex& J) const;
};
const PdBasis& pd_basis(int d, int D);

// Coefficient hooks for the three base rings.
inline const Ring& coeff_ring(const RingElt& x) { return x.ring(); }
inline const Ring& coeff_ring(const SemistableElt& x) { return x.ring(); }
inline const Ring& coeff_ring(const PerfElt& x) { return x.ring(); }
inline RingElt coeff_gamma(const GammaElement&, const RingElt& x) { return x; }
inline SemistableElt coeff_gamma(const GammaElement&, const SemistableElt& x) { return x; }
inline PerfElt coeff_gamma(const GammaElement& g, const PerfElt& x) { return gamma_act(g, x); }

// Truncated divided-power polynomial sum c_J Y^[J], |J| <= D.
template <class C>
struct PdPoly {
  int d = 1;
  int D = 0;
  bool sound = true;
  std::map<MultiIndex, C> terms;

  static PdPoly constant(int d, int D, const C& c) {
    PdPoly f{d, D, true, {}};
    f.add(MultiIndex(static_cast<size_t>(d), 0), c);
    return f;
  }
  static PdPoly monomial(int d, int D, const MultiIndex& J, const C& c) {
    PdPoly f{d, D, true, {}};
    f.add(J, c);
    return f;
  }

  void add(const MultiIndex& J, const C& c) {
    require(static_cast<int>(J.size()) == d, "pd multi-index has wrong length");
    if (degree(J) > D) {
      if (!c.is_zero()) sound = false;
      return;
    }
    if (c.is_zero()) return;
    auto it = terms.find(J);
    if (it == terms.end()) {
      terms.emplace(J, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  PdPoly operator+(const PdPoly& o) const {
    PdPoly r = *this;
    r.sound = sound && o.sound;
    for (const auto& [J, c] : o.terms) r.add(J, c);
    return r;
  }
  PdPoly operator-() const {
    PdPoly r = *this;
    for (auto& [J, c] : r.terms) c = -c;
    return r;
  }
  PdPoly operator-(const PdPoly& o) const { return *this + (-o); }
  PdPoly operator*(const RingElt& s) const {
    PdPoly r{d, D, sound, {}};
    for (const auto& [J, c] : terms) r.add(J, c * s);
    return r;
  }
  bool operator==(const PdPoly& o) const { return (*this - o).terms.empty(); }
  bool is_zero() const { return terms.empty(); }
  // constant term (evaluation at Y = 0)
  std::optional<C> counit() const {
    auto it = terms.find(MultiIndex(static_cast<size_t>(d), 0));
    if (it == terms.end()) return std::nullopt;
    return it->second;
  }
};

template <class C>
PdPoly<C> pd_mul(const PdPoly<C>& f, const PdPoly<C>& g) {
  require(f.d == g.d && f.D == g.D, "pd_mul: operands must share d and D");
  PdPoly<C> r{f.d, f.D, f.sound && g.sound, {}};
  for (const auto& [J, a] : f.terms)
    for (const auto& [K, b] : g.terms) {
      MultiIndex S(J.size());
      for (size_t i = 0; i < J.size(); ++i) S[i] = J[i] + K[i];
      const Ring& R = coeff_ring(a);
      r.add(S, (a * b) * R.from_int(pd_binomial(J, K)));
    }
  return r;
}

// d/dY_i on divided powers: Y^[J] -> Y^[J - E_i]; i is 0-based here.
template <class C>
PdPoly<C> pd_partial(const PdPoly<C>& f, int i) {
  PdPoly<C> r{f.d, f.D, f.sound, {}};
  for (const auto& [J, c] : f.terms) {
    if (J[static_cast<size_t>(i)] == 0) continue;
    MultiIndex K = J;
    --K[static_cast<size_t>(i)];
    r.add(K, c);
  }
  return r;
}

// Theta = sum_i d/dY_i (x) e_i / xi in the reduced basis e_1..e_d (component 0 is zero).
template <class C>
LogDiff<PdPoly<C>> theta_derivation(const PdPoly<C>& f) {
  LogDiff<PdPoly<C>> out;
  out.twist = -1;
  out.c.push_back(PdPoly<C>{f.d, f.D, f.sound, {}});
  for (int i = 0; i < f.d; ++i) out.c.push_back(pd_partial(f, i));
  return out;
}

// Y_j -> Y_j + m_j c with c = rho_K (zeta_p - 1); coefficients are acted on as well.
template <class C>
PdPoly<C> gamma_act_pd(const GammaElement& g, const PdPoly<C>& f) {
  std::vector<int64_t> m = g.reduced();
  require(static_cast<int>(m.size()) == f.d, "gamma_act_pd: Gamma element rank mismatch");
  PdPoly<C> r{f.d, f.D, f.sound, {}};
  for (const auto& [J, c0] : f.terms) {
    C c = coeff_gamma(g, c0);
    const Ring& R = coeff_ring(c);
    std::vector<std::pair<MultiIndex, RingElt>> acc{{MultiIndex(J.size(), 0), R.one()}};
    for (size_t j = 0; j < J.size(); ++j) {
      std::vector<std::pair<MultiIndex, RingElt>> next;
      for (const auto& [K, s] : acc)
        for (int k = 0; k <= J[j]; ++k) {
          int e = J[j] - k;
          RingElt a = e == 0 ? R.one() : (m[j] == 0 ? R.zero() : c_pd_power(R, e) * R.from_int(m[j]).pow(e));
          if (a.is_zero()) continue;
          MultiIndex K2 = K;
          K2[j] = k;
          next.emplace_back(K2, s * a);
        }
      acc = std::move(next);
    }
    for (const auto& [K, s] : acc) r.add(K, c * s);
  }
  return r;
}

// Matrix forms on the free W-module P_{<=D}.
Mat pd_gamma_matrix(const Ring& R, const PdBasis& B, const std::vector<int64_t>& m);
Mat pd_partial_matrix(const Ring& R, const PdBasis& src, const PdBasis& dst, int i);
Mat pd_to_vector(const Ring& R, const PdBasis& B, const PdPoly<RingElt>& f);
PdPoly<RingElt> pd_from_vector(const PdBasis& B, const Mat& v, int col = 0);

// Truncated Higgs complex P_{<=D} -> P_{<=D-1} (x) Omega -> ... over W.
FreeComplex poincare_complex(const Ring& R, int d, int D);
ModuleProfile poincare_defect(const Ring& R, int d, int D, int q);

}  // namespace simpson
