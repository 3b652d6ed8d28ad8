#include "pd.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace simpson {

int degree(const MultiIndex& J) { return std::accumulate(J.begin(), J.end(), 0); }

int64_t pd_binomial(const MultiIndex& J, const MultiIndex& K) {
  int64_t r = 1;
  for (size_t i = 0; i < J.size(); ++i) {
    int64_t b = 1;
    for (int t = 1; t <= K[i]; ++t) b = b * (J[i] + t) / t;
    r *= b;
  }
  return r;
}

int PdBasis::index(const MultiIndex& J) const {
  auto it = pos.find(J);
  return it == pos.end() ? -1 : it->second;
}

const PdBasis& pd_basis(int d, int D) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PdBasis> cache;
  require(d >= 1 && D >= 0, "pd basis needs d >= 1 and D >= 0");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({d, D});
  if (it != cache.end()) return it->second;
  PdBasis B;
  B.d = d;
  B.D = D;
  for (int deg = 0; deg <= D; ++deg) {
    std::vector<MultiIndex> layer;
    MultiIndex J(static_cast<size_t>(d), 0);
    // enumerate compositions of deg into d parts
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == d - 1) {
        J[static_cast<size_t>(i)] = left;
        layer.push_back(J);
        return;
      }
      for (int v = left; v >= 0; --v) {
        J[static_cast<size_t>(i)] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, deg);
    std::sort(layer.begin(), layer.end());
    for (auto& L : layer) {
      B.pos[L] = static_cast<int>(B.idx.size());
      B.idx.push_back(L);
    }
  }
  return cache.emplace(std::pair{d, D}, std::move(B)).first->second;
}

Mat pd_gamma_matrix(const Ring& R, const PdBasis& B, const std::vector<int64_t>& m) {
  Mat G(R, B.size(), B.size());
  ChartParams ch{B.d, 0, 1, 0};
  GammaElement g = GammaElement::from_reduced(m, ch);
  for (int j = 0; j < B.size(); ++j) {
    auto img = gamma_act_pd(g, PdPoly<RingElt>::monomial(B.d, B.D, B.idx[static_cast<size_t>(j)], R.one()));
    for (const auto& [K, c] : img.terms) G(B.index(K), j) = c;
  }
  return G;
}

Mat pd_partial_matrix(const Ring& R, const PdBasis& src, const PdBasis& dst, int i) {
  Mat P(R, dst.size(), src.size());
  for (int j = 0; j < src.size(); ++j) {
    MultiIndex J = src.idx[static_cast<size_t>(j)];
    if (J[static_cast<size_t>(i)] == 0) continue;
    --J[static_cast<size_t>(i)];
    int k = dst.index(J);
    if (k >= 0) P(k, j) = R.one();
  }
  return P;
}

Mat pd_to_vector(const Ring& R, const PdBasis& B, const PdPoly<RingElt>& f) {
  Mat v(R, B.size(), 1);
  for (const auto& [J, c] : f.terms) {
    int k = B.index(J);
    require(k >= 0, "pd element exceeds the basis degree");
    v(k, 0) = c;
  }
  return v;
}

PdPoly<RingElt> pd_from_vector(const PdBasis& B, const Mat& v, int col) {
  PdPoly<RingElt> f{B.d, B.D, true, {}};
  for (int k = 0; k < B.size(); ++k) f.add(B.idx[static_cast<size_t>(k)], v(k, col));
  return f;
}

FreeComplex poincare_complex(const Ring& R, int d, int D) {
  FreeComplex C;
  C.R = &R;
  std::vector<std::vector<std::vector<int>>> sets;
  for (int q = 0; q <= d; ++q) {
    sets.push_back(subsets(d, q));
    int dimP = D - q >= 0 ? pd_basis(d, D - q).size() : 0;
    C.ranks.push_back(static_cast<int>(sets.back().size()) * dimP);
  }
  for (int q = 0; q < d; ++q) {
    Mat M(R, C.ranks[q + 1], C.ranks[q]);
    if (D - q - 1 >= 0) {
      const PdBasis& src = pd_basis(d, D - q);
      const PdBasis& dst = pd_basis(d, D - q - 1);
      for (size_t si = 0; si < sets[q].size(); ++si) {
        const auto& S = sets[q][si];
        for (int i = 0; i < d; ++i) {
          if (std::find(S.begin(), S.end(), i) != S.end()) continue;
          int before = static_cast<int>(std::count_if(S.begin(), S.end(), [&](int j) { return j < i; }));
          std::vector<int> T = S;
          T.insert(std::upper_bound(T.begin(), T.end(), i), i);
          auto ti = std::find(sets[q + 1].begin(), sets[q + 1].end(), T) - sets[q + 1].begin();
          Mat blk = pd_partial_matrix(R, src, dst, i);
          if (before % 2) blk = -blk;
          M.set_block(static_cast<int>(ti) * dst.size(), static_cast<int>(si) * src.size(), blk);
        }
      }
    }
    C.diff.push_back(M);
  }
  return C;
}

ModuleProfile poincare_defect(const Ring& R, int d, int D, int q) {
  require(q >= 0 && q <= d, "poincare_defect: degree out of range");
  return cohomology(poincare_complex(R, d, D)).degrees[static_cast<size_t>(q)];
}

}  // namespace simpson
