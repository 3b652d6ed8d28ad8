#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chart.hpp"
#include "matrix.hpp"

namespace simpson {

// Deterministic across platforms: raw mt19937_64 output reduced by plain modulo.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  int64_t below(int64_t m) { return static_cast<int64_t>(g_() % static_cast<uint64_t>(m)); }
  int64_t range(int64_t lo, int64_t hi) { return lo + below(hi - lo + 1); }
  uint64_t next() { return g_(); }

 private:
  std::mt19937_64 g_;
};

RingElt random_elt(const Ring& R, Rng& rng);
Mat random_mat(const Ring& R, int rows, int cols, Rng& rng);
// Commuting theta_i = pi^{min_pi} q_i(B) for one random matrix B.
std::vector<Mat> random_commuting_small(const Ring& R, int rank, int d, Rng& rng, int min_pi = 1);
// A_i = 1 + rho_K (zeta_p - 1) X_i with X_i commuting and twisted-small.
std::vector<Mat> random_small_rep(const Ring& R, int rank, int d, Rng& rng);
// Random invertible matrix (lower-unipotent times upper-unipotent times unit diagonal).
Mat random_invertible(const Ring& R, int n, Rng& rng);

// Small random chart-ring elements: crossing exponents in [0,2], Laurent exponents in [-2,2].
SemistableElt random_semistable(const Ring& R, const ChartParams& chart, Rng& rng, int terms);
PerfElt random_perf(const Ring& R, const ChartParams& chart, Rng& rng, int comps);
GammaElement random_gamma(const ChartParams& chart, Rng& rng, int bound);

}  // namespace simpson
