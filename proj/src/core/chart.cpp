#include "chart.hpp"

#include <algorithm>

namespace simpson {

void validate_chart(const ChartParams& c, const Ring& R) {
  require(c.d >= 1, "chart dimension d must be >= 1");
  require(c.r >= 0 && c.r <= c.d, "chart needs 0 <= r <= d");
  require(c.a >= 1, "chart exponent a must be an integer >= 1");
  require(c.lvl >= 0 && c.lvl <= R.n(), "perfectoid level must not exceed the cyclotomic level");
}

std::pair<Exponents, RingElt> normalize(const Exponents& J, const ChartParams& chart, const Ring& R) {
  require(static_cast<int>(J.size()) == chart.d + 1, "exponent vector has wrong length");
  Exponents out = J;
  int k = *std::min_element(out.begin(), out.begin() + chart.r + 1);
  require(k >= 0, "negative exponent on a crossing coordinate");
  for (int i = 0; i <= chart.r; ++i) out[static_cast<size_t>(i)] -= k;
  RingElt scale = R.from_int(R.p()).pow(static_cast<int64_t>(chart.a) * k);
  return {out, scale};
}

SemistableElt SemistableElt::constant(const Ring& R, const ChartParams& chart, const RingElt& c) {
  return monomial(R, chart, Exponents(static_cast<size_t>(chart.d + 1), 0), c);
}

SemistableElt SemistableElt::monomial(const Ring& R, const ChartParams& chart, const Exponents& J, const RingElt& c) {
  SemistableElt x(R, chart);
  x.add_term(J, c);
  return x;
}

void SemistableElt::add_term(const Exponents& J, const RingElt& c) {
  auto [nf, scale] = normalize(J, chart_, *R_);
  RingElt v = c * scale;
  auto it = terms_.find(nf);
  if (it == terms_.end()) {
    if (!v.is_zero()) terms_.emplace(nf, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SemistableElt::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

SemistableElt& SemistableElt::operator+=(const SemistableElt& o) {
  if (!R_) *this = SemistableElt(*o.R_, o.chart_);
  for (const auto& [J, c] : o.terms_) add_term(J, c);
  return *this;
}

SemistableElt SemistableElt::operator+(const SemistableElt& o) const {
  SemistableElt r = *this;
  r += o;
  return r;
}

SemistableElt SemistableElt::operator-() const {
  SemistableElt r = *this;
  for (auto& [J, c] : r.terms_) c = -c;
  return r;
}

SemistableElt SemistableElt::operator-(const SemistableElt& o) const { return *this + (-o); }

SemistableElt SemistableElt::operator*(const SemistableElt& o) const {
  SemistableElt r(*R_, chart_);
  for (const auto& [J, c] : terms_)
    for (const auto& [K, d] : o.terms_) {
      Exponents S(J.size());
      for (size_t i = 0; i < J.size(); ++i) S[i] = J[i] + K[i];
      r.add_term(S, c * d);
    }
  return r;
}

SemistableElt SemistableElt::operator*(const RingElt& s) const {
  SemistableElt r = *this;
  for (auto& [J, c] : r.terms_) c = c * s;
  r.prune();
  return r;
}

bool SemistableElt::operator==(const SemistableElt& o) const { return (*this - o).is_zero(); }

// ---------------------------------------------------------------------------

bool valid_perf_index(const PerfIndex& alpha, const ChartParams& chart, const Ring& R) {
  if (static_cast<int>(alpha.size()) != chart.d + 1) return false;
  int64_t den = 1;
  for (int i = 0; i < chart.lvl; ++i) den *= R.p();
  for (int a : alpha)
    if (a < 0 || a >= den) return false;
  for (int i = 0; i <= chart.r; ++i)
    if (alpha[static_cast<size_t>(i)] == 0) return true;
  return false;
}

std::vector<PerfIndex> all_perf_indices(const ChartParams& chart, const Ring& R) {
  int den = 1;
  for (int i = 0; i < chart.lvl; ++i) den *= R.p();
  std::vector<PerfIndex> out;
  PerfIndex a(static_cast<size_t>(chart.d + 1), 0);
  while (true) {
    if (valid_perf_index(a, chart, R)) out.push_back(a);
    size_t i = 0;
    while (i < a.size() && ++a[i] == den) a[i++] = 0;
    if (i == a.size()) break;
  }
  return out;
}

PerfElt PerfElt::embed(const SemistableElt& x) {
  return monomial(x.ring(), x.chart(), PerfIndex(static_cast<size_t>(x.chart().d + 1), 0), x);
}

PerfElt PerfElt::monomial(const Ring& R, const ChartParams& chart, const PerfIndex& alpha, const SemistableElt& x) {
  PerfElt r(R, chart);
  r.add_comp(alpha, x);
  return r;
}

void PerfElt::add_comp(const PerfIndex& alpha, const SemistableElt& x) {
  require(valid_perf_index(alpha, chart_, *R_), "perfectoid index outside J_r");
  if (x.is_zero()) return;
  auto it = comps_.find(alpha);
  if (it == comps_.end()) {
    comps_.emplace(alpha, x);
  } else {
    it->second += x;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

void PerfElt::prune() {
  for (auto it = comps_.begin(); it != comps_.end();) it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
}

PerfElt& PerfElt::operator+=(const PerfElt& o) {
  if (!R_) *this = PerfElt(*o.R_, o.chart_);
  for (const auto& [a, x] : o.comps_) add_comp(a, x);
  return *this;
}

PerfElt PerfElt::operator+(const PerfElt& o) const {
  PerfElt r = *this;
  r += o;
  return r;
}

PerfElt PerfElt::operator-() const {
  PerfElt r = *this;
  for (auto& [a, x] : r.comps_) x = -x;
  return r;
}

PerfElt PerfElt::operator-(const PerfElt& o) const { return *this + (-o); }

PerfElt PerfElt::operator*(const PerfElt& o) const {
  int den = 1;
  for (int i = 0; i < chart_.lvl; ++i) den *= R_->p();
  PerfElt r(*R_, chart_);
  for (const auto& [a, x] : comps_)
    for (const auto& [b, y] : o.comps_) {
      PerfIndex s(a.size());
      Exponents carry(a.size(), 0);
      for (size_t i = 0; i < a.size(); ++i) {
        s[i] = (a[i] + b[i]) % den;
        carry[i] = (a[i] + b[i]) / den;
      }
      require(valid_perf_index(s, chart_, *R_), "product needs a fractional power of p (outside the finite-level model)");
      SemistableElt t = SemistableElt::monomial(*R_, chart_, carry, R_->one());
      r.add_comp(s, x * y * t);
    }
  return r;
}

PerfElt PerfElt::operator*(const RingElt& s) const {
  PerfElt r = *this;
  for (auto& [a, x] : r.comps_) x = x * s;
  r.prune();
  return r;
}

bool PerfElt::operator==(const PerfElt& o) const { return (*this - o).is_zero(); }

std::map<PerfIndex, SemistableElt> decompose(const PerfElt& x) { return x.comps(); }

// ---------------------------------------------------------------------------

GammaElement GammaElement::identity(const ChartParams& chart) {
  return GammaElement{std::vector<int64_t>(static_cast<size_t>(chart.d + 1), 0)};
}

GammaElement GammaElement::from_reduced(const std::vector<int64_t>& m, const ChartParams& chart) {
  require(static_cast<int>(m.size()) == chart.d, "reduced Gamma element needs d exponents");
  GammaElement g = identity(chart);
  for (int i = 1; i <= chart.d; ++i) {
    g.n[static_cast<size_t>(i)] = m[static_cast<size_t>(i - 1)];
    if (i <= chart.r) g.n[0] -= m[static_cast<size_t>(i - 1)];
  }
  return g;
}

GammaElement GammaElement::generator(int i, const ChartParams& chart) {
  require(i >= 1 && i <= chart.d, "generator index out of range");
  std::vector<int64_t> m(static_cast<size_t>(chart.d), 0);
  m[static_cast<size_t>(i - 1)] = 1;
  return from_reduced(m, chart);
}

std::vector<int64_t> GammaElement::reduced() const { return std::vector<int64_t>(n.begin() + 1, n.end()); }

GammaElement GammaElement::operator*(const GammaElement& o) const {
  GammaElement g{n};
  for (size_t i = 0; i < n.size(); ++i) g.n[i] += o.n[i];
  return g;
}

GammaElement GammaElement::inverse() const {
  GammaElement g{n};
  for (auto& v : g.n) v = -v;
  return g;
}

bool GammaElement::valid(const ChartParams& chart) const {
  if (static_cast<int>(n.size()) != chart.d + 1) return false;
  int64_t s = 0;
  for (int i = 0; i <= chart.r; ++i) s += n[static_cast<size_t>(i)];
  return s == 0;
}

RingElt gamma_character(const GammaElement& g, const PerfIndex& alpha, const ChartParams& chart, const Ring& R) {
  int64_t den = 1;
  for (int i = 0; i < chart.lvl; ++i) den *= R.p();
  int64_t s = 0;
  for (size_t i = 0; i < alpha.size(); ++i) s = (s + (g.n[i] % den) * alpha[i]) % den;
  return zeta_alpha(R, s, chart.lvl);
}

PerfElt gamma_act(const GammaElement& g, const PerfElt& x) {
  require(g.valid(x.chart()), "Gamma element violates n_0 + ... + n_r = 0");
  PerfElt r(x.ring(), x.chart());
  for (const auto& [a, y] : x.comps()) r.add_comp(a, y * gamma_character(g, a, x.chart(), x.ring()));
  return r;
}

}  // namespace simpson
