#include "ring.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace simpson {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "OK";
    case Status::invalid_input: return "INVALID_INPUT";
    case Status::not_divisible: return "NOT_DIVISIBLE";
    case Status::precision_exhausted: return "PRECISION_EXHAUSTED";
    case Status::not_small: return "NOT_SMALL";
    case Status::non_commuting: return "NON_COMMUTING";
    case Status::property_violation: return "PROPERTY_VIOLATION";
  }
  return "UNKNOWN";
}

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::recursive_mutex& registry_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::map<std::tuple<int, int, int, int>, std::unique_ptr<Ring>>& registry() {
  static std::map<std::tuple<int, int, int, int>, std::unique_ptr<Ring>> r;
  return r;
}

}  // namespace

const Ring& Ring::get(const CyclotomicParams& params) {
  require(params.p >= 3 && is_prime(params.p), "p must be an odd prime");
  require(params.n >= 1, "cyclotomic level n must be >= 1");
  require(params.e >= 1, "precision e must be >= 1");
  require(params.g >= 0 && params.g < params.e, "guard must satisfy 0 <= g < e");
  int64_t N = params.p - 1;
  for (int i = 1; i < params.n; ++i) N *= params.p;
  require(N <= kMaxDegree, "phi(p^n) exceeds the supported degree " + std::to_string(kMaxDegree));
  long double q = 1;
  for (int i = 0; i < params.e; ++i) q *= params.p;
  require(q < 4.0e18L, "p^e too large for 64-bit residues");

  std::lock_guard<std::recursive_mutex> lock(registry_mutex());
  auto key = std::make_tuple(params.p, params.n, params.e, params.g);
  auto& slot = registry()[key];
  if (!slot) {
    slot.reset(new Ring(params));
    slot->init_constants();
  }
  return *slot;
}

const Ring& Ring::with_precision(int e2) const {
  CyclotomicParams pr = params_;
  pr.e = e2;
  if (pr.g >= e2) pr.g = e2 > 0 ? e2 - 1 : 0;
  return get(pr);
}

Ring::Ring(const CyclotomicParams& params) : params_(params) {
  int p = params.p;
  N_ = p - 1;
  for (int i = 1; i < params.n; ++i) N_ *= p;
  ppow_.assign(params.e + 1, 1);
  for (int i = 1; i <= params.e; ++i) ppow_[i] = ppow_[i - 1] * p;
  q_ = ppow_[params.e];

  int step = N_ / (p - 1);  // p^{n-1}
  // x^N = -(1 + x^step + ... + x^{(p-2) step})
  xpow_.assign(2 * N_, {});
  for (int i = 0; i < N_; ++i) xpow_[i][i] = 1;
  std::array<int64_t, kMaxDegree> top{};
  for (int k = 0; k <= p - 2; ++k) top[k * step] = q_ - 1;
  for (int i = N_; i < 2 * N_; ++i) {
    const auto& prev = xpow_[i - 1];
    std::array<int64_t, kMaxDegree> cur{};
    int64_t carry = prev[N_ - 1];
    for (int j = N_ - 1; j >= 1; --j) cur[j] = prev[j - 1];
    cur[0] = 0;
    for (int j = 0; j < N_; ++j) cur[j] = reduce(static_cast<__int128>(cur[j]) + static_cast<__int128>(carry) * top[j]);
    xpow_[i] = cur;
  }

  // Phi(x) - p divided by (x - 1)
  std::vector<int64_t> a(N_ + 1, 0);
  for (int k = 0; k <= p - 1; ++k) a[k * step] += 1;
  a[0] -= p;
  s_coeffs_.assign(N_, 0);
  int64_t acc = 0;
  for (int i = N_; i >= 1; --i) {
    acc += a[i];
    s_coeffs_[i - 1] = acc;
  }
}

void Ring::init_constants() {
  // p = prod_{k prime to p} (1 - zeta^k) = pi^N * prod_k (1 + zeta + ... + zeta^{k-1})
  int64_t pn = 1;
  for (int i = 0; i < params_.n; ++i) pn *= params_.p;
  RingElt v = one();
  RingElt z = gen();
  for (int64_t k = 1; k < pn; ++k) {
    if (k % params_.p == 0) continue;
    RingElt s = zero(), zk = one();
    for (int64_t j = 0; j < k; ++j) {
      s += zk;
      zk *= z;
    }
    v *= s;
  }
  v_coeffs_ = v.coeffs();
}

RingElt Ring::p_unit() const {
  RingElt v(*this);
  for (int i = 0; i < N_; ++i) v.c_[i] = v_coeffs_[i];
  return v;
}

RingElt Ring::zero() const { return RingElt(*this); }

RingElt Ring::one() const { return from_int(1); }

RingElt Ring::from_int(int64_t v) const {
  RingElt x(*this);
  x.c_[0] = reduce(v);
  return x;
}

RingElt Ring::gen() const {
  RingElt x(*this);
  if (N_ == 1) {
    x.c_[0] = reduce(1);  // unreachable for odd p
  } else {
    x.c_[1] = 1;
  }
  return x;
}

RingElt Ring::pi() const { return gen() - one(); }

RingElt Ring::from_coeffs(const std::vector<int64_t>& coeffs, int floor) const {
  require(static_cast<int>(coeffs.size()) <= N_, "too many coefficients for phi(p^n)");
  RingElt x(*this);
  for (size_t i = 0; i < coeffs.size(); ++i) x.c_[i] = reduce(coeffs[i]);
  if (floor >= 0) {
    require(floor <= params_.e, "floor exceeds precision e");
    x.floor_ = floor;
  }
  return x;
}

void Ring::mul_into(const int64_t* a, const int64_t* b, int64_t* out) const {
  const int N = N_;
  std::array<int64_t, 2 * kMaxDegree> prod{};
  if (q_ < (int64_t(1) << 31)) {
    for (int i = 0; i < N; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < N; ++j) {
        int64_t t = prod[i + j] + (a[i] * b[j]) % q_;
        prod[i + j] = t >= q_ ? t - q_ : t;
      }
    }
    for (int j = 0; j < N; ++j) out[j] = prod[j];
    for (int i = N; i < 2 * N - 1; ++i) {
      if (prod[i] == 0) continue;
      const auto& row = xpow_[i];
      for (int j = 0; j < N; ++j) {
        if (row[j] == 0) continue;
        out[j] = (out[j] + (prod[i] * row[j]) % q_) % q_;
      }
    }
    return;
  }
  for (int i = 0; i < N; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < N; ++j)
      prod[i + j] = reduce(static_cast<__int128>(prod[i + j]) + static_cast<__int128>(a[i]) * b[j] % q_);
  }
  for (int j = 0; j < N; ++j) out[j] = prod[j];
  for (int i = N; i < 2 * N - 1; ++i) {
    if (prod[i] == 0) continue;
    const auto& row = xpow_[i];
    for (int j = 0; j < N; ++j)
      if (row[j] != 0) out[j] = reduce(static_cast<__int128>(out[j]) + static_cast<__int128>(prod[i]) * row[j] % q_);
  }
}

// ---------------------------------------------------------------------------

int64_t Valuation::num() const {
  int64_t g = std::gcd<int64_t, int64_t>(k, N);
  return g == 0 ? 0 : k / g;
}

int64_t Valuation::den() const {
  int64_t g = std::gcd<int64_t, int64_t>(k, N);
  return g == 0 ? 1 : N / g;
}

std::string Valuation::str() const {
  if (precision_zero) return "PRECISION_ZERO";
  if (den() == 1) return std::to_string(num());
  return std::to_string(num()) + "/" + std::to_string(den());
}

std::vector<int64_t> RingElt::coeffs() const {
  return std::vector<int64_t>(c_.begin(), c_.begin() + R_->degree());
}

RingElt RingElt::operator+(const RingElt& o) const {
  RingElt r = *this;
  r += o;
  return r;
}

RingElt RingElt::operator-(const RingElt& o) const {
  RingElt r = *this;
  r -= o;
  return r;
}

RingElt RingElt::operator-() const {
  RingElt r(*R_);
  r.floor_ = floor_;
  const int64_t q = R_->modulus();
  for (int i = 0; i < R_->degree(); ++i) r.c_[i] = c_[i] == 0 ? 0 : q - c_[i];
  return r;
}

RingElt& RingElt::operator+=(const RingElt& o) {
  const int64_t q = R_->modulus();
  for (int i = 0; i < R_->degree(); ++i) {
    int64_t t = c_[i] + o.c_[i];
    c_[i] = t >= q ? t - q : t;
  }
  floor_ = std::min(floor_, o.floor_);
  return *this;
}

RingElt& RingElt::operator-=(const RingElt& o) {
  const int64_t q = R_->modulus();
  for (int i = 0; i < R_->degree(); ++i) {
    int64_t t = c_[i] - o.c_[i];
    c_[i] = t < 0 ? t + q : t;
  }
  floor_ = std::min(floor_, o.floor_);
  return *this;
}

RingElt RingElt::operator*(const RingElt& o) const {
  RingElt r(*R_);
  R_->mul_into(c_.data(), o.c_.data(), r.c_.data());
  r.floor_ = std::min(floor_, o.floor_);
  return r;
}

RingElt& RingElt::operator*=(const RingElt& o) {
  *this = *this * o;
  return *this;
}

RingElt RingElt::operator*(int64_t k) const {
  RingElt r(*R_);
  r.floor_ = floor_;
  int64_t kk = R_->reduce(k);
  for (int i = 0; i < R_->degree(); ++i) r.c_[i] = R_->reduce(static_cast<__int128>(c_[i]) * kk);
  return r;
}

bool RingElt::operator==(const RingElt& o) const {
  if (R_ != o.R_) return false;
  int f = std::min(floor_, o.floor_);
  int64_t m = R_->ppow(f);
  for (int i = 0; i < R_->degree(); ++i)
    if ((c_[i] - o.c_[i]) % m != 0) return false;
  return true;
}

bool RingElt::is_zero() const { return is_zero_mod(floor_); }

bool RingElt::is_zero_mod(int e2) const {
  int64_t m = R_->ppow(std::min(e2, R_->e()));
  for (int i = 0; i < R_->degree(); ++i)
    if (c_[i] % m != 0) return false;
  return true;
}

bool RingElt::is_unit() const { return at_one() % R_->p() != 0; }

RingElt RingElt::pow(int64_t k) const {
  RingElt base = *this, r = R_->one();
  r.floor_ = floor_;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

int64_t RingElt::at_one() const {
  __int128 s = 0;
  for (int i = 0; i < R_->degree(); ++i) s += c_[i];
  return R_->reduce(s);
}

RingElt RingElt::project(const Ring& target) const {
  require(target.p() == R_->p() && target.n() == R_->n(), "projection between unrelated rings");
  RingElt r(target);
  for (int i = 0; i < R_->degree(); ++i) r.c_[i] = c_[i] % target.modulus();
  r.floor_ = std::min(floor_, target.e());
  return r;
}

RingElt RingElt::lift(const Ring& target) const {
  require(target.p() == R_->p() && target.n() == R_->n(), "lift between unrelated rings");
  RingElt r(target);
  for (int i = 0; i < R_->degree(); ++i) r.c_[i] = c_[i];
  r.floor_ = std::min(floor_, target.e());
  return r;
}

std::string RingElt::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < R_->degree(); ++i) os << (i ? "," : "") << c_[i];
  os << "]@" << floor_;
  return os.str();
}

// ---------------------------------------------------------------------------

int vp_int(int64_t v, int p) {
  if (v == 0) return 1 << 20;
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

int vp_factorial(int64_t m, int p) {
  int k = 0;
  for (int64_t t = m / p; t > 0; t /= p) k += static_cast<int>(t);
  return k;
}

int digit_sum(int64_t m, int p) {
  int s = 0;
  for (; m > 0; m /= p) s += static_cast<int>(m % p);
  return s;
}

int64_t inverse_mod(int64_t a, int64_t m) {
  __int128 t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    __int128 qq = r / nr;
    __int128 tmp = t - qq * nt;
    t = nt;
    nt = tmp;
    tmp = r - qq * nr;
    r = nr;
    nr = tmp;
  }
  require(r == 1, "integer not invertible modulo p^e");
  if (t < 0) t += m;
  return static_cast<int64_t>(t);
}

RingElt div_pi(const RingElt& x) {
  const Ring& R = x.ring();
  const int N = R.degree();
  int64_t t = x.at_one();
  if (t % R.p() != 0) fail(Status::not_divisible, "element is not divisible by the uniformizer");
  // x(X) = (X - 1) q(X) + x(1)
  RingElt qpoly(R);
  int64_t acc = 0;
  for (int i = N - 1; i >= 1; --i) {
    acc = R.reduce(static_cast<__int128>(acc) + x[i]);
    qpoly.coeff(i - 1) = acc;
  }
  // x(1) = p s = -pi S(zeta) s
  int64_t s = t / R.p();
  const auto& S = R.s_coeffs();
  for (int i = 0; i < N; ++i)
    qpoly.coeff(i) = R.reduce(static_cast<__int128>(qpoly[i]) - static_cast<__int128>(s) * (S[i] % R.modulus()));
  qpoly.set_floor(x.floor());
  return qpoly;
}

namespace {

int content_vp(const RingElt& x) {
  const Ring& R = x.ring();
  int m = R.e();
  for (int i = 0; i < R.degree(); ++i)
    if (x[i] != 0) m = std::min(m, vp_int(x[i], R.p()));
  return m;
}

RingElt div_p_pow(const RingElt& x, int a) {
  const Ring& R = x.ring();
  RingElt r(R);
  r.set_floor(x.floor());
  int64_t d = R.ppow(a);
  for (int i = 0; i < R.degree(); ++i) r.coeff(i) = x[i] / d;
  return r;
}

}  // namespace

int pi_valuation(const RingElt& x) {
  const Ring& R = x.ring();
  int m = content_vp(x);
  if (m >= R.e()) return R.length();
  RingElt y = div_p_pow(x, m);
  int k = 0;
  while (y.at_one() % R.p() == 0) {
    y = div_pi(y);
    ++k;
  }
  return R.degree() * m + k;
}

Valuation val(const RingElt& x) {
  const Ring& R = x.ring();
  Valuation v;
  v.N = R.degree();
  RingElt y = x.project(R.with_precision(std::max(1, x.floor()))).lift(R);
  if (x.floor() == 0 || y.is_zero_mod(R.e())) {
    v.precision_zero = true;
    return v;
  }
  v.k = pi_valuation(y);
  return v;
}

RingElt div_pi_pow(const RingElt& x, int k) {
  const Ring& R = x.ring();
  const int N = R.degree();
  int a = k / N, b = k % N;
  RingElt y = x;
  if (a > 0) {
    for (int i = 0; i < N; ++i)
      if (x[i] % R.ppow(std::min(a, R.e())) != 0) fail(Status::not_divisible, "element not divisible by pi^k");
    if (a >= R.e()) return R.zero();
    y = div_p_pow(x, a) * R.p_unit().pow(a);
    y.set_floor(x.floor());
  }
  for (int i = 0; i < b; ++i) y = div_pi(y);
  return y;
}

RingElt unit_inverse(const RingElt& u) {
  const Ring& R = u.ring();
  int64_t u1 = u.at_one() % R.p();
  if (u1 == 0) fail(Status::not_divisible, "element is not a unit");
  RingElt uu = u;
  uu.set_floor(R.e());
  RingElt v = R.from_int(inverse_mod(u1, R.p()));
  RingElt two = R.from_int(2);
  RingElt one = R.one();
  for (int it = 0; it < 64; ++it) {
    RingElt uv = uu * v;
    if (uv == one) break;
    v = v * (two - uv);
  }
  v.set_floor(u.floor());
  return v;
}

std::pair<int, RingElt> split_unit(const RingElt& x) {
  const Ring& R = x.ring();
  int k = pi_valuation(x);
  if (k >= R.length()) return {k, R.one()};
  return {k, div_pi_pow(x, k)};
}

RingElt raw_div(const RingElt& x, const RingElt& y) {
  const Ring& R = x.ring();
  auto [ky, uy] = split_unit(y);
  if (ky >= R.length()) fail(Status::not_divisible, "division by zero");
  int kx = pi_valuation(x);
  if (kx >= R.length()) return R.zero();
  if (kx < ky) fail(Status::not_divisible, "valuation of dividend below divisor");
  return div_pi_pow(x, ky) * unit_inverse(uy);
}

RingElt exact_div(const RingElt& x, const RingElt& y) {
  const Ring& R = x.ring();
  require(&R == &y.ring(), "exact_div across different rings");
  Valuation vy = val(y);
  require(!vy.precision_zero, "exact_div by a precision-zero element");
  int f = std::min(x.floor(), y.floor());
  int loss = (vy.k + R.degree() - 1) / R.degree();
  int qfloor = f - loss;
  const Ring& Rf = R.with_precision(f);
  RingElt xr = x.project(Rf).lift(R);
  RingElt yr = y.project(Rf).lift(R);
  RingElt q(R);
  if (!xr.is_zero_mod(R.e())) {
    if (pi_valuation(xr) < vy.k) fail(Status::not_divisible, "exact_div: no quotient exists");
    q = raw_div(xr, yr);
  }
  if (qfloor < R.guard())
    fail(Status::precision_exhausted, "exact_div: precision floor would fall below the guard");
  q.set_floor(qfloor);
  return q;
}

RingElt zeta(const Ring& R, int k) {
  require(k >= 1 && k <= R.n(), "zeta level out of range");
  int64_t ex = 1;
  for (int i = 0; i < R.n() - k; ++i) ex *= R.p();
  return R.gen().pow(ex);
}

RingElt zeta_alpha(const Ring& R, int64_t num, int level) {
  require(level >= 0, "negative level");
  int64_t den = 1;
  for (int i = 0; i < level; ++i) den *= R.p();
  num = ((num % den) + den) % den;
  while (level > 0 && num % R.p() == 0) {
    num /= R.p();
    --level;
    den /= R.p();
  }
  if (num == 0) return R.one();
  require(level <= R.n(), "zeta_alpha: denominator level exceeds n");
  return zeta(R, level).pow(num);
}

RingElt rho_K(const Ring& R) { return zeta(R, 1) - R.one(); }

RingElt exact_constant(const Ring& R, const std::function<RingElt(const Ring&)>& base, int m,
                       int64_t divisor) {
  require(divisor != 0, "exact_constant: zero divisor");
  int v = vp_int(divisor, R.p());
  int64_t unit = divisor;
  for (int i = 0; i < v; ++i) unit /= R.p();
  const Ring& up = R.with_precision(R.e() + v);
  RingElt num = base(up).pow(m);
  for (int i = 0; i < R.degree(); ++i)
    if (num[i] % up.ppow(v) != 0) fail(Status::not_divisible, "exact_constant: numerator not divisible");
  RingElt r(R);
  for (int i = 0; i < R.degree(); ++i) r.coeff(i) = (num[i] / up.ppow(v)) % R.modulus();
  return r * inverse_mod(unit, R.modulus());
}

RingElt divided_power(const Ring& R, const std::function<RingElt(const Ring&)>& base, int m) {
  int v = vp_factorial(m, R.p());
  int64_t unit = 1;
  for (int k = 2; k <= m; ++k) {
    int64_t t = k;
    while (t % R.p() == 0) t /= R.p();
    unit = R.reduce(static_cast<__int128>(unit) * t);
  }
  const Ring& up = R.with_precision(R.e() + v);
  RingElt num = base(up).pow(m);
  for (int i = 0; i < R.degree(); ++i)
    if (num[i] % up.ppow(v) != 0) fail(Status::not_divisible, "divided_power: numerator not divisible");
  RingElt r(R);
  for (int i = 0; i < R.degree(); ++i) r.coeff(i) = (num[i] / up.ppow(v)) % R.modulus();
  return r * inverse_mod(unit, R.modulus());
}

namespace {

struct ConstCache {
  std::mutex mu;
  std::map<std::tuple<const Ring*, int, int>, RingElt> values;
};

ConstCache& const_cache() {
  static ConstCache c;
  return c;
}

RingElt cached(const Ring& R, int kind, int m, const std::function<RingElt()>& make) {
  auto& cache = const_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.values.find({&R, kind, m});
    if (it != cache.values.end()) return it->second;
  }
  RingElt v = make();
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.values.emplace(std::make_tuple(&R, kind, m), v);
  return v;
}

}  // namespace

RingElt pd_power_zeta(const Ring& R, int m) {
  require(m >= 0, "pd_power_zeta: negative index");
  return cached(R, 0, m, [&] { return divided_power(R, [](const Ring& L) { return rho_K(L); }, m); });
}

RingElt c_const(const Ring& R) {
  RingElt z = rho_K(R);
  return z * z;
}

RingElt c_pd_power(const Ring& R, int m) {
  require(m >= 0, "c_pd_power: negative index");
  return cached(R, 1, m, [&] { return divided_power(R, [](const Ring& L) { return c_const(L); }, m); });
}

}  // namespace simpson
