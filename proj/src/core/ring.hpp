#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"

namespace simpson {

// Largest supported phi(p^n); covers p=3 up to n=3, p=5 up to n=2, primes <= 23 at n=1.
constexpr int kMaxDegree = 24;

struct CyclotomicParams {
  int p = 3;
  int n = 1;
  int e = 8;
  int g = 2;
  bool operator==(const CyclotomicParams&) const = default;
};

class RingElt;

// Z[zeta_{p^n}]/(p^e) in the power basis modulo the p^n-th cyclotomic polynomial.
class Ring {
 public:
  static const Ring& get(const CyclotomicParams& params);
  static const Ring& get(int p, int n, int e, int g = 2) { return get(CyclotomicParams{p, n, e, g}); }

  const CyclotomicParams& params() const { return params_; }
  int p() const { return params_.p; }
  int n() const { return params_.n; }
  int e() const { return params_.e; }
  int guard() const { return params_.g; }
  int degree() const { return N_; }
  // pi-adic nilpotency index: pi^L = 0.
  int length() const { return N_ * params_.e; }
  int64_t modulus() const { return q_; }
  int64_t ppow(int k) const { return ppow_[k]; }

  // Same cyclotomic level, different precision.
  const Ring& with_precision(int e2) const;
  const Ring& guarded() const { return with_precision(params_.e - params_.g); }

  RingElt zero() const;
  RingElt one() const;
  RingElt from_int(int64_t v) const;
  RingElt gen() const;  // zeta_{p^n}
  RingElt pi() const;   // zeta_{p^n} - 1
  RingElt from_coeffs(const std::vector<int64_t>& coeffs, int floor = -1) const;

  int64_t reduce(__int128 v) const {
    int64_t r = static_cast<int64_t>(v % q_);
    return r < 0 ? r + q_ : r;
  }

  // internals shared with RingElt
  void mul_into(const int64_t* a, const int64_t* b, int64_t* out) const;
  RingElt p_unit() const;  // unit v with p = pi^N * v
  const std::vector<int64_t>& s_coeffs() const { return s_coeffs_; }

 private:
  explicit Ring(const CyclotomicParams& params);
  void init_constants();

  CyclotomicParams params_;
  int N_ = 0;
  int64_t q_ = 0;
  std::vector<int64_t> ppow_;
  // reduction table: x^i for i < 2N expressed in the power basis
  std::vector<std::array<int64_t, kMaxDegree>> xpow_;
  std::vector<int64_t> s_coeffs_;  // S(x) = (Phi(x) - p)/(x - 1), so p = -pi * S(zeta)
  std::vector<int64_t> v_coeffs_;
};

struct Valuation {
  bool precision_zero = false;
  int k = 0;  // exponent of pi
  int N = 1;  // phi(p^n); the p-normalised value is k/N
  // reduced fraction of k/N
  int64_t num() const;
  int64_t den() const;
  std::string str() const;
  double value() const { return static_cast<double>(k) / N; }
};

class RingElt {
 public:
  RingElt() = default;
  explicit RingElt(const Ring& R) : R_(&R), floor_(R.e()) {}

  const Ring& ring() const { return *R_; }
  bool valid() const { return R_ != nullptr; }
  int floor() const { return floor_; }
  void set_floor(int f) { floor_ = f; }
  int64_t operator[](int i) const { return c_[i]; }
  int64_t& coeff(int i) { return c_[i]; }
  const int64_t* data() const { return c_.data(); }
  int64_t* data() { return c_.data(); }
  std::vector<int64_t> coeffs() const;

  RingElt operator+(const RingElt& o) const;
  RingElt operator-(const RingElt& o) const;
  RingElt operator-() const;
  RingElt operator*(const RingElt& o) const;
  RingElt operator*(int64_t k) const;
  RingElt& operator+=(const RingElt& o);
  RingElt& operator-=(const RingElt& o);
  RingElt& operator*=(const RingElt& o);

  // Equality modulo p^min(floor, other.floor).
  bool operator==(const RingElt& o) const;
  bool is_zero() const;  // zero modulo p^floor
  bool is_zero_mod(int e2) const;
  bool is_unit() const;
  RingElt pow(int64_t k) const;

  // Sum of coefficients, i.e. the image under zeta -> 1, as an integer mod p^e.
  int64_t at_one() const;

  // Reduce into a ring of lower precision (same p, n).
  RingElt project(const Ring& target) const;
  // Lift coefficients verbatim into a ring of higher precision.
  RingElt lift(const Ring& target) const;

  std::string str() const;

 private:
  friend class Ring;
  const Ring* R_ = nullptr;
  int floor_ = 0;
  std::array<int64_t, kMaxDegree> c_{};
};

inline RingElt operator*(int64_t k, const RingElt& x) { return x * k; }

// chain-ring primitives
int pi_valuation(const RingElt& x);  // returns ring.length() for zero (ignores floor)
Valuation val(const RingElt& x);     // respects floor; precision_zero when x = 0 mod p^floor
RingElt div_pi(const RingElt& x);    // requires at_one() divisible by p
RingElt div_pi_pow(const RingElt& x, int k);
RingElt unit_inverse(const RingElt& u);
// q with q*y = x, assuming pi_valuation(x) >= pi_valuation(y); no floor bookkeeping.
RingElt raw_div(const RingElt& x, const RingElt& y);
// Split x = pi^k * u with u a unit (u = 1 when x is zero).
std::pair<int, RingElt> split_unit(const RingElt& x);

// Public operations.
RingElt zeta(const Ring& R, int k);
RingElt zeta_alpha(const Ring& R, int64_t num, int level);
RingElt rho_K(const Ring& R);
RingElt exact_div(const RingElt& x, const RingElt& y);
RingElt pd_power_zeta(const Ring& R, int m);

// p-adic valuation of an integer / of m!.
int vp_int(int64_t v, int p);
int vp_factorial(int64_t m, int p);
int digit_sum(int64_t m, int p);

// Exact constant (base^m)/divisor evaluated at full precision.  `base` builds an exact
// element of Z[zeta] in whatever ring it is handed, so the division happens before
// reducing mod p^e and no precision is lost.
RingElt exact_constant(const Ring& R, const std::function<RingElt(const Ring&)>& base, int m,
                       int64_t divisor);
// base^m / m!
RingElt divided_power(const Ring& R, const std::function<RingElt(const Ring&)>& base, int m);
int64_t inverse_mod(int64_t a, int64_t m);

// c = rho_K * (zeta_p - 1), and the divided powers c^[m] = c^m/m!.
RingElt c_const(const Ring& R);
RingElt c_pd_power(const Ring& R, int m);

}  // namespace simpson
