#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lienil {

// Thrown when a computation would exceed a configured resource cap.
// Deliberately distinct from logic/domain errors: callers must report
// "cap exceeded" and never confuse it with a mathematical verdict.
struct cap_exceeded : std::runtime_error {
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Coefficient field descriptor: characteristic 0 (the rationals) or a prime
// p >= 5. Characteristics 2 and 3 are rejected at construction; nothing in
// this library is valid over them.
struct FieldSpec {
  unsigned long characteristic = 0;

  FieldSpec() = default;
  explicit FieldSpec(unsigned long ch) : characteristic(ch) {
    if (ch == 0) return;
    if (ch == 2 || ch == 3)
      throw std::domain_error("FieldSpec: characteristic 2 and 3 are not supported");
    if (!is_prime(ch))
      throw std::domain_error("FieldSpec: characteristic must be 0 or a prime");
  }

  bool operator==(const FieldSpec&) const = default;
};

// Exact rational arithmetic, characteristic 0.
class Rationals {
 public:
  using Elem = mpq_class;

  unsigned long characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec(0); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_long(long n) const { return Elem(n); }
  Elem from_ratio(long num, long den) const {
    if (den == 0) throw std::domain_error("Rationals: zero denominator");
    Elem r(num, den);
    r.canonicalize();
    return r;
  }
  Elem from_mpz(const mpz_class& z) const { return Elem(z); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("Rationals: inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string str(const Elem& a) const { return a.get_str(); }
  bool operator==(const Rationals&) const { return true; }
};

// Arithmetic in the prime field F_p, p >= 5. Elements are residues in [0, p).
class PrimeField {
 public:
  using Elem = std::int64_t;

  explicit PrimeField(unsigned long p) : p_(static_cast<Elem>(p)) {
    FieldSpec check(p);
    if (p == 0) throw std::domain_error("PrimeField: characteristic must be positive");
  }

  unsigned long characteristic() const { return static_cast<unsigned long>(p_); }
  FieldSpec spec() const { return FieldSpec(characteristic()); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_long(long n) const {
    Elem r = static_cast<Elem>(n % p_);
    return r < 0 ? r + p_ : r;
  }
  Elem from_ratio(long num, long den) const { return div(from_long(num), from_long(den)); }
  Elem from_mpz(const mpz_class& z) const {
    unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p_));
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const {
    Elem r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  Elem sub(Elem a, Elem b) const {
    Elem r = a - b;
    return r < 0 ? r + p_ : r;
  }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return pow_mod(a, p_ - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string str(Elem a) const { return std::to_string(a); }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  Elem pow_mod(Elem base, Elem e) const {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Elem p_;
};

// Runtime scalar carrying its field; the exchange type at the CLI/parser
// boundary. The core library is templated on the field and does not pay for
// the tag.
class Scalar {
 public:
  Scalar() : spec_(0), rat_(0), res_(0) {}

  static Scalar rational(const mpq_class& v) {
    Scalar s;
    s.spec_ = FieldSpec(0);
    s.rat_ = v;
    return s;
  }
  static Scalar residue(unsigned long p, long v) {
    Scalar s;
    s.spec_ = FieldSpec(p);
    s.res_ = PrimeField(p).from_long(v);
    return s;
  }

  const FieldSpec& field() const { return spec_; }
  const mpq_class& rational_value() const { return rat_; }
  std::int64_t residue_value() const { return res_; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return a.binop(b, [](const Rationals& f, auto x, auto y) { return f.add(x, y); },
                   [](const PrimeField& f, auto x, auto y) { return f.add(x, y); });
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return a.binop(b, [](const Rationals& f, auto x, auto y) { return f.mul(x, y); },
                   [](const PrimeField& f, auto x, auto y) { return f.mul(x, y); });
  }
  Scalar operator-() const {
    Scalar r = *this;
    if (spec_.characteristic == 0)
      r.rat_ = -rat_;
    else
      r.res_ = PrimeField(spec_.characteristic).neg(res_);
    return r;
  }
  Scalar inverse() const {
    Scalar r = *this;
    if (spec_.characteristic == 0)
      r.rat_ = Rationals().inv(rat_);
    else
      r.res_ = PrimeField(spec_.characteristic).inv(res_);
    return r;
  }
  bool is_zero() const { return spec_.characteristic == 0 ? rat_ == 0 : res_ == 0; }
  bool operator==(const Scalar& o) const {
    return spec_ == o.spec_ && rat_ == o.rat_ && res_ == o.res_;
  }

  std::string str() const {
    return spec_.characteristic == 0 ? rat_.get_str() : std::to_string(res_);
  }

 private:
  template <class FQ, class FP>
  Scalar binop(const Scalar& o, FQ fq, FP fp) const {
    if (!(spec_ == o.spec_)) throw std::domain_error("Scalar: mixed-field operands");
    Scalar r = *this;
    if (spec_.characteristic == 0)
      r.rat_ = fq(Rationals(), rat_, o.rat_);
    else
      r.res_ = fp(PrimeField(spec_.characteristic), res_, o.res_);
    return r;
  }

  FieldSpec spec_;
  mpq_class rat_;
  std::int64_t res_;
};

inline mpz_class binomial_mpz(unsigned long n, unsigned long k) {
  if (k > n) throw std::domain_error("binomial: k > n");
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// C(n, k) reduced into the field.
template <class F>
typename F::Elem binomial(const F& field, unsigned long n, unsigned long k) {
  return field.from_mpz(binomial_mpz(n, k));
}

inline Scalar binomial(unsigned long n, unsigned long k, const FieldSpec& f) {
  if (f.characteristic == 0) return Scalar::rational(mpq_class(binomial_mpz(n, k)));
  PrimeField fp(f.characteristic);
  return Scalar::residue(f.characteristic, binomial(fp, n, k));
}

// Largest e with p^e | n.
inline unsigned p_adic_valuation(unsigned long n, unsigned long p) {
  if (n == 0) throw std::domain_error("p_adic_valuation: n must be positive");
  if (p < 2) throw std::domain_error("p_adic_valuation: p must be a prime");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline mpz_class factorial_mpz(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace lienil
