#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lienil/tgrade.hpp"

namespace lienil {

// Commutative polynomial in two variables; the coefficient ring of the
// closed-form model below.
template <class F>
class CommPoly {
 public:
  using Elem = typename F::Elem;
  using Mono = std::pair<long, long>;

  explicit CommPoly(const F& field) : field_(field) {}
  static CommPoly monomial(const F& field, long a, long b, const Elem& c) {
    CommPoly p(field);
    p.add_term(a, b, c);
    return p;
  }

  const F& field() const { return field_; }
  const std::map<Mono, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(long a, long b, const Elem& c) {
    if (a < 0 || b < 0) throw std::domain_error("CommPoly: negative exponent");
    if (field_.is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(Mono{a, b}, c);
    if (!fresh) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  friend CommPoly operator+(const CommPoly& x, const CommPoly& y) {
    CommPoly r = x;
    for (auto& [m, c] : y.terms_) r.add_term(m.first, m.second, c);
    return r;
  }
  friend CommPoly operator-(const CommPoly& x, const CommPoly& y) {
    CommPoly r = x;
    for (auto& [m, c] : y.terms_) r.add_term(m.first, m.second, x.field_.neg(c));
    return r;
  }
  friend CommPoly operator*(const CommPoly& x, const CommPoly& y) {
    CommPoly r(x.field_);
    for (auto& [ma, ca] : x.terms_)
      for (auto& [mb, cb] : y.terms_)
        r.add_term(ma.first + mb.first, ma.second + mb.second, x.field_.mul(ca, cb));
    return r;
  }
  CommPoly scaled(const Elem& c) const {
    CommPoly r(field_);
    for (auto& [m, k] : terms_) r.add_term(m.first, m.second, field_.mul(k, c));
    return r;
  }

  bool operator==(const CommPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (auto& [m, c] : terms_) {
      if (m != it->first || !field_.eq(c, it->second)) return false;
      ++it;
    }
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += field_.str(it->second);
      if (it->first.first) s += "*x^" + std::to_string(it->first.first);
      if (it->first.second) s += "*y^" + std::to_string(it->first.second);
    }
    return s;
  }

 private:
  F field_;
  std::map<Mono, Elem> terms_;
};

// Closed-form element of the rank-2 algebra with the identity [[a,b],c] = 0:
// u + c*v with u, v commutative and c = [x,y] central, c^2 = 0. Products pick
// up the straightening correction delta(x^a y^b, x^e y^f) = -b*e *
// x^{a+e-1} y^{b+f-1}.
template <class F>
class F23 {
 public:
  using Elem = typename F::Elem;

  explicit F23(const F& field) : u_(field), v_(field) {}
  F23(CommPoly<F> u, CommPoly<F> v) : u_(std::move(u)), v_(std::move(v)) {}

  static F23 unit(const F& field) { return F23(CommPoly<F>::monomial(field, 0, 0, field.one()), CommPoly<F>(field)); }
  static F23 x(const F& field) { return F23(CommPoly<F>::monomial(field, 1, 0, field.one()), CommPoly<F>(field)); }
  static F23 y(const F& field) { return F23(CommPoly<F>::monomial(field, 0, 1, field.one()), CommPoly<F>(field)); }

  const CommPoly<F>& u() const { return u_; }
  const CommPoly<F>& v() const { return v_; }
  const F& field() const { return u_.field(); }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

  friend F23 operator+(const F23& a, const F23& b) { return F23(a.u_ + b.u_, a.v_ + b.v_); }
  friend F23 operator-(const F23& a, const F23& b) { return F23(a.u_ - b.u_, a.v_ - b.v_); }
  F23 scaled(const Elem& c) const { return F23(u_.scaled(c), v_.scaled(c)); }

  friend F23 operator*(const F23& a, const F23& b) {
    const F& f = a.field();
    CommPoly<F> u = a.u_ * b.u_;
    CommPoly<F> v = a.u_ * b.v_ + a.v_ * b.u_;
    // delta correction from straightening y-powers of a.u past x-powers of b.u
    for (auto& [ma, ca] : a.u_.terms())
      for (auto& [mb, cb] : b.u_.terms()) {
        long bexp = ma.second, eexp = mb.first;
        if (bexp == 0 || eexp == 0) continue;
        Elem coeff = f.mul(ca, cb);
        coeff = f.mul(coeff, f.from_long(-bexp * eexp));
        v.add_term(ma.first + mb.first - 1, ma.second + mb.second - 1, coeff);
      }
    return F23(std::move(u), std::move(v));
  }

  bool operator==(const F23& o) const { return u_ == o.u_ && v_ == o.v_; }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    if (!u_.is_zero()) s += u_.str();
    if (!v_.is_zero()) {
      if (!s.empty()) s += " + ";
      s += "[x,y]*(" + v_.str() + ")";
    }
    return s;
  }

 private:
  CommPoly<F> u_, v_;
};

template <class F>
F23<F> f23_commutator(const F23<F>& a, const F23<F>& b) {
  return a * b - b * a;
}

// Image of a free rank-2 polynomial under the quotient onto the model.
template <class F>
F23<F> f23_reduce(const Poly<F>& p) {
  if (p.rank() > 2) throw std::domain_error("f23_reduce: rank must be <= 2");
  const F& f = p.field();
  F23<F> acc(f);
  for (auto& [w, c] : p.terms()) {
    F23<F> m = F23<F>::unit(f);
    for (Letter l : w) m = m * (l == 0 ? F23<F>::x(f) : F23<F>::y(f));
    acc = acc + m.scaled(c);
  }
  return acc;
}

inline bool is_prime_power_of(long q, long p) {
  if (q < p) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

// f(q1, q2) = [x,y] x^{q1-1} y^{q2-1}, the closed-form generator of the
// commutator-ideal components. Special when both q1 and q2 are powers of the
// characteristic.
template <class F>
struct SpecialPoly {
  long q1, q2;
  bool special;
  F23<F> element;
};

template <class F>
SpecialPoly<F> special_poly(const F& field, long q1, long q2) {
  if (q1 < 1 || q2 < 1) throw std::domain_error("special_poly: exponents must be positive");
  long p = static_cast<long>(field.characteristic());
  bool special = p > 0 && is_prime_power_of(q1, p) && is_prime_power_of(q2, p);
  F23<F> elem(CommPoly<F>(field), CommPoly<F>::monomial(field, q1 - 1, q2 - 1, field.one()));
  return SpecialPoly<F>{q1, q2, special, elem};
}

// The same element as a free rank-2 polynomial.
template <class F>
Poly<F> special_poly_free(const F& field, long q1, long q2) {
  auto x = Poly<F>::generator(field, 2, 0), y = Poly<F>::generator(field, 2, 1);
  return commutator(x, y) * x.pow(static_cast<int>(q1 - 1)) * y.pow(static_cast<int>(q2 - 1));
}

// ---- substitution patterns and the consequence coefficient ----------------

// One linearization-and-substitution pattern: for each original variable a
// multiset of (multiplicity, monomial image) parts. Multiplicities sum to the
// source bidegree; images may be the unit.
struct PatternPart {
  long mult;
  long ax, ay;  // image monomial exponents
};

struct SubstPattern {
  std::vector<PatternPart> xs, ys;
};

inline std::string pattern_str(const SubstPattern& pat) {
  auto side = [](const std::vector<PatternPart>& parts) {
    std::string s = "{";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ", ";
      s += std::to_string(parts[i].mult) + ":x^" + std::to_string(parts[i].ax) + "y^" +
           std::to_string(parts[i].ay);
    }
    return s + "}";
  };
  return "x-parts " + side(pat.xs) + " y-parts " + side(pat.ys);
}

// The scalar L with eta(f(q1,q2)^sigma) = L * f(r1,r2):
//   L = det[[a,b],[c,d]] * N1/(n_1...n_k) * N2/(m_1...m_l),
// (a,b) and (c,d) the weighted exponent sums of the two sides, N1 and N2 the
// falling multinomials (q-1)!/prod (parts-1)!.
inline mpq_class consequence_coefficient(const SubstPattern& pat, long q1, long q2) {
  auto side = [](const std::vector<PatternPart>& parts, long q, long& a, long& b,
                 mpq_class& factor) {
    long total = 0;
    mpz_class num = factorial_mpz(static_cast<unsigned long>(q - 1));
    mpz_class den = 1;
    a = b = 0;
    for (auto& part : parts) {
      if (part.mult < 1 || part.ax < 0 || part.ay < 0)
        throw std::domain_error("consequence_coefficient: malformed part");
      total += part.mult;
      a += part.mult * part.ax;
      b += part.mult * part.ay;
      num /= factorial_mpz(static_cast<unsigned long>(part.mult - 1));
      den *= part.mult;
    }
    if (total != q)
      throw std::domain_error("consequence_coefficient: multiplicities do not sum to the bidegree");
    factor = mpq_class(num, den);
    factor.canonicalize();
  };
  long a, b, c, d;
  mpq_class f1, f2;
  side(pat.xs, q1, a, b, f1);
  side(pat.ys, q2, c, d, f2);
  mpq_class det(a * d - b * c);
  mpq_class L = det * f1 * f2;
  L.canonicalize();
  return L;
}

// Direct expansion of one pattern instance: select the linearization
// component with the pattern's multiplicities, substitute the monomial
// images, reduce into the model. The branch count is the product of the
// multinomial coefficients of the multiplicity vectors.
template <class F>
F23<F> eta_instance(const Poly<F>& g, const SubstPattern& pat, long max_branches = 2000000) {
  if (g.rank() > 2) throw std::domain_error("eta_instance: rank-2 generators only");
  const F& f = g.field();
  const std::vector<PatternPart>* sides[2] = {&pat.xs, &pat.ys};
  std::vector<std::vector<long>> budget(2);
  for (int v = 0; v < 2; ++v)
    for (auto& part : *sides[v]) budget[v].push_back(part.mult);

  F23<F> acc(f);
  long branches = 0;
  for (auto& [word, coeff] : g.terms()) {
    Word image;
    auto rec = [&](auto&& self, size_t pos) -> void {
      if (pos == word.size()) {
        if (++branches > max_branches) throw cap_exceeded("eta_instance: branch cap");
        Poly<F> mono = Poly<F>::monomial(f, 2, image, coeff);
        acc = acc + f23_reduce(mono);
        return;
      }
      int v = word[pos] == 0 ? 0 : 1;
      for (size_t k = 0; k < sides[v]->size(); ++k) {
        if (budget[v][k] == 0) continue;
        --budget[v][k];
        auto& part = (*sides[v])[k];
        image.insert(image.end(), static_cast<size_t>(part.ax), Letter{0});
        image.insert(image.end(), static_cast<size_t>(part.ay), Letter{1});
        self(self, pos + 1);
        image.resize(image.size() - static_cast<size_t>(part.ax + part.ay));
        ++budget[v][k];
      }
    };
    rec(rec, 0);
  }
  return acc;
}

// ---- T-consequence inside the model ---------------------------------------

struct TconsequenceOptions {
  EngineCaps caps;
  // prefer the coefficient formula for commutator-shape generators; the
  // expansion route through the free algebra is the fallback
  bool allow_formula = true;
};

template <class F>
struct TconsequenceResult {
  bool member = false;
  std::string witness;    // description of a spanning combination, on success
  long instances = 0;     // spanning instances enumerated
  int span_dim = 0;       // rank of the instance span (completeness certificate)
  int target_dim = 0;     // dimension of the ambient bidegree component
};

namespace detail {

template <class F>
std::optional<std::pair<long, long>> f23_bidegree(const F23<F>& e) {
  std::optional<std::pair<long, long>> deg;
  for (auto& [m, c] : e.u().terms()) {
    std::pair<long, long> d{m.first, m.second};
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  for (auto& [m, c] : e.v().terms()) {
    std::pair<long, long> d{m.first + 1, m.second + 1};
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

inline void partitions_of(long q, std::vector<std::vector<long>>& out) {
  std::vector<long> cur;
  auto rec = [&](auto&& self, long left, long maxpart) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (long m = std::min(left, maxpart); m >= 1; --m) {
      cur.push_back(m);
      self(self, left - m, m);
      cur.pop_back();
    }
  };
  rec(rec, q, q);
}

// reachable aggregates (a,b) = sum mult_i * (ax_i, ay_i) over all image
// assignments (the unit included), as a grid up to (A, B). Adding one part of
// multiplicity m is a Minkowski sum with {m*da} x {m*db}, so two strided OR
// sweeps per part.
inline std::vector<std::vector<char>> reachable_grid(const std::vector<long>& mults, long A,
                                                     long B) {
  std::vector<std::vector<char>> reach(A + 1, std::vector<char>(B + 1, 0));
  reach[0][0] = 1;
  for (long m : mults) {
    for (long i = m; i <= A; ++i)
      for (long j = 0; j <= B; ++j) reach[i][j] |= reach[i - m][j];
    for (long i = 0; i <= A; ++i)
      for (long j = m; j <= B; ++j) reach[i][j] |= reach[i][j - m];
  }
  return reach;
}

inline bool aggregate_reachable(const std::vector<long>& mults, long a, long b) {
  return reachable_grid(mults, a, b)[a][b] != 0;
}

inline long legendre_valuation(long n, long p) {
  // v_p(n!)
  long v = 0;
  while (n > 0) {
    n /= p;
    v += n;
  }
  return v;
}

// v_p of N/(prod n_i) with N = (q-1)!/prod (n_i - 1)!
inline long side_valuation(const std::vector<long>& mults, long q, long p) {
  long v = legendre_valuation(q - 1, p);
  for (long m : mults) {
    v -= legendre_valuation(m - 1, p);
    v -= static_cast<long>(p_adic_valuation(static_cast<unsigned long>(m),
                                            static_cast<unsigned long>(p)));
  }
  return v;
}

constexpr long valuation_infinity = 1L << 40;

// Per-cell minimum of the side valuation over all multiplicity partitions of
// q that can reach the cell. Shared by the span computation and the
// divisibility certificate: the coefficient of a pattern class factors as
// det * (x-side) * (y-side), and the sides range independently.
inline std::vector<std::vector<long>> min_valuation_grid(long q, long p, long A, long B) {
  std::vector<std::vector<long>> best(A + 1, std::vector<long>(B + 1, valuation_infinity));
  std::vector<std::vector<long>> parts;
  detail::partitions_of(q, parts);
  for (auto& mults : parts) {
    long v = side_valuation(mults, q, p);
    auto reach = reachable_grid(mults, A, B);
    for (long i = 0; i <= A; ++i)
      for (long j = 0; j <= B; ++j)
        if (reach[i][j] && v < best[i][j]) best[i][j] = v;
  }
  return best;
}

// Minimum p-adic valuation of a nonzero consequence coefficient from the
// degree-(q1,q2) commutator-shape generator into the (r1,r2) component, over
// every substitution pattern; valuation_infinity when every coefficient
// vanishes. With p = 0 the result is 0 when some coefficient is nonzero.
inline long cshape_min_valuation(long q1, long q2, long r1, long r2, long p) {
  if (r1 < 1 || r2 < 1) return valuation_infinity;
  if (p == 0) {
    std::vector<std::vector<long>> px, py;
    detail::partitions_of(q1, px);
    detail::partitions_of(q2, py);
    std::vector<std::vector<char>> rx(r1 + 1, std::vector<char>(r2 + 1, 0));
    std::vector<std::vector<char>> ry(r1 + 1, std::vector<char>(r2 + 1, 0));
    for (auto& m : px) {
      auto g = detail::reachable_grid(m, r1, r2);
      for (long i = 0; i <= r1; ++i)
        for (long j = 0; j <= r2; ++j) rx[i][j] |= g[i][j];
    }
    for (auto& m : py) {
      auto g = detail::reachable_grid(m, r1, r2);
      for (long i = 0; i <= r1; ++i)
        for (long j = 0; j <= r2; ++j) ry[i][j] |= g[i][j];
    }
    for (long a = 0; a <= r1; ++a)
      for (long b = 0; b <= r2; ++b) {
        long c = r1 - a, d = r2 - b;
        if (rx[a][b] && ry[c][d] && a * d - b * c != 0) return 0;
      }
    return valuation_infinity;
  }
  auto vx = min_valuation_grid(q1, p, r1, r2);
  auto vy = min_valuation_grid(q2, p, r1, r2);
  long best = valuation_infinity;
  for (long a = 0; a <= r1; ++a)
    for (long b = 0; b <= r2; ++b) {
      long c = r1 - a, d = r2 - b;
      if (vx[a][b] >= valuation_infinity || vy[c][d] >= valuation_infinity) continue;
      long det = a * d - b * c;
      if (det == 0) continue;
      long v = vx[a][b] + vy[c][d] +
               static_cast<long>(p_adic_valuation(static_cast<unsigned long>(det > 0 ? det : -det),
                                                  static_cast<unsigned long>(p)));
      if (v < best) best = v;
    }
  return best;
}

}  // namespace detail

using detail::cshape_min_valuation;
using detail::legendre_valuation;
using detail::min_valuation_grid;
using detail::side_valuation;
using detail::valuation_infinity;

// Decides membership of a multihomogeneous target in the T-space generated
// inside the model. Commutator-shape generators ([x,y] times a monomial) go
// through the consequence-coefficient formula, whose value depends only on
// the multiplicity partitions and the aggregate exponent split, so the class
// enumeration covers every substitution pattern. Other generators take the
// free-algebra expansion route.
template <class F>
TconsequenceResult<F> tconsequence(const F& field, const F23<F>& target,
                                   const std::vector<F23<F>>& gens,
                                   TconsequenceOptions opt = {}) {
  auto deg = detail::f23_bidegree(target);
  if (!deg) throw std::domain_error("tconsequence: target must be multihomogeneous");
  long r1 = deg->first, r2 = deg->second;

  // coordinates of the bidegree component: (coeff of x^r1 y^r2,
  // coeff of c x^{r1-1} y^{r2-1}); the second exists only when r1, r2 >= 1
  bool has_c = r1 >= 1 && r2 >= 1;
  TconsequenceResult<F> res;
  res.target_dim = has_c ? 2 : 1;

  typename F::Elem tu = field.zero(), tv = field.zero();
  for (auto& [m, c] : target.u().terms()) tu = c;
  for (auto& [m, c] : target.v().terms()) tv = c;

  RrefBasis<F> span(field, 2);
  std::vector<std::string> row_witness;
  auto add_instance = [&](const typename F::Elem& iu, const typename F::Elem& iv,
                          const std::string& desc) {
    ++res.instances;
    SparseVec<F> v;
    if (!field.is_zero(iu)) v.nz.emplace_back(0, iu);
    if (!field.is_zero(iv)) v.nz.emplace_back(1, iv);
    if (span.insert(std::move(v))) row_witness.push_back(desc);
  };

  for (auto& g : gens) {
    auto gdeg = detail::f23_bidegree(g);
    if (!gdeg) throw std::domain_error("tconsequence: generators must be multihomogeneous");
    long q1 = gdeg->first, q2 = gdeg->second;

    bool commutator_shape = g.u().is_zero() && g.v().terms().size() == 1;
    if (commutator_shape && opt.allow_formula) {
      if (!has_c) continue;  // all instances land in the commutator ideal
      // Every instance is a scalar multiple of [x,y] x^{r1-1} y^{r2-1}, the
      // scalar depending only on the multiplicity partitions and the
      // aggregate exponent split; the minimum p-adic valuation over those
      // classes decides whether a unit multiple occurs.
      long p = static_cast<long>(field.characteristic());
      long minv = cshape_min_valuation(q1, q2, r1, r2, p);
      if (p > 0 && minv < 0)
        throw std::logic_error("tconsequence: non-integral consequence coefficient");
      if (minv == 0)
        add_instance(field.zero(), field.one(),
                     "scaled instance of the (" + std::to_string(q1) + "," +
                         std::to_string(q2) + ") generator");
      res.instances += 1;
      continue;
    }

    // expansion route: free T-space component at the target bidegree, reduced
    // into the model
    Poly<F> gfree(field, 2);
    for (auto& [m, c] : g.u().terms()) {
      Word w(static_cast<size_t>(m.first), Letter{0});
      w.insert(w.end(), static_cast<size_t>(m.second), Letter{1});
      gfree.add_term(w, c);
    }
    for (auto& [m, c] : g.v().terms()) {
      auto xa = Poly<F>::monomial(field, 2, Word(static_cast<size_t>(m.first), Letter{0}),
                                  field.one());
      auto yb = Poly<F>::monomial(field, 2, Word(static_cast<size_t>(m.second), Letter{1}),
                                  field.one());
      auto comm = parse_poly(field, 2, "[x,y]");
      gfree = gfree + (comm * xa * yb).scaled(c);
    }
    GradedEngine<F> eng(field, 2, opt.caps);
    MultiDegree d{static_cast<int>(r1), static_cast<int>(r2)};
    for (auto& row : eng.tspace({gfree}, d).row_polys()) {
      F23<F> img = f23_reduce(row);
      typename F::Elem iu = field.zero(), iv = field.zero();
      for (auto& [m, c] : img.u().terms()) iu = c;
      for (auto& [m, c] : img.v().terms()) iv = c;
      add_instance(iu, iv, "free-span row");
    }
  }

  res.span_dim = span.rank();
  SparseVec<F> tvec;
  if (!field.is_zero(tu)) tvec.nz.emplace_back(0, tu);
  if (!field.is_zero(tv)) tvec.nz.emplace_back(1, tv);
  res.member = span.contains(tvec);
  if (res.member) {
    for (auto& w : row_witness) {
      if (!res.witness.empty()) res.witness += "; ";
      res.witness += w;
    }
  }
  return res;
}

// Membership in the T-space of x^{p^s} inside the commutative polynomial
// ring: both by the exponent-divisibility criterion and, optionally, by
// substitution spanning; the two must agree.
inline bool comm_tspace_contains(long alpha, long beta, long p, long s,
                                 bool check_spanning = true) {
  if (p < 5) throw std::domain_error("comm_tspace_contains: p must be >= 5");
  if (s < 1) throw std::domain_error("comm_tspace_contains: s must be >= 1");
  long q = 1;
  for (long i = 0; i < s; ++i) q *= p;
  bool by_divisibility = (alpha % q == 0) && (beta % q == 0);
  if (check_spanning) {
    bool by_spanning = false;
    std::vector<std::vector<long>> parts;
    detail::partitions_of(q, parts);
    for (auto& mults : parts) {
      // value of the pattern class is multinomial(q; mults) * x^alpha y^beta
      mpz_class coeff = factorial_mpz(static_cast<unsigned long>(q));
      for (long m : mults) coeff /= factorial_mpz(static_cast<unsigned long>(m));
      if (mpz_fdiv_ui(coeff.get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
      if (detail::aggregate_reachable(mults, alpha, beta)) {
        by_spanning = true;
        break;
      }
    }
    if (by_spanning != by_divisibility)
      throw std::logic_error("comm_tspace_contains: criteria disagree");
  }
  return by_divisibility;
}

}  // namespace lienil
