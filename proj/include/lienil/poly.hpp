#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lienil/fields.hpp"
#include "lienil/words.hpp"

namespace lienil {

// Sparse noncommutative polynomial in the free unital associative algebra of
// the given rank. Terms map words to nonzero coefficients; the empty word is
// the unit.
template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;
  using Terms = std::map<Word, Elem, WordLess>;

  Poly(const F& field, int rank) : field_(field), rank_(rank) {
    if (rank < 1 || rank > 64) throw std::domain_error("Poly: rank out of range");
  }

  static Poly zero(const F& field, int rank) { return Poly(field, rank); }
  static Poly unit(const F& field, int rank) {
    Poly p(field, rank);
    p.terms_.emplace(Word{}, field.one());
    return p;
  }
  static Poly generator(const F& field, int rank, int i) {
    if (i < 0 || i >= rank) throw std::domain_error("Poly: generator outside rank");
    Poly p(field, rank);
    p.terms_.emplace(Word{static_cast<Letter>(i)}, field.one());
    return p;
  }
  static Poly monomial(const F& field, int rank, const Word& w, const Elem& c) {
    Poly p(field, rank);
    p.add_term(w, c);
    return p;
  }
  static Poly constant(const F& field, int rank, const Elem& c) {
    return monomial(field, rank, Word{}, c);
  }

  const F& field() const { return field_; }
  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void add_term(const Word& w, const Elem& c) {
    for (Letter l : w)
      if (l >= rank_) throw std::domain_error("Poly: word letter outside rank");
    if (field_.is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  Elem coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    a.require_compatible(b);
    Poly r = a;
    for (auto& [w, c] : b.terms_) r.add_term(w, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    a.require_compatible(b);
    Poly r = a;
    for (auto& [w, c] : b.terms_) r.add_term(w, a.field_.neg(c));
    return r;
  }
  Poly operator-() const {
    Poly r(field_, rank_);
    for (auto& [w, c] : terms_) r.terms_.emplace(w, field_.neg(c));
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.require_compatible(b);
    Poly r(a.field_, a.rank_);
    for (auto& [wa, ca] : a.terms_)
      for (auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, a.field_.mul(ca, cb));
      }
    return r;
  }
  Poly scaled(const Elem& c) const {
    Poly r(field_, rank_);
    if (field_.is_zero(c)) return r;
    for (auto& [w, k] : terms_) r.terms_.emplace(w, field_.mul(k, c));
    return r;
  }
  Poly pow(int n) const {
    if (n < 0) throw std::domain_error("Poly::pow: negative exponent");
    Poly r = unit(field_, rank_);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  bool operator==(const Poly& o) const {
    if (rank_ != o.rank_ || !(field_ == o.field_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (auto& [w, c] : terms_) {
      if (w != it->first || !field_.eq(c, it->second)) return false;
      ++it;
    }
    return true;
  }

  // Reinterpret in a larger rank (letters unchanged).
  Poly widened(int new_rank) const {
    if (new_rank < rank_) throw std::domain_error("Poly::widened: rank shrink");
    Poly r(field_, new_rank);
    for (auto& [w, c] : terms_) r.terms_.emplace(w, c);
    return r;
  }

  MultiDegree term_multidegree(const Word& w) const { return multidegree_of(w, rank_); }

  // True when all terms share one multidegree (the zero polynomial counts as
  // multihomogeneous of any degree).
  bool is_multihomogeneous(MultiDegree* out = nullptr) const {
    if (terms_.empty()) return true;
    MultiDegree d = term_multidegree(terms_.begin()->first);
    for (auto& [w, c] : terms_)
      if (term_multidegree(w) != d) return false;
    if (out) *out = d;
    return true;
  }

  std::map<MultiDegree, Poly> multihomo_split() const {
    std::map<MultiDegree, Poly> parts;
    for (auto& [w, c] : terms_) {
      MultiDegree d = term_multidegree(w);
      auto it = parts.find(d);
      if (it == parts.end()) it = parts.emplace(d, Poly(field_, rank_)).first;
      it->second.terms_.emplace(w, c);
    }
    return parts;
  }

  Poly multihomo_component(const MultiDegree& d) const {
    Poly r(field_, rank_);
    for (auto& [w, c] : terms_)
      if (term_multidegree(w) == d) r.terms_.emplace(w, c);
    return r;
  }

  // The unital endomorphism sending each generator to its image; generators
  // absent from the map are fixed. Images may have any common rank.
  Poly substitute(const std::map<int, Poly>& images) const {
    int out_rank = rank_;
    for (auto& [i, img] : images) {
      if (!(img.field() == field_)) throw std::domain_error("substitute: field mismatch");
      if (img.rank() > out_rank) out_rank = img.rank();
    }
    std::vector<Poly> img;
    img.reserve(rank_);
    for (int i = 0; i < rank_; ++i) {
      auto it = images.find(i);
      img.push_back(it != images.end() ? it->second.widened(out_rank)
                                       : generator(field_, out_rank, i));
    }
    Poly r(field_, out_rank);
    for (auto& [w, c] : terms_) {
      Poly acc = constant(field_, out_rank, c);
      for (Letter l : w) acc = acc * img[l];
      r = r + acc;
    }
    return r;
  }

  // Sum over occurrences of var of the word with that occurrence deleted.
  // Lowers deg_var by exactly one on var-homogeneous input.
  Poly delete_derivative(int var) const {
    Poly r(field_, rank_);
    for (auto& [w, c] : terms_)
      for (size_t i = 0; i < w.size(); ++i)
        if (w[i] == var) {
          Word v = w;
          v.erase(v.begin() + i);
          r.add_term(v, c);
        }
    return r;
  }

  // Proper polynomials are exactly the ones fixed by every unit shift
  // x_i -> x_i + 1.
  bool is_proper() const {
    for (int i = 0; i < rank_; ++i) {
      Poly shifted = substitute({{i, generator(field_, rank_, i) + unit(field_, rank_)}});
      if (!(shifted == *this)) return false;
    }
    return true;
  }

  std::string str() const;  // defined in grammar.hpp

 private:
  void require_compatible(const Poly& o) const {
    if (rank_ != o.rank_) throw std::domain_error("Poly: rank mismatch");
    if (!(field_ == o.field_)) throw std::domain_error("Poly: field mismatch");
  }

  F field_;
  int rank_;
  Terms terms_;
};

template <class F>
Poly<F> commutator(const Poly<F>& a, const Poly<F>& b) {
  return a * b - b * a;
}

// Right-normed commutator [a1,...,an] = [[a1,...,a_{n-1}], an].
template <class F>
Poly<F> right_normed(std::span<const Poly<F>> args) {
  if (args.size() < 2) throw std::domain_error("right_normed: needs at least 2 arguments");
  Poly<F> acc = commutator(args[0], args[1]);
  for (size_t i = 2; i < args.size(); ++i) acc = commutator(acc, args[i]);
  return acc;
}

template <class F>
Poly<F> right_normed(std::initializer_list<Poly<F>> args) {
  std::vector<Poly<F>> v(args);
  return right_normed(std::span<const Poly<F>>(v));
}

// Right-normed commutator of generators given by index.
template <class F>
Poly<F> generator_commutator(const F& field, int rank, const std::vector<int>& gens) {
  std::vector<Poly<F>> args;
  args.reserve(gens.size());
  for (int g : gens) args.push_back(Poly<F>::generator(field, rank, g));
  return right_normed(std::span<const Poly<F>>(args));
}

// One step of an operator word: right multiplication, inner derivation, or
// left multiplication by the argument.
enum class OpKind { R, D, L };

template <class F>
struct OpStep {
  OpKind kind;
  Poly<F> arg;
};

// Applies the steps left to right: R_y : a -> a y, D_y : a -> [a, y],
// L_y : a -> y a.
template <class F>
Poly<F> apply_operator_word(const Poly<F>& a, const std::vector<OpStep<F>>& ops) {
  Poly<F> r = a;
  for (auto& step : ops) {
    switch (step.kind) {
      case OpKind::R: r = r * step.arg; break;
      case OpKind::D: r = commutator(r, step.arg); break;
      case OpKind::L: r = step.arg * r; break;
    }
  }
  return r;
}

// Substitutes var -> x_{rank} + ... + x_{rank+k-1} (fresh slots appended to
// the rank) and splits into multihomogeneous components of the extended rank.
template <class F>
std::map<MultiDegree, Poly<F>> linearize(const Poly<F>& f, int var, int k) {
  if (k < 1) throw std::domain_error("linearize: k must be positive");
  if (var < 0 || var >= f.rank()) throw std::domain_error("linearize: var outside rank");
  int ext = f.rank() + k;
  Poly<F> sum(f.field(), ext);
  for (int j = 0; j < k; ++j) sum = sum + Poly<F>::generator(f.field(), ext, f.rank() + j);
  Poly<F> g = f.widened(ext).substitute({{var, sum}});
  return g.multihomo_split();
}

}  // namespace lienil
