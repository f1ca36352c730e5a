#pragma once

#include <climits>
#include <map>
#include <stdexcept>
#include <vector>

#include "lienil/lyndon.hpp"

namespace lienil {

constexpr int weight_infinity = INT_MAX;

// A basis word of the free associative algebra: a product of Lie-basis
// elements with nondecreasing indices in the global order.
struct PbwWord {
  std::vector<int> factors;

  bool operator<(const PbwWord& o) const { return factors < o.factors; }
  bool operator==(const PbwWord& o) const { return factors == o.factors; }
};

// wt(e_{i_1} ... e_{i_t}) = sum of factor degrees - t + 1.
inline int pbw_weight(const LieBasis& basis, const PbwWord& w) {
  int sum = 0;
  for (int i : w.factors) sum += basis.degree(i);
  return sum - static_cast<int>(w.factors.size()) + 1;
}

inline MultiDegree pbw_multidegree(const LieBasis& basis, const PbwWord& w) {
  MultiDegree d(basis.rank(), 0);
  for (int i : w.factors) d = md_add(d, basis[i].mdeg);
  return d;
}

// All basis words of one multidegree, in lexicographic factor order.
inline std::vector<PbwWord> correct_words(const LieBasis& basis, const MultiDegree& d) {
  if (md_total(d) < 1) throw std::domain_error("correct_words: zero multidegree");
  if (md_total(d) > basis.max_degree())
    throw std::domain_error("correct_words: basis degree bound too small");
  std::vector<PbwWord> out;
  PbwWord cur;
  auto rec = [&](auto&& self, size_t min_idx, MultiDegree left) -> void {
    if (md_total(left) == 0) {
      out.push_back(cur);
      return;
    }
    for (size_t i = min_idx; i < basis.size(); ++i) {
      if (!md_leq(basis[i].mdeg, left)) continue;
      cur.factors.push_back(static_cast<int>(i));
      self(self, i, md_sub(left, basis[i].mdeg));
      cur.factors.pop_back();
    }
  };
  rec(rec, 0, d);
  return out;
}

inline std::map<Word, long, WordLess> pbw_expansion_z(const LieBasis& basis, const PbwWord& w) {
  std::map<Word, long, WordLess> acc = {{Word{}, 1}};
  for (int i : w.factors) acc = detail::expansion_mul(acc, basis[i].expansion, 1);
  return acc;
}

template <class F>
Poly<F> pbw_expansion(const F& field, const LieBasis& basis, const PbwWord& w,
                      int target_rank = 0) {
  int rk = target_rank ? target_rank : basis.rank();
  Poly<F> p(field, rk);
  for (auto& [word, c] : pbw_expansion_z(basis, w)) p.add_term(word, field.from_long(c));
  return p;
}

inline std::string pbw_str(const LieBasis& basis, const PbwWord& w) {
  std::string s;
  for (size_t i = 0; i < w.factors.size(); ++i) {
    if (i) s += "*";
    s += basis.bracket_str(w.factors[i]);
  }
  return s;
}

template <class F>
struct PbwDecomposition {
  std::vector<std::pair<PbwWord, typename F::Elem>> coefficients;
};

// Decomposes polynomials in the basis of correct words. One multidegree at a
// time: the expansion matrix of the component's basis words is inverted once
// and cached; unique solvability is the Poincare-Birkhoff-Witt theorem and a
// singular matrix aborts loudly.
template <class F>
class PbwSolver {
 public:
  PbwSolver(const F& field, const LieBasis& basis) : field_(field), basis_(basis) {}

  const LieBasis& basis() const { return basis_; }

  PbwDecomposition<F> decompose(const Poly<F>& f) {
    if (f.rank() > basis_.rank()) throw std::domain_error("PbwSolver: rank too large");
    PbwDecomposition<F> out;
    for (auto& [d, part] : f.multihomo_split()) {
      if (md_total(d) == 0) {
        // scalar part: coefficient of the empty product; represent via the
        // unit being an empty factor list
        out.coefficients.emplace_back(PbwWord{}, part.coeff(Word{}));
        continue;
      }
      const Component& comp = component(d);
      std::vector<typename F::Elem> v(comp.wi.dim(), field_.zero());
      for (auto& [w, c] : part.terms()) v[comp.wi.column_of(w)] = c;
      for (int i = 0; i < comp.wi.dim(); ++i) {
        typename F::Elem c = field_.zero();
        for (int j = 0; j < comp.wi.dim(); ++j)
          c = field_.add(c, field_.mul(comp.inverse[i][j], v[j]));
        if (!field_.is_zero(c)) out.coefficients.emplace_back(comp.cws[i], c);
      }
    }
    return out;
  }

  Poly<F> expand(const PbwDecomposition<F>& dec, int rank) {
    Poly<F> r(field_, rank);
    for (auto& [w, c] : dec.coefficients) {
      if (w.factors.empty())
        r = r + Poly<F>::constant(field_, rank, c);
      else
        r = r + pbw_expansion(field_, basis_, w, rank).scaled(c);
    }
    return r;
  }

  // Minimum weight over the support of the decomposition; infinity for zero.
  int weight(const Poly<F>& f) {
    if (f.is_zero()) return weight_infinity;
    int best = weight_infinity;
    for (auto& [w, c] : decompose(f).coefficients) {
      int wt = w.factors.empty() ? 0 : pbw_weight(basis_, w);
      best = std::min(best, wt);
    }
    return best;
  }

 private:
  struct Component {
    std::vector<PbwWord> cws;
    WordIndex wi;
    std::vector<std::vector<typename F::Elem>> inverse;
  };

  const Component& component(const MultiDegree& d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    Component comp{correct_words(basis_, d), WordIndex(d), {}};
    size_t n = comp.wi.words.size();
    if (comp.cws.size() != n)
      throw std::logic_error("PbwSolver: basis word count differs from component dimension");
    // invert the expansion matrix (columns = basis words) by Gauss-Jordan
    std::vector<std::vector<typename F::Elem>> a(n), inv(n);
    for (size_t i = 0; i < n; ++i) {
      a[i].assign(n, field_.zero());
      inv[i].assign(n, field_.zero());
      inv[i][i] = field_.one();
    }
    for (size_t col = 0; col < n; ++col)
      for (auto& [w, c] : pbw_expansion_z(basis_, comp.cws[col]))
        a[comp.wi.column_of(w)][col] = field_.from_long(c);
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      while (piv < n && field_.is_zero(a[piv][col])) ++piv;
      if (piv == n) throw std::logic_error("PbwSolver: singular expansion matrix");
      std::swap(a[piv], a[col]);
      std::swap(inv[piv], inv[col]);
      typename F::Elem s = field_.inv(a[col][col]);
      for (size_t j = 0; j < n; ++j) {
        a[col][j] = field_.mul(a[col][j], s);
        inv[col][j] = field_.mul(inv[col][j], s);
      }
      for (size_t r = 0; r < n; ++r) {
        if (r == col || field_.is_zero(a[r][col])) continue;
        typename F::Elem m = a[r][col];
        for (size_t j = 0; j < n; ++j) {
          a[r][j] = field_.sub(a[r][j], field_.mul(m, a[col][j]));
          inv[r][j] = field_.sub(inv[r][j], field_.mul(m, inv[col][j]));
        }
      }
    }
    // inverse maps word coordinates to basis-word coordinates; the solve is
    // c = A^{-1} v with c indexed like cws
    return cache_.emplace(d, Component{std::move(comp.cws), std::move(comp.wi), std::move(inv)})
        .first->second;
  }

  F field_;
  const LieBasis& basis_;
  std::map<MultiDegree, Component> cache_;
};

}  // namespace lienil
