#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lienil/grammar.hpp"
#include "lienil/pbw.hpp"
#include "lienil/span.hpp"

namespace lienil {

// Explicit resource caps. Exceeding one raises cap_exceeded; results are only
// produced from provably complete spanning sets.
struct EngineCaps {
  int max_total_degree = 12;
  long max_patterns = 5'000'000;
  long max_branches = 100'000'000;
};

// Graded linear-algebra engine for one rank and field: canonical spans of
// T-ideal / T-space components, centers, and ideals of proper polynomials,
// all per multidegree and memoized.
//
// Components are the infinite-field objects: a T-space component is spanned
// by the multihomogeneous linearization components of the generators
// evaluated at all words (the unit included), a T-ideal component adds the
// two-sided monomial closure. Scalars may still live in F_p.
template <class F>
class GradedEngine {
 public:
  GradedEngine(const F& field, int rank, EngineCaps caps = EngineCaps{})
      : field_(field), rank_(rank), caps_(caps) {
    if (rank < 2 || rank > 8) throw std::domain_error("GradedEngine: rank out of range");
  }

  const F& field() const { return field_; }
  int rank() const { return rank_; }
  const EngineCaps& caps() const { return caps_; }

  std::shared_ptr<const WordIndex> word_index(const MultiDegree& d) {
    require_rank(d);
    auto it = windex_.find(d);
    if (it == windex_.end()) it = windex_.emplace(d, std::make_shared<WordIndex>(d)).first;
    return it->second;
  }

  GradedSpan<F> empty_span(const MultiDegree& d) {
    return GradedSpan<F>(field_, rank_, word_index(d));
  }

  Poly<F> word_poly(const Word& w) const {
    return Poly<F>::monomial(field_, rank_, w, field_.one());
  }
  Poly<F> gen(int i) const { return Poly<F>::generator(field_, rank_, i); }

  // V^(n) component: the T-space generated by the right-normed commutator of
  // degree n. Built recursively as the span of [V^(n-1) rows, word].
  const GradedSpan<F>& commutator_tspace(int n, const MultiDegree& d) {
    if (n < 2) throw std::domain_error("commutator_tspace: n must be >= 2");
    require_capped(d);
    auto key = std::make_pair(n, d);
    auto it = vsp_.find(key);
    if (it != vsp_.end()) return it->second;

    GradedSpan<F> span = empty_span(d);
    if (md_total(d) >= n) {
      if (n == 2) {
        for (auto& d1 : sub_multidegrees(d)) {
          if (md_total(d1) == 0) continue;
          MultiDegree d2 = md_sub(d, d1);
          if (md_total(d2) == 0) continue;
          auto w1s = word_index(d1);
          auto w2s = word_index(d2);
          for (auto& w1 : w1s->words)
            for (auto& w2 : w2s->words) {
              if (!(std::make_pair(d1, w1) < std::make_pair(d2, w2))) continue;
              span.insert(commutator(word_poly(w1), word_poly(w2)));
            }
        }
      } else {
        for (auto& delta : sub_multidegrees(d)) {
          if (md_total(delta) < n - 1 || md_total(delta) == md_total(d)) continue;
          const GradedSpan<F>& sub = commutator_tspace(n - 1, delta);
          if (sub.dim() == 0) continue;
          auto rows = sub.row_polys();
          auto ws = word_index(md_sub(d, delta));
          for (auto& r : rows)
            for (auto& w : ws->words) span.insert(commutator(r, word_poly(w)));
        }
      }
    }
    return vsp_.emplace(key, std::move(span)).first->second;
  }

  // T^(n) component: V^(n) plus the one-letter monomial peel on both sides.
  const GradedSpan<F>& commutator_tideal(int n, const MultiDegree& d) {
    if (n < 2) throw std::domain_error("commutator_tideal: n must be >= 2");
    require_capped(d);
    auto key = std::make_pair(n, d);
    auto it = tid_.find(key);
    if (it != tid_.end()) return it->second;

    GradedSpan<F> span = empty_span(d);
    if (md_total(d) >= n) {
      for (auto& [piv, row] : commutator_tspace(n, d).basis().rows()) span.insert_vec(row);
      peel_ideal_step(span, d, [&](const MultiDegree& dd) -> const GradedSpan<F>& {
        return commutator_tideal(n, dd);
      });
    }
    return tid_.emplace(key, std::move(span)).first->second;
  }

  // T-space component for arbitrary generators.
  const GradedSpan<F>& tspace(const std::vector<Poly<F>>& gens, const MultiDegree& d) {
    require_capped(d);
    auto key = std::make_pair(genset_key(gens), d);
    auto it = tspg_.find(key);
    if (it != tspg_.end()) return it->second;

    GradedSpan<F> span = empty_span(d);
    for (auto& g : gens) {
      if (!(g.field() == field_)) throw std::domain_error("tspace: field mismatch");
      for (auto& [dg, comp] : g.widened(rank_).multihomo_split()) {
        if (md_total(dg) == 0) continue;  // constants contribute nothing in degree > 0
        if (md_total(dg) <= md_total(d)) span_patterns(span, comp, dg, d);
      }
    }
    return tspg_.emplace(key, std::move(span)).first->second;
  }

  // T-ideal component for arbitrary generators: T-space plus monomial peel.
  const GradedSpan<F>& tideal(const std::vector<Poly<F>>& gens, const MultiDegree& d) {
    require_capped(d);
    auto key = std::make_pair(genset_key(gens), d);
    auto it = tidg_.find(key);
    if (it != tidg_.end()) return it->second;

    GradedSpan<F> span = empty_span(d);
    for (auto& [piv, row] : tspace(gens, d).basis().rows()) span.insert_vec(row);
    peel_ideal_step(span, d, [&](const MultiDegree& dd) -> const GradedSpan<F>& {
      return tideal(gens, dd);
    });
    return tidg_.emplace(key, std::move(span)).first->second;
  }

  // Preimage in the free algebra of the center of F_r / T^(n): all f of
  // multidegree d with [f, x_j] in the T^(n) component for every generator.
  const GradedSpan<F>& center(int n, const MultiDegree& d) {
    if (rank_ != 2 && rank_ != 3) throw std::domain_error("center: rank must be 2 or 3");
    require_capped(d);
    auto key = std::make_pair(n, d);
    auto it = ctr_.find(key);
    if (it != ctr_.end()) return it->second;

    auto wi = word_index(d);
    int n_words = wi->dim();
    std::vector<const GradedSpan<F>*> targets;
    std::vector<int> offset(rank_ + 1, 0);
    for (int j = 0; j < rank_; ++j) {
      MultiDegree dj = md_add(d, md_unit(rank_, j));
      targets.push_back(&commutator_tideal(n, dj));
      offset[j + 1] = offset[j] + targets.back()->ambient_dim();
    }
    int left_cols = offset[rank_];

    RrefBasis<F> elim(field_, left_cols + n_words);
    for (int wi_idx = 0; wi_idx < n_words; ++wi_idx) {
      SparseVec<F> big;
      for (int j = 0; j < rank_; ++j) {
        Poly<F> c = commutator(word_poly(wi->words[wi_idx]), gen(j));
        SparseVec<F> resid = targets[j]->basis().reduce(targets[j]->to_vec(c));
        for (auto& [col, e] : resid.nz) big.nz.emplace_back(offset[j] + col, e);
      }
      big.nz.emplace_back(left_cols + wi_idx, field_.one());
      elim.insert(std::move(big));
    }

    GradedSpan<F> span = empty_span(d);
    for (auto& [piv, row] : elim.rows()) {
      if (piv < left_cols) continue;
      SparseVec<F> v;
      for (auto& [col, e] : row.nz) v.nz.emplace_back(col - left_cols, e);
      span.insert_vec(std::move(v));
    }
    return ctr_.emplace(key, std::move(span)).first->second;
  }

  // Component of the ideal generated by all proper polynomials of total
  // degree >= min_degree: spanned by monomial * (product of Lie-basis
  // expansions of factor degree >= 2) * monomial.
  const GradedSpan<F>& proper_ideal(int min_degree, const MultiDegree& d) {
    if (rank_ > 3) throw std::domain_error("proper_ideal: rank must be <= 3");
    require_capped(d);
    auto key = std::make_pair(min_degree, d);
    auto it = prop_.find(key);
    if (it != prop_.end()) return it->second;

    GradedSpan<F> span = empty_span(d);
    if (md_total(d) >= min_degree && md_total(d) >= 2) {
      const LieBasis& lb = lie_basis(md_total(d));
      std::vector<int> cur;
      auto rec = [&](auto&& self, size_t min_idx, MultiDegree left) -> void {
        if (md_total(left) == 0) {
          Poly<F> prod = Poly<F>::unit(field_, rank_);
          for (int i : cur) prod = prod * lb.expansion_in(field_, static_cast<size_t>(i), rank_);
          span.insert(prod);
          return;
        }
        for (size_t i = min_idx; i < lb.size(); ++i) {
          if (lb.degree(i) < 2) continue;
          if (lb[i].mdeg.size() != left.size()) continue;
          if (!md_leq(lb[i].mdeg, left)) continue;
          cur.push_back(static_cast<int>(i));
          self(self, i, md_sub(left, lb[i].mdeg));
          cur.pop_back();
        }
      };
      rec(rec, 0, d);
    }
    peel_ideal_step(span, d, [&](const MultiDegree& dd) -> const GradedSpan<F>& {
      return proper_ideal(min_degree, dd);
    });
    return prop_.emplace(key, std::move(span)).first->second;
  }

  const LieBasis& lie_basis(int max_degree) {
    if (!lie_ || lie_->max_degree() < max_degree)
      lie_ = std::make_unique<LieBasis>(rank_, max_degree);
    return *lie_;
  }

  std::vector<MultiDegree> sub_multidegrees(const MultiDegree& d) const {
    std::vector<MultiDegree> out;
    MultiDegree cur(d.size(), 0);
    auto rec = [&](auto&& self, size_t pos) -> void {
      if (pos == d.size()) {
        out.push_back(cur);
        return;
      }
      for (int e = 0; e <= d[pos]; ++e) {
        cur[pos] = e;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
    return out;
  }

 private:
  void require_rank(const MultiDegree& d) const {
    if (static_cast<int>(d.size()) != rank_)
      throw std::domain_error("GradedEngine: multidegree rank mismatch");
  }
  void require_capped(const MultiDegree& d) const {
    require_rank(d);
    if (md_total(d) > caps_.max_total_degree)
      throw cap_exceeded("component of total degree " + std::to_string(md_total(d)) +
                         " exceeds the degree cap " + std::to_string(caps_.max_total_degree));
  }

  template <class Sub>
  void peel_ideal_step(GradedSpan<F>& span, const MultiDegree& d, Sub&& sub) {
    for (int j = 0; j < rank_; ++j) {
      if (d[j] == 0) continue;
      const GradedSpan<F>& inner = sub(md_sub(d, md_unit(rank_, j)));
      if (inner.dim() == 0) continue;
      Poly<F> xj = gen(j);
      for (auto& r : inner.row_polys()) {
        span.insert(xj * r);
        span.insert(r * xj);
      }
    }
  }

  std::string genset_key(const std::vector<Poly<F>>& gens) const {
    std::string key;
    for (auto& g : gens) {
      key += poly_str(g);
      key += '&';
    }
    return key;
  }

  // ---- generic T-space closure: linearization patterns -----------------

  struct Part {
    int mult;
    int word;  // index into the candidate word list
  };

  void span_patterns(GradedSpan<F>& span, const Poly<F>& comp, const MultiDegree& dg,
                     const MultiDegree& d) {
    // candidate substitution images: all words of multidegree <= d, the unit
    // first
    std::vector<Word> cands;
    std::vector<MultiDegree> cand_deg;
    for (auto& delta : sub_multidegrees(d))
      for (auto& w : word_index(delta)->words) {
        cands.push_back(w);
        cand_deg.push_back(delta);
      }
    std::vector<int> vars;
    for (size_t i = 0; i < dg.size(); ++i)
      if (dg[i] > 0) vars.push_back(static_cast<int>(i));

    std::vector<std::vector<Part>> parts(vars.size());
    MultiDegree remaining = d;
    long patterns = 0;

    auto fits = [&](const MultiDegree& delta, int n) {
      for (size_t i = 0; i < delta.size(); ++i)
        if (n * delta[i] > remaining[i]) return false;
      return true;
    };
    auto consume = [&](const MultiDegree& delta, int n, int sign) {
      for (size_t i = 0; i < delta.size(); ++i) remaining[i] -= sign * n * delta[i];
    };

    auto rec_parts = [&](auto&& self, size_t vi, int q_left, size_t w_min) -> void {
      if (q_left == 0) {
        if (vi + 1 == vars.size()) {
          if (md_total(remaining) != 0) return;
          if (++patterns > caps_.max_patterns)
            throw cap_exceeded("pattern enumeration exceeded cap");
          span.insert(evaluate_pattern(comp, vars, parts, cands));
          return;
        }
        self(self, vi + 1, dg[vars[vi + 1]], 0);
        return;
      }
      for (size_t w = w_min; w < cands.size(); ++w) {
        for (int n = 1; n <= q_left; ++n) {
          if (!fits(cand_deg[w], n)) break;
          parts[vi].push_back(Part{n, static_cast<int>(w)});
          consume(cand_deg[w], n, +1);
          self(self, vi, q_left - n, w + 1);
          consume(cand_deg[w], n, -1);
          parts[vi].pop_back();
        }
      }
    };
    if (!vars.empty()) rec_parts(rec_parts, 0, dg[vars[0]], 0);
  }

  // Value of the linearization component selected by the parts, evaluated at
  // the part words. Each occurrence of a variable branches over that
  // variable's parts with remaining budget; the leaf count is exactly the
  // product of the multinomial coefficients of the multiplicity vectors.
  Poly<F> evaluate_pattern(const Poly<F>& comp, const std::vector<int>& vars,
                           std::vector<std::vector<Part>>& parts,
                           const std::vector<Word>& cands) {
    std::vector<int> var_slot(rank_, -1);
    for (size_t vi = 0; vi < vars.size(); ++vi) var_slot[vars[vi]] = static_cast<int>(vi);

    Poly<F> value(field_, rank_);
    long branches = 0;
    std::vector<std::vector<int>> budget(parts.size());
    for (size_t vi = 0; vi < parts.size(); ++vi) {
      budget[vi].resize(parts[vi].size());
      for (size_t k = 0; k < parts[vi].size(); ++k) budget[vi][k] = parts[vi][k].mult;
    }
    Word image;
    for (auto& [word, coeff] : comp.terms()) {
      image.clear();
      auto rec = [&](auto&& self, size_t pos) -> void {
        if (pos == word.size()) {
          if (++branches > caps_.max_branches)
            throw cap_exceeded("pattern evaluation exceeded branch cap");
          value.add_term(image, coeff);
          return;
        }
        int vi = var_slot[word[pos]];
        for (size_t k = 0; k < parts[vi].size(); ++k) {
          if (budget[vi][k] == 0) continue;
          --budget[vi][k];
          const Word& w = cands[parts[vi][k].word];
          image.insert(image.end(), w.begin(), w.end());
          self(self, pos + 1);
          image.resize(image.size() - w.size());
          ++budget[vi][k];
        }
      };
      rec(rec, 0);
    }
    return value;
  }

  F field_;
  int rank_;
  EngineCaps caps_;
  std::map<MultiDegree, std::shared_ptr<const WordIndex>> windex_;
  std::map<std::pair<int, MultiDegree>, GradedSpan<F>> vsp_, tid_, ctr_, prop_;
  std::map<std::pair<std::string, MultiDegree>, GradedSpan<F>> tspg_, tidg_;
  std::unique_ptr<LieBasis> lie_;
};

}  // namespace lienil
