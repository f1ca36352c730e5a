#pragma once

#include <memory>
#include <stdexcept>

#include "lienil/poly.hpp"
#include "lienil/rref.hpp"

namespace lienil {

// Canonical row-reduced basis of a subspace of one multidegree component of
// the free algebra. Columns are indexed by the words of that multidegree in
// canonical order; two spans are equal exactly when their matrices are.
template <class F>
class GradedSpan {
 public:
  GradedSpan(const F& field, int rank, std::shared_ptr<const WordIndex> words)
      : field_(field), rank_(rank), words_(std::move(words)), basis_(field_, words_->dim()) {}

  const F& field() const { return field_; }
  int rank() const { return rank_; }
  const MultiDegree& degree() const { return words_->degree; }
  const WordIndex& words() const { return *words_; }
  std::shared_ptr<const WordIndex> words_ptr() const { return words_; }
  const RrefBasis<F>& basis() const { return basis_; }
  int dim() const { return basis_.rank(); }
  int ambient_dim() const { return words_->dim(); }

  SparseVec<F> to_vec(const Poly<F>& p) const {
    MultiDegree d;
    if (!p.is_multihomogeneous(&d))
      throw std::domain_error("GradedSpan: polynomial is not multihomogeneous");
    if (!p.is_zero() && d != words_->degree)
      throw std::domain_error("GradedSpan: multidegree mismatch");
    SparseVec<F> v;
    v.nz.reserve(p.term_count());
    for (auto& [w, c] : p.terms()) v.nz.emplace_back(words_->column_of(w), c);
    std::sort(v.nz.begin(), v.nz.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  Poly<F> to_poly(const SparseVec<F>& v) const {
    Poly<F> p(field_, rank_);
    for (auto& [col, c] : v.nz) p.add_term(words_->words[col], c);
    return p;
  }

  bool insert(const Poly<F>& p) { return basis_.insert(to_vec(p)); }
  bool insert_vec(SparseVec<F> v) { return basis_.insert(std::move(v)); }

  bool contains(const Poly<F>& p) const { return basis_.contains(to_vec(p)); }
  Poly<F> reduce(const Poly<F>& p) const { return to_poly(basis_.reduce(to_vec(p))); }

  std::vector<Poly<F>> row_polys() const {
    std::vector<Poly<F>> out;
    out.reserve(basis_.rows().size());
    for (auto& [piv, row] : basis_.rows()) out.push_back(to_poly(row));
    return out;
  }

  bool operator==(const GradedSpan& o) const {
    return words_->degree == o.words_->degree && basis_ == o.basis_;
  }

 private:
  F field_;
  int rank_;
  std::shared_ptr<const WordIndex> words_;
  RrefBasis<F> basis_;
};

template <class F>
bool span_leq(const GradedSpan<F>& a, const GradedSpan<F>& b) {
  if (a.degree() != b.degree()) throw std::domain_error("span_leq: multidegree mismatch");
  return a.basis().leq(b.basis());
}

template <class F>
bool span_equal(const GradedSpan<F>& a, const GradedSpan<F>& b) {
  if (a.degree() != b.degree()) throw std::domain_error("span_equal: multidegree mismatch");
  return a == b;
}

// Span of all pairwise products of basis rows.
template <class F>
GradedSpan<F> product_span(const GradedSpan<F>& a, const GradedSpan<F>& b,
                           std::shared_ptr<const WordIndex> target_words) {
  GradedSpan<F> out(a.field(), a.rank(), std::move(target_words));
  for (auto& ra : a.row_polys())
    for (auto& rb : b.row_polys()) out.insert(ra * rb);
  return out;
}

template <class F>
GradedSpan<F> sum_span(const GradedSpan<F>& a, const GradedSpan<F>& b) {
  if (a.degree() != b.degree()) throw std::domain_error("sum_span: multidegree mismatch");
  GradedSpan<F> out = a;
  for (auto& [piv, row] : b.basis().rows()) out.insert_vec(row);
  return out;
}

}  // namespace lienil
