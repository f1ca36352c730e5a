#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lienil/fields.hpp"

namespace lienil {

// Sparse coefficient vector: (column, coefficient) pairs with strictly
// increasing columns and nonzero coefficients.
template <class F>
struct SparseVec {
  using Elem = typename F::Elem;
  std::vector<std::pair<int, Elem>> nz;

  bool is_zero() const { return nz.empty(); }
  int leading_col() const { return nz.front().first; }
  const Elem& leading_coeff() const { return nz.front().second; }

  const Elem* at(int col) const {
    size_t lo = 0, hi = nz.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (nz[mid].first < col)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < nz.size() && nz[lo].first == col) return &nz[lo].second;
    return nullptr;
  }
};

// dst <- dst - c * src
template <class F>
void subtract_scaled(const F& field, SparseVec<F>& dst, const typename F::Elem& c,
                     const SparseVec<F>& src) {
  SparseVec<F> out;
  out.nz.reserve(dst.nz.size() + src.nz.size());
  size_t i = 0, j = 0;
  while (i < dst.nz.size() || j < src.nz.size()) {
    if (j == src.nz.size() || (i < dst.nz.size() && dst.nz[i].first < src.nz[j].first)) {
      out.nz.push_back(dst.nz[i++]);
    } else if (i == dst.nz.size() || src.nz[j].first < dst.nz[i].first) {
      out.nz.emplace_back(src.nz[j].first, field.neg(field.mul(c, src.nz[j].second)));
      ++j;
    } else {
      auto v = field.sub(dst.nz[i].second, field.mul(c, src.nz[j].second));
      if (!field.is_zero(v)) out.nz.emplace_back(dst.nz[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

// A reduced row echelon basis maintained incrementally. Rows are normalized
// (pivot coefficient one) and fully reduced against each other, so two equal
// subspaces always produce identical row sets.
template <class F>
class RrefBasis {
 public:
  using Elem = typename F::Elem;

  RrefBasis(const F& field, int dim) : field_(field), dim_(dim) {}

  const F& field() const { return field_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec<F>>& rows() const { return rows_; }

  SparseVec<F> reduce(SparseVec<F> v) const {
    while (!v.is_zero()) {
      auto it = rows_.find(v.leading_col());
      if (it == rows_.end()) {
        // eliminate any later pivot columns as well, to make residuals
        // canonical representatives of the quotient
        SparseVec<F> rest = eliminate_tail(v);
        return rest;
      }
      subtract_scaled(field_, v, v.leading_coeff(), it->second);
    }
    return v;
  }

  bool contains(const SparseVec<F>& v) const { return reduce(v).is_zero(); }

  // Returns true when the vector enlarged the span.
  bool insert(SparseVec<F> v) {
    while (!v.is_zero()) {
      auto it = rows_.find(v.leading_col());
      if (it == rows_.end()) break;
      subtract_scaled(field_, v, v.leading_coeff(), it->second);
    }
    if (v.is_zero()) return false;
    v = eliminate_tail(v);
    int piv = v.leading_col();
    Elem s = field_.inv(v.leading_coeff());
    for (auto& [c, e] : v.nz) e = field_.mul(e, s);
    // clear the new pivot column from earlier rows
    for (auto& [p, row] : rows_) {
      if (p >= piv) break;
      if (const Elem* e = row.at(piv)) {
        Elem m = *e;
        subtract_scaled(field_, row, m, v);
      }
    }
    rows_.emplace(piv, std::move(v));
    return true;
  }

  bool leq(const RrefBasis& other) const {
    for (auto& [p, row] : rows_)
      if (!other.contains(row)) return false;
    return true;
  }

  bool operator==(const RrefBasis& o) const {
    if (dim_ != o.dim_ || rows_.size() != o.rows_.size()) return false;
    auto it = o.rows_.begin();
    for (auto& [p, row] : rows_) {
      if (p != it->first || row.nz.size() != it->second.nz.size()) return false;
      for (size_t i = 0; i < row.nz.size(); ++i) {
        if (row.nz[i].first != it->second.nz[i].first) return false;
        if (!field_.eq(row.nz[i].second, it->second.nz[i].second)) return false;
      }
      ++it;
    }
    return true;
  }

 private:
  // reduce the non-leading part of a vector that already has a fresh leading
  // column; keeps residuals unique
  SparseVec<F> eliminate_tail(SparseVec<F> v) const {
    for (size_t i = 1; i < v.nz.size();) {
      auto it = rows_.find(v.nz[i].first);
      if (it == rows_.end()) {
        ++i;
        continue;
      }
      subtract_scaled(field_, v, v.nz[i].second, it->second);
      // the merge may have shifted indices; restart scan from the same spot
    }
    return v;
  }

  F field_;
  int dim_;
  std::map<int, SparseVec<F>> rows_;
};

}  // namespace lienil
