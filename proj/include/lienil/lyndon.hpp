#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lienil/poly.hpp"

namespace lienil {

// Tie-break inside one degree of the Lie-basis order. The order between
// degrees is fixed (higher degree first); the intra-degree order is a free
// choice, exposed so weight computations can be compared across choices.
enum class TieBreak { Lex, RevLex };

// One homogeneous basis element of the free Lie algebra: a Lyndon word, its
// standard bracketing, and the integer expansion of that bracketing in the
// free associative algebra.
struct LieElement {
  Word word;
  int left = -1;   // basis index of the left factor, -1 for single letters
  int right = -1;  // basis index of the right factor
  MultiDegree mdeg;
  std::map<Word, long, WordLess> expansion;  // integer coefficients
};

namespace detail {

// Lyndon: strictly smaller than each of its proper suffixes.
inline bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (size_t i = 1; i < w.size(); ++i)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) return false;
  return true;
}

inline std::map<Word, long, WordLess> expansion_mul(const std::map<Word, long, WordLess>& a,
                                                    const std::map<Word, long, WordLess>& b,
                                                    long sign) {
  std::map<Word, long, WordLess> r;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      long& slot = r[w];
      slot += sign * ca * cb;
      if (slot == 0) r.erase(w);
    }
  return r;
}

}  // namespace detail

// The ordered homogeneous basis of the free Lie algebra up to a degree bound:
// Lyndon words with standard bracketing, sorted with higher degree first and
// the chosen tie-break inside each degree.
class LieBasis {
 public:
  LieBasis(int rank, int max_degree, TieBreak tie = TieBreak::Lex)
      : rank_(rank), max_degree_(max_degree), tie_(tie) {
    if (rank < 1 || rank > 3)
      throw std::domain_error("LieBasis: rank must be 1..3 (weight theory scope)");
    if (max_degree < 1) throw std::domain_error("LieBasis: max_degree must be positive");
    build();
  }

  int rank() const { return rank_; }
  int max_degree() const { return max_degree_; }
  size_t size() const { return elems_.size(); }
  const LieElement& operator[](size_t i) const { return elems_[i]; }
  int degree(size_t i) const { return static_cast<int>(elems_[i].word.size()); }

  int index_of(const Word& lyndon) const {
    auto it = by_word_.find(lyndon);
    if (it == by_word_.end()) throw std::domain_error("LieBasis: not a basis word");
    return it->second;
  }

  template <class F>
  Poly<F> expansion_in(const F& field, size_t i, int target_rank = 0) const {
    int rk = target_rank ? target_rank : rank_;
    Poly<F> p(field, rk);
    for (auto& [w, c] : elems_[i].expansion) p.add_term(w, field.from_long(c));
    return p;
  }

  std::string bracket_str(size_t i) const {
    const LieElement& e = elems_[i];
    if (e.left < 0) return generator_name(e.word[0]);
    return "[" + bracket_str(e.left) + "," + bracket_str(e.right) + "]";
  }

 private:
  void build() {
    // collect Lyndon words by brute enumeration; sizes here are tiny
    std::vector<Word> lyndon;
    for (int len = 1; len <= max_degree_; ++len) {
      Word w(len, 0);
      for (;;) {
        if (detail::is_lyndon(w)) lyndon.push_back(w);
        int i = len - 1;
        while (i >= 0 && w[i] == rank_ - 1) w[i--] = 0;
        if (i < 0) break;
        ++w[i];
      }
    }
    std::sort(lyndon.begin(), lyndon.end(), [&](const Word& a, const Word& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return tie_ == TieBreak::Lex ? a < b : b < a;
    });
    elems_.reserve(lyndon.size());
    for (auto& w : lyndon) {
      LieElement e;
      e.word = w;
      e.mdeg = multidegree_of(w, rank_);
      elems_.push_back(std::move(e));
      by_word_.emplace(w, static_cast<int>(elems_.size() - 1));
    }
    for (size_t i = 0; i < elems_.size(); ++i) resolve(i);
  }

  // standard factorization w = uv, v the longest proper Lyndon suffix
  void resolve(size_t i) {
    LieElement& e = elems_[i];
    if (!e.expansion.empty() || e.word.size() == 1) {
      if (e.word.size() == 1) e.expansion = {{e.word, 1}};
      return;
    }
    const Word& w = e.word;
    size_t split = 0;
    for (size_t s = 1; s < w.size(); ++s) {
      Word suffix(w.begin() + s, w.end());
      if (detail::is_lyndon(suffix)) {
        split = s;
        break;
      }
    }
    if (split == 0) throw std::logic_error("LieBasis: standard factorization failed");
    Word u(w.begin(), w.begin() + split), v(w.begin() + split, w.end());
    e.left = index_of(u);
    e.right = index_of(v);
    resolve(e.left);
    resolve(e.right);
    auto& a = elems_[e.left].expansion;
    auto& b = elems_[e.right].expansion;
    auto ab = detail::expansion_mul(a, b, 1);
    auto ba = detail::expansion_mul(b, a, -1);
    for (auto& [w2, c] : ba) {
      long& slot = ab[w2];
      slot += c;
      if (slot == 0) ab.erase(w2);
    }
    e.expansion = std::move(ab);
  }

  int rank_;
  int max_degree_;
  TieBreak tie_;
  std::vector<LieElement> elems_;
  std::map<Word, int> by_word_;
};

}  // namespace lienil
