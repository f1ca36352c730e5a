#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lienil/fields.hpp"

namespace lienil {

// A word over the free generators; letters are generator indices, the empty
// word is the algebra unit.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

// Exponent vector, one entry per generator.
using MultiDegree = std::vector<int>;

inline int md_total(const MultiDegree& d) {
  return std::accumulate(d.begin(), d.end(), 0);
}

inline bool md_leq(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline MultiDegree md_add(const MultiDegree& a, const MultiDegree& b) {
  MultiDegree r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

inline MultiDegree md_sub(const MultiDegree& a, const MultiDegree& b) {
  MultiDegree r = a;
  for (size_t i = 0; i < a.size(); ++i) {
    r[i] -= b[i];
    if (r[i] < 0) throw std::domain_error("md_sub: negative exponent");
  }
  return r;
}

inline MultiDegree md_unit(int rank, int var) {
  MultiDegree d(rank, 0);
  d.at(var) = 1;
  return d;
}

inline MultiDegree multidegree_of(const Word& w, int rank) {
  MultiDegree d(rank, 0);
  for (Letter l : w) {
    if (l >= rank) throw std::domain_error("multidegree_of: letter outside rank");
    ++d[l];
  }
  return d;
}

// Canonical word order: by length, then lexicographically. Gives polynomials
// a deterministic term order and graded spans their column order.
inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

namespace detail {
inline void enumerate_words_rec(MultiDegree& left, Word& cur, std::vector<Word>& out) {
  bool done = true;
  for (size_t i = 0; i < left.size(); ++i) {
    if (left[i] > 0) {
      done = false;
      --left[i];
      cur.push_back(static_cast<Letter>(i));
      enumerate_words_rec(left, cur, out);
      cur.pop_back();
      ++left[i];
    }
  }
  if (done) out.push_back(cur);
}
}  // namespace detail

// All words of the given multidegree, in canonical (lexicographic) order.
inline std::vector<Word> words_of_multidegree(const MultiDegree& d) {
  std::vector<Word> out;
  MultiDegree left = d;
  Word cur;
  cur.reserve(md_total(d));
  detail::enumerate_words_rec(left, cur, out);
  return out;
}

inline mpz_class multinomial_mpz(const MultiDegree& d) {
  mpz_class r = factorial_mpz(md_total(d));
  for (int e : d) r /= factorial_mpz(e);
  return r;
}

// Column indexing of one multidegree component: the words in canonical order
// plus the reverse lookup.
struct WordIndex {
  MultiDegree degree;
  std::vector<Word> words;
  std::map<Word, int> index;

  explicit WordIndex(const MultiDegree& d) : degree(d), words(words_of_multidegree(d)) {
    for (size_t i = 0; i < words.size(); ++i) index.emplace(words[i], static_cast<int>(i));
  }

  int dim() const { return static_cast<int>(words.size()); }
  int column_of(const Word& w) const {
    auto it = index.find(w);
    if (it == index.end()) throw std::domain_error("WordIndex: word not in component");
    return it->second;
  }
};

// All multidegrees of the given rank and exact total degree, lexicographic.
inline std::vector<MultiDegree> multidegrees_of_total(int rank, int total) {
  std::vector<MultiDegree> out;
  MultiDegree cur(rank, 0);
  // lexicographic recursion over exponent vectors
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == rank - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
  };
  if (rank == 0) return out;
  rec(rec, 0, total);
  return out;
}

inline std::vector<MultiDegree> multidegrees_up_to_total(int rank, int max_total,
                                                         int min_total = 1) {
  std::vector<MultiDegree> out;
  for (int t = min_total; t <= max_total; ++t)
    for (auto& d : multidegrees_of_total(rank, t)) out.push_back(d);
  return out;
}

// Generator display names: x, y, z, then x4..x9.
inline std::string generator_name(int i) {
  switch (i) {
    case 0: return "x";
    case 1: return "y";
    case 2: return "z";
    default: return "x" + std::to_string(i + 1);
  }
}

inline std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!s.empty()) s += "*";
    s += generator_name(w[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

inline std::string md_str(const MultiDegree& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

}  // namespace lienil
