#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace umps {

// A word is a finite string over the alphabet [n] = {0,...,n-1}. Words of
// length d index the coordinates of the tensor space; their equivalence
// classes under rotation (necklaces) and under rotation+reflection
// (bracelets) index the cyclically resp. dihedrally symmetric coordinates.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

// Per-symbol multiplicities (w_0,...,w_{n-1}); the weight of a word.
using WeightVector = std::vector<int>;

inline void check_alphabet(const Word& w, int n) {
  for (Letter c : w)
    if (static_cast<int>(c) >= n)
      throw std::invalid_argument("word contains letter " + std::to_string(int(c)) +
                                  " outside alphabet [" + std::to_string(n) + "]");
}

inline Word rotated_left(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  Word r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

inline Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

// Lexicographically minimal rotation. Naive O(d^2) scan; fine at desk scale.
inline Word canonical_necklace(const Word& w) {
  Word best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word cand = rotated_left(w, k);
    if (cand < best) best = cand;
  }
  return best;
}

// Lexicographically minimal word in the dihedral orbit (all rotations of the
// word and of its reversal).
inline Word canonical_bracelet(const Word& w) {
  Word best = canonical_necklace(w);
  Word rev = canonical_necklace(reversed(w));
  return rev < best ? rev : best;
}

inline WeightVector weight_vector(const Word& w, int n) {
  check_alphabet(w, n);
  WeightVector counts(static_cast<std::size_t>(n), 0);
  for (Letter c : w) ++counts[c];
  return counts;
}

// Scalar weight used throughout the binary (n=2) pipeline: the number of 1s.
inline int ones_count(const Word& w) {
  int c = 0;
  for (Letter x : w) c += (x == 1);
  return c;
}

// Does `pattern` occur as a factor of some rotation of `w`?
inline bool contains_cyclic(const Word& w, const Word& pattern) {
  if (pattern.size() > w.size()) return false;
  if (pattern.empty()) return true;
  for (std::size_t start = 0; start < w.size(); ++start) {
    bool ok = true;
    for (std::size_t j = 0; j < pattern.size(); ++j)
      if (w[(start + j) % w.size()] != pattern[j]) { ok = false; break; }
    if (ok) return true;
  }
  return false;
}

inline std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter c : w) {
    if (c > 9) throw std::invalid_argument("word_to_string supports alphabets up to 10");
    s.push_back(static_cast<char>('0' + c));
  }
  return s;
}

inline Word word_from_string(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("invalid word character in '" + s + "'");
    w.push_back(static_cast<Letter>(c - '0'));
  }
  return w;
}

// Equivalence class of words under rotation, held by its canonical
// representative.
struct Necklace {
  Word representative;
  static Necklace of(const Word& w) { return Necklace{canonical_necklace(w)}; }
  auto operator<=>(const Necklace&) const = default;
};

// Equivalence class of words under rotation and reflection.
struct Bracelet {
  Word representative;
  static Bracelet of(const Word& w) { return Bracelet{canonical_bracelet(w)}; }
  auto operator<=>(const Bracelet&) const = default;
};

}  // namespace umps
