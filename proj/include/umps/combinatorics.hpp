#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "umps/errors.hpp"
#include "umps/rational.hpp"
#include "umps/word.hpp"

namespace umps {

inline std::uint64_t euler_phi(std::uint64_t k) {
  std::uint64_t result = k;
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      while (k % p == 0) k /= p;
      result -= result / p;
    }
  }
  if (k > 1) result -= result / k;
  return result;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t k) {
  std::vector<std::uint64_t> ds;
  for (std::uint64_t l = 1; l * l <= k; ++l) {
    if (k % l == 0) {
      ds.push_back(l);
      if (l != k / l) ds.push_back(k / l);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline Int binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  Int r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    r *= (a - b + i);
    r /= i;  // exact: r is a binomial prefix
  }
  return r;
}

inline Int int_pow(Int base, std::uint64_t e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

namespace detail {

inline void check_nd(int n, int d) {
  if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
  if (d < 0) throw std::invalid_argument("word length must be >= 0");
}

inline void check_weight(int n, int d, const WeightVector& lambda) {
  if (static_cast<int>(lambda.size()) != n)
    throw std::invalid_argument("weight vector has wrong length for alphabet size " +
                                std::to_string(n));
  long long sum = 0;
  for (int c : lambda) {
    if (c < 0) throw std::invalid_argument("weight vector has a negative entry");
    sum += c;
  }
  if (sum != d)
    throw std::invalid_argument("weight vector sums to " + std::to_string(sum) +
                                ", expected " + std::to_string(d));
}

// Odometer enumeration of all words in [n]^d, keeping the fixed points of
// `canon`. The words arrive in lexicographic order, so the output is sorted.
template <class Canon>
std::vector<Word> enumerate_canonical(int n, int d, const std::optional<WeightVector>& lambda,
                                      Canon&& canon) {
  check_nd(n, d);
  if (lambda) check_weight(n, d, *lambda);
  if (d == 0) {
    return {Word{}};  // one empty word by convention
  }
  double total = 1;
  for (int i = 0; i < d; ++i) total *= n;
  if (total > double(1ULL << 26))
    throw ResourceError("enumeration over " + std::to_string(n) + "^" + std::to_string(d) +
                        " words exceeds the 2^26 scan cap");
  std::vector<Word> out;
  Word w(static_cast<std::size_t>(d), 0);
  while (true) {
    if (!lambda || weight_vector(w, n) == *lambda) {
      if (canon(w) == w) out.push_back(w);
    }
    int pos = d - 1;
    while (pos >= 0 && w[pos] == n - 1) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  return out;
}

}  // namespace detail

inline std::vector<Necklace> enumerate_necklaces(int n, int d,
                                                 const std::optional<WeightVector>& lambda = {}) {
  auto words = detail::enumerate_canonical(n, d, lambda,
                                           [](const Word& w) { return canonical_necklace(w); });
  std::vector<Necklace> out;
  out.reserve(words.size());
  for (auto& w : words) out.push_back(Necklace{std::move(w)});
  return out;
}

inline std::vector<Bracelet> enumerate_bracelets(int n, int d,
                                                 const std::optional<WeightVector>& lambda = {}) {
  auto words = detail::enumerate_canonical(n, d, lambda,
                                           [](const Word& w) { return canonical_bracelet(w); });
  std::vector<Bracelet> out;
  out.reserve(words.size());
  for (auto& w : words) out.push_back(Bracelet{std::move(w)});
  return out;
}

// Number of necklaces of length d over [n]: (1/d) sum_{l|d} phi(l) n^{d/l}.
inline Int count_necklaces(int n, int d) {
  detail::check_nd(n, d);
  if (d == 0) return 1;
  Int sum = 0;
  for (auto l : divisors(static_cast<std::uint64_t>(d)))
    sum += Int(euler_phi(l)) * int_pow(n, static_cast<std::uint64_t>(d) / l);
  return exact_div(sum, d);
}

// Number of bracelets of length d over [n]. The reflection correction is
// (n+1) n^{d/2} / 4 for even d and n^{(d+1)/2} / 2 for odd d.
inline Int count_bracelets(int n, int d) {
  detail::check_nd(n, d);
  if (d == 0) return 1;
  Int twice_neck = count_necklaces(n, d) * 2;  // avoids odd/4 issues below
  Int correction;
  if (d % 2 == 0)
    correction = Int(n + 1) * int_pow(n, static_cast<std::uint64_t>(d) / 2);
  else
    correction = 2 * int_pow(n, static_cast<std::uint64_t>(d + 1) / 2);
  return exact_div(twice_neck + correction, 4);
}

// Number of necklaces of weight lambda: the coefficient of x^lambda in
// (1/d) sum_{l|d} phi(d/l) (x_0^{d/l}+...+x_{n-1}^{d/l})^l, extracted as a
// multinomial coefficient per divisor.
inline Int count_necklaces_weight(int n, int d, const WeightVector& lambda) {
  detail::check_nd(n, d);
  detail::check_weight(n, d, lambda);
  if (d == 0) return 1;
  Int sum = 0;
  for (auto l : divisors(static_cast<std::uint64_t>(d))) {
    const std::uint64_t period = static_cast<std::uint64_t>(d) / l;  // d/l, exponent of each x_i
    bool ok = true;
    for (int c : lambda)
      if (static_cast<std::uint64_t>(c) % period != 0) { ok = false; break; }
    if (!ok) continue;
    // multinomial(l; lambda_0/period, ..., lambda_{n-1}/period)
    Int multinom = 1;
    std::int64_t rest = static_cast<std::int64_t>(l);
    for (int c : lambda) {
      const std::int64_t part = c / static_cast<std::int64_t>(period);
      multinom *= binomial(rest, part);
      rest -= part;
    }
    sum += Int(euler_phi(period)) * multinom;
  }
  return exact_div(sum, d);
}

// Number of binary bracelets of length d with w ones. Totient sum over
// l | gcd(d,w) plus the palindromic-orbit correction, which depends on the
// parities of d and w.
inline Int count_bracelets_weight_binary(int d, int w) {
  if (d < 1) throw std::invalid_argument("count_bracelets_weight_binary requires d >= 1");
  if (w < 0 || w > d) throw std::invalid_argument("weight w must satisfy 0 <= w <= d");
  const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(w));
  Int neck_sum = 0;  // = 2d * (necklace count of weight w) / 2
  for (auto l : divisors(g == 0 ? static_cast<std::uint64_t>(d) : g))
    neck_sum += Int(euler_phi(l)) * binomial(d / static_cast<std::int64_t>(l),
                                             w / static_cast<std::int64_t>(l));
  Int correction;
  if (d % 2 == 1)
    correction = binomial((d - 1) / 2, w / 2);
  else if (w % 2 == 1)
    correction = binomial(d / 2 - 1, (w - 1) / 2);
  else
    correction = binomial(d / 2, w / 2);
  return exact_div(neck_sum + Int(d) * correction, 2 * d);
}

}  // namespace umps
