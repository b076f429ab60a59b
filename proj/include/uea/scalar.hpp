#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uea {

// Exact rational coefficient. mpq_class keeps numerator/denominator in
// canonical form as long as values are built through the helpers below.
using Scalar = mpq_class;

inline Scalar make_scalar(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& q);

// Accepts "p", "-p", "p/q", "+p/q". Rejects zero denominators and junk.
std::optional<Scalar> parse_scalar(std::string_view text);

// Sparse linear combination keyed by basis element (int) or word.
template <class Key>
using LinComb = std::map<Key, Scalar>;

using Vec = LinComb<int>;
using Word = std::vector<int>;
using WordVec = LinComb<Word>;

template <class Key>
void add_term(LinComb<Key>& acc, const Key& key, const Scalar& coef) {
  if (sgn(coef) == 0) return;
  auto [it, inserted] = acc.try_emplace(key, coef);
  if (!inserted) {
    it->second += coef;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

template <class Key>
void add_scaled(LinComb<Key>& acc, const LinComb<Key>& v, const Scalar& coef) {
  if (sgn(coef) == 0) return;
  for (const auto& [k, c] : v) add_term(acc, k, c * coef);
}

template <class Key>
LinComb<Key> scaled(const LinComb<Key>& v, const Scalar& coef) {
  LinComb<Key> out;
  add_scaled(out, v, coef);
  return out;
}

template <class Key>
LinComb<Key> difference(const LinComb<Key>& a, const LinComb<Key>& b) {
  LinComb<Key> out = a;
  add_scaled(out, b, Scalar(-1));
  return out;
}

inline Scalar sign_scalar(bool negative) { return negative ? Scalar(-1) : Scalar(1); }

}  // namespace uea
