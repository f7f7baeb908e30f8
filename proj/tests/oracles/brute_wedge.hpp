#pragma once

// Wedge product through ordered index tuples: every pair of basis monomials
// is concatenated and sorted by bubble sort, counting transpositions. Shares
// no code with the bitmask implementation.

#include <map>
#include <vector>

#include "qpsh/exterior.hpp"

namespace qpsh::oracle {

using Tuple = std::vector<int>;

template <class C>
std::map<Tuple, C> to_tuples(const BasicForm<C>& w) {
  std::map<Tuple, C> out;
  w.for_each_mask([&](Mask m) {
    if (is_zero_coeff(w[m])) return;
    Tuple t;
    for (int i = 0; i < w.dim(); ++i)
      if (m & (Mask{1} << i)) t.push_back(i);
    out[t] = w[m];
  });
  return out;
}

/// Returns {sorted tuple, sign}, sign 0 on a repeated index.
inline std::pair<Tuple, int> sort_with_sign(Tuple t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j + 1 < t.size() - i; ++j) {
      if (t[j] == t[j + 1]) return {t, 0};
      if (t[j] > t[j + 1]) {
        std::swap(t[j], t[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < t.size(); ++j)
    if (t[j] == t[j + 1]) return {t, 0};
  return {t, sign};
}

template <class C>
std::map<Tuple, C> brute_wedge(const std::map<Tuple, C>& a, const std::map<Tuple, C>& b) {
  std::map<Tuple, C> out;
  for (const auto& [ta, ca] : a)
    for (const auto& [tb, cb] : b) {
      Tuple t = ta;
      t.insert(t.end(), tb.begin(), tb.end());
      const auto [sorted, sign] = sort_with_sign(t);
      if (sign == 0) continue;
      C prod = ca * cb;
      out[sorted] = sign > 0 ? out[sorted] + prod : out[sorted] - prod;
    }
  return out;
}

}  // namespace qpsh::oracle
