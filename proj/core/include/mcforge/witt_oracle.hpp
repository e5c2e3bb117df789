#pragma once

// Independent dimension oracle for free graded Lie algebras.
//
// By PBW the enveloping algebra T(V) of the free Lie algebra L(V) has the
// Hilbert series of the graded-symmetric algebra on L, so
//   1 / (1 − Σ_g x y^{|g|}) = Π_{w,k} (1 − x^w y^k)^{−dim L_{w,k}}   (k even)
//                                     · (1 + x^w y^k)^{ dim L_{w,k}}  (k odd)
// and the dimensions are peeled off weight by weight. Only integer
// arithmetic on series; no Lie brackets involved.

#include <map>
#include <utility>
#include <vector>

namespace mcforge::oracle {

using Series = std::map<std::pair<int, int>, long long>;  // (weight, degree) -> coefficient

inline Series tensor_series(const std::vector<int>& degrees, int max_weight) {
  Series s{{{0, 0}, 1}};
  Series layer{{{0, 0}, 1}};
  for (int w = 1; w <= max_weight; ++w) {
    Series next;
    for (const auto& [key, c] : layer)
      for (int d : degrees) next[{w, key.second + d}] += c;
    for (const auto& [key, c] : next) s[key] += c;
    layer = std::move(next);
  }
  return s;
}

inline Series multiply_factor(const Series& s, int w, int k, int max_weight) {
  Series out;
  if (k % 2 == 0) {
    // times 1 / (1 − x^w y^k)
    for (const auto& [key, c] : s)
      for (int j = 0; key.first + j * w <= max_weight; ++j) out[{key.first + j * w, key.second + j * k}] += c;
  } else {
    // times (1 + x^w y^k)
    for (const auto& [key, c] : s) {
      out[key] += c;
      if (key.first + w <= max_weight) out[{key.first + w, key.second + k}] += c;
    }
  }
  return out;
}

/// dim L_{w,k} for 1 <= w <= max_weight.
inline std::map<std::pair<int, int>, long long> free_lie_dims(const std::vector<int>& degrees, int max_weight) {
  Series target = tensor_series(degrees, max_weight);
  Series product{{{0, 0}, 1}};
  std::map<std::pair<int, int>, long long> dims;
  for (int w = 1; w <= max_weight; ++w) {
    std::map<int, long long> fresh;
    for (const auto& [key, c] : target)
      if (key.first == w) fresh[key.second] += c;
    for (const auto& [key, c] : product)
      if (key.first == w) fresh[key.second] -= c;
    for (const auto& [k, n] : fresh) {
      if (n == 0) continue;
      dims[{w, k}] = n;
      for (long long r = 0; r < n; ++r) product = multiply_factor(product, w, k, max_weight);
    }
  }
  return dims;
}

/// Classical Witt formula for generators all of even degree:
/// dim L_w = (1/w) Σ_{d | w} μ(d) m^{w/d}.
inline long long witt_even(int m, int w) {
  auto mobius = [](int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
      }
    return n > 1 ? -r : r;
  };
  long long s = 0;
  for (int d = 1; d <= w; ++d)
    if (w % d == 0) {
      long long pw = 1;
      for (int i = 0; i < w / d; ++i) pw *= m;
      s += mobius(d) * pw;
    }
  return s / w;
}

}  // namespace mcforge::oracle
