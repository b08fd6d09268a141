#pragma once

// Dense linear algebra over F2 for small test complexes (at most 64 generators).
// Vectors are bitmasks; a linear map is the list of images of basis vectors.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bfss/sscube.hpp"

namespace gf2 {

using Vec = std::uint64_t;

inline int rank(std::vector<Vec> v) {
  int r = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const Vec m = Vec(1) << bit;
    auto it = std::find_if(v.begin() + r, v.end(), [m](Vec x) { return x & m; });
    if (it == v.end()) continue;
    std::swap(*it, v[r]);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != static_cast<std::size_t>(r) && (v[j] & m)) v[j] ^= v[r];
    ++r;
  }
  return r;
}

inline Vec apply(const std::vector<Vec>& cols, Vec x) {
  Vec y = 0;
  for (int i = 0; x; ++i, x >>= 1)
    if (x & 1) y ^= cols[i];
  return y;
}

// Basis of {x in span(domain) : image(x) & mask == 0}.
inline std::vector<Vec> kernel(const std::vector<Vec>& cols, const std::vector<Vec>& domain, Vec mask) {
  struct Row {
    Vec img, src;
  };
  std::vector<Row> rows;
  for (Vec x : domain) rows.push_back({apply(cols, x) & mask, x});
  std::size_t r = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const Vec m = Vec(1) << bit;
    std::size_t p = r;
    while (p < rows.size() && !(rows[p].img & m)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != r && (rows[j].img & m)) {
        rows[j].img ^= rows[r].img;
        rows[j].src ^= rows[r].src;
      }
    ++r;
  }
  std::vector<Vec> out;
  for (std::size_t j = r; j < rows.size(); ++j) out.push_back(rows[j].src);
  return out;
}

inline std::vector<Vec> columns(const bfss::ChainComplex& C) {
  std::vector<Vec> cols(C.size(), 0);
  for (int x = 0; x < C.size(); ++x)
    for (int y : C.d[x]) cols[x] ^= Vec(1) << y;
  return cols;
}

inline int homology(const bfss::ChainComplex& C) {
  auto cols = columns(C);
  return C.size() - 2 * rank(cols);
}

// dim E_r^p = dim Z_r^p - dim(Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}) for the
// filtration by weight (d raises weight).
inline int page_rank(const bfss::ChainComplex& C, int r, int p) {
  const auto cols = columns(C);
  std::vector<int> w(C.size());
  for (int x = 0; x < C.size(); ++x) w[x] = bfss::weight(C.level[x]);
  auto F = [&](int q) {
    std::vector<Vec> b;
    for (int x = 0; x < C.size(); ++x)
      if (w[x] >= q) b.push_back(Vec(1) << x);
    return b;
  };
  auto below = [&](int q) {
    Vec m = 0;
    for (int x = 0; x < C.size(); ++x)
      if (w[x] < q) m |= Vec(1) << x;
    return m;
  };
  auto Z = [&](int rr, int q) { return kernel(cols, F(q), below(q + rr)); };
  const auto zr = Z(r, p);
  auto sum = Z(r - 1, p + 1);
  for (Vec x : Z(r - 1, p - r + 1)) sum.push_back(apply(cols, x));
  return rank(zr) - rank(sum);
}

// A filtered complex over the cube {0,1}^dim: cancelling pairs plus survivors,
// conjugated by random filtration-preserving basis changes.
inline bfss::ChainComplex random_cube_complex(std::mt19937& rng, int n, int dim) {
  std::uniform_int_distribution<int> vert(0, (1 << dim) - 1);
  std::vector<int> v(n);
  for (auto& x : v) x = vert(rng);
  auto le = [](int a, int b) { return (a & b) == a; };
  std::vector<Vec> M(n, 0);  // M[x] = d(e_x)
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i + 1 < n; i += 2) {
    int a = idx[i], b = idx[i + 1];
    if (!le(v[a], v[b])) std::swap(a, b);
    if (le(v[a], v[b]) && coin(rng)) M[a] = Vec(1) << b;
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int step = 0; step < 4 * n; ++step) {
    const int i = pick(rng), j = pick(rng);
    if (i == j || !le(v[i], v[j])) continue;
    // New basis vector e_i + e_j: column i += column j, then row j += row i.
    M[i] ^= M[j];
    for (auto& col : M)
      if (col >> i & 1) col ^= Vec(1) << j;
  }
  bfss::ChainComplex C;
  for (int x = 0; x < n; ++x) {
    bfss::Level lv(dim);
    for (int k = 0; k < dim; ++k) lv[k] = static_cast<std::uint8_t>(v[x] >> (dim - 1 - k) & 1);
    C.level.push_back(lv);
    C.name.push_back("g" + std::to_string(x));
    std::vector<int> t;
    for (int y = 0; y < n; ++y)
      if (M[x] >> y & 1) t.push_back(y);
    C.d.push_back(t);
  }
  return C;
}

}  // namespace gf2
