#include "bfss/khovanov.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bfss {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

Resolution resolve(const PlatDiagram& d, unsigned v) {
  const int n = d.strands, L = static_cast<int>(d.word.size());
  auto seg = [n](int t, int j) { return t * n + (j - 1); };
  UnionFind uf((L + 1) * n);
  for (int j = 1; j <= n; j += 2) {
    uf.unite(seg(0, j), seg(0, j + 1));
    uf.unite(seg(L, j), seg(L, j + 1));
  }
  for (int t = 0; t < L; ++t) {
    const auto [i, s] = d.word[t];
    const int r = v >> t & 1;
    const bool anti = s > 0 ? r == 0 : r == 1;
    for (int j = 1; j <= n; ++j)
      if (j != i && j != i + 1) uf.unite(seg(t, j), seg(t + 1, j));
    if (anti) {
      uf.unite(seg(t, i), seg(t, i + 1));
      uf.unite(seg(t + 1, i), seg(t + 1, i + 1));
    } else {
      uf.unite(seg(t, i), seg(t + 1, i));
      uf.unite(seg(t, i + 1), seg(t + 1, i + 1));
    }
  }
  Resolution res;
  res.segment.assign((L + 1) * n, -1);
  std::vector<int> label((L + 1) * n, -1);
  for (int x = 0; x < (L + 1) * n; ++x) {
    int root = uf.find(x);
    if (label[root] < 0) label[root] = res.circles++;
    res.segment[x] = label[root];
  }
  res.marked = res.segment[seg(0, 1)];
  return res;
}

// Images of a state (bit c set = circle c labeled x) along an edge.
std::vector<unsigned> edge_map(const Resolution& a, const Resolution& b, unsigned state) {
  std::vector<std::vector<int>> fwd(a.circles), back(b.circles);
  for (std::size_t s = 0; s < a.segment.size(); ++s) {
    auto& f = fwd[a.segment[s]];
    if (std::find(f.begin(), f.end(), b.segment[s]) == f.end()) f.push_back(b.segment[s]);
    auto& g = back[b.segment[s]];
    if (std::find(g.begin(), g.end(), a.segment[s]) == g.end()) g.push_back(a.segment[s]);
  }
  if (b.circles == a.circles - 1) {
    unsigned out = 0;
    for (int c = 0; c < b.circles; ++c) {
      int x = 0;
      for (int src : back[c]) x += state >> src & 1;
      if (x >= 2) return {};
      if (x) out |= 1u << c;
    }
    return {out};
  }
  if (b.circles != a.circles + 1) throw std::logic_error("adjacent resolutions must differ by one circle");
  unsigned base = 0;
  int split = -1;
  for (int c = 0; c < a.circles; ++c) {
    if (fwd[c].size() == 1) {
      if (state >> c & 1) base |= 1u << fwd[c][0];
    } else {
      split = c;
    }
  }
  const unsigned c1 = 1u << fwd[split][0], c2 = 1u << fwd[split][1];
  if (state >> split & 1) return {base | c1 | c2};
  return {base | c1, base | c2};
}

int f2_rank(std::vector<std::vector<int>> cols) {
  std::vector<std::vector<int>> piv;
  int rank = 0;
  std::map<int, int> pivot_of;
  for (auto& col : cols) {
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      auto it = pivot_of.find(col.back());
      if (it == pivot_of.end()) break;
      std::vector<int> out;
      const auto& p = piv[it->second];
      std::set_symmetric_difference(col.begin(), col.end(), p.begin(), p.end(), std::back_inserter(out));
      col.swap(out);
    }
    if (col.empty()) continue;
    pivot_of[col.back()] = static_cast<int>(piv.size());
    piv.push_back(col);
    ++rank;
  }
  return rank;
}

std::map<int, int> kh(const PlatDiagram& d, bool reduced, KhGrading g) {
  const int c = static_cast<int>(d.word.size());
  if (c > 20) throw std::invalid_argument("Khovanov oracle limited to 20 crossings");
  const ResolutionCube cube = resolution_cube(d);
  const unsigned nv = 1u << c;
  std::vector<std::vector<unsigned>> states(nv);
  std::vector<std::map<unsigned, int>> index(nv);
  std::vector<int> dims(c + 1, 0);
  for (unsigned v = 0; v < nv; ++v) {
    const auto& R = cube.vertices[v];
    const int w = __builtin_popcount(v);
    for (unsigned s = 0; s < (1u << R.circles); ++s) {
      if (reduced && !(s >> R.marked & 1)) continue;
      index[v][s] = dims[w]++;
      states[v].push_back(s);
    }
  }
  std::vector<int> rank(c + 1, 0);
  for (int w = 0; w < c; ++w) {
    std::vector<std::vector<int>> cols;
    for (unsigned v = 0; v < nv; ++v) {
      if (__builtin_popcount(v) != w) continue;
      for (unsigned s : states[v]) {
        std::vector<int> col;
        for (int t = 0; t < c; ++t) {
          if (v >> t & 1) continue;
          const unsigned v2 = v | 1u << t;
          for (unsigned s2 : edge_map(cube.vertices[v], cube.vertices[v2], s)) {
            int row = index[v2].at(s2);
            auto it = std::find(col.begin(), col.end(), row);
            if (it == col.end())
              col.push_back(row);
            else
              col.erase(it);
          }
        }
        cols.push_back(std::move(col));
      }
    }
    rank[w] = f2_rank(std::move(cols));
  }
  std::map<int, int> out;
  for (int w = 0; w <= c; ++w) {
    const int h = dims[w] - rank[w] - (w ? rank[w - 1] : 0);
    out[g == KhGrading::Direct ? w : c - w] = h;
  }
  return out;
}

}  // namespace

ResolutionCube resolution_cube(const PlatDiagram& d) {
  if (d.strands < 2 || d.strands % 2) throw std::invalid_argument("plat needs an even number of strands");
  for (const auto& [i, s] : d.word)
    if (i < 1 || i > d.strands - 1 || (s != 1 && s != -1)) throw std::invalid_argument("braid generator out of range");
  ResolutionCube cube;
  cube.crossings = static_cast<int>(d.word.size());
  for (unsigned v = 0; v < (1u << cube.crossings); ++v) cube.vertices.push_back(resolve(d, v));
  return cube;
}

std::map<int, int> reduced_kh(const PlatDiagram& d, KhGrading g) { return kh(d, true, g); }
std::map<int, int> unreduced_kh(const PlatDiagram& d, KhGrading g) { return kh(d, false, g); }

}  // namespace bfss
