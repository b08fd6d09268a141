#include "bfss/sscube.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bfss {

int weight(const Level& v) { return std::accumulate(v.begin(), v.end(), 0); }

std::string vertex_str(const Level& v) {
  std::string s;
  for (auto b : v) s += static_cast<char>('0' + b);
  return s;
}

ChainComplex weight_filtration(const ChainComplex& cube) {
  ChainComplex w = cube;
  for (auto& l : w.level) l = Level{static_cast<std::uint8_t>(weight(l))};
  return w;
}

int Page::total() const {
  int t = 0;
  for (auto [p, n] : ranks_by_weight) t += n;
  return t;
}

const Page& SpectralSequence::page(int r) const {
  if (pages.empty()) throw InvariantError("empty spectral sequence");
  return pages[std::min<std::size_t>(r, pages.size() - 1)];
}

int homology_rank(const ChainComplex& C) {
  // Column reduction, pivot = largest row index.
  std::map<int, std::vector<int>> pivots;
  int rank = 0;
  for (int x = 0; x < C.size(); ++x) {
    std::vector<int> col = C.d[x];
    while (!col.empty()) {
      auto it = pivots.find(col.back());
      if (it == pivots.end()) break;
      std::vector<int> out;
      std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(), it->second.end(), std::back_inserter(out));
      col.swap(out);
    }
    if (col.empty()) continue;
    ++rank;
    pivots.emplace(col.back(), std::move(col));
  }
  return C.size() - 2 * rank;
}

SpectralSequence spectral_sequence(const ChainComplex& cube) {
  if (!structure_check(cube).ok) throw InvariantError("spectral_sequence: d^2 != 0");
  if (!filtration_check(cube).ok) throw InvariantError("spectral_sequence: differential lowers the filtration");
  const int n = cube.size();
  SpectralSequence ss;
  ss.cube_dim = n ? static_cast<int>(cube.level[0].size()) : 0;
  std::vector<int> w(n);
  for (int x = 0; x < n; ++x) w[x] = weight(cube.level[x]);
  std::vector<std::set<int>> d(n), inc(n);
  for (int x = 0; x < n; ++x)
    for (int y : cube.d[x]) {
      d[x].insert(y);
      inc[y].insert(x);
    }
  std::vector<char> alive(n, 1);
  auto snapshot = [&](int r) {
    Page p;
    p.r = r;
    for (int x = 0; x < n; ++x)
      if (alive[x]) ++p.ranks_by_weight[w[x]];
    return p;
  };
  auto by_vertex = [&] {
    std::map<std::string, int> m;
    for (int x = 0; x < n; ++x)
      if (alive[x]) ++m[vertex_str(cube.level[x])];
    return m;
  };
  ss.e0_by_vertex = by_vertex();
  ss.pages.push_back(snapshot(0));

  int last_nonzero = -1;
  for (int r = 0;; ++r) {
    bool any = false;
    for (int x = 0; x < n && !any; ++x)
      if (alive[x]) any = std::any_of(d[x].begin(), d[x].end(), [x](int y) { return y != x; });
    if (!any) break;
    Page& cur = ss.pages.back();
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x0 = 0; x0 < n; ++x0) {
        if (!alive[x0]) continue;
        int y0 = -1;
        for (int y : d[x0])
          if (y != x0 && w[y] - w[x0] == r && (r > 0 || cube.level[y] == cube.level[x0])) {
            y0 = y;
            break;
          }
        if (y0 < 0) continue;
        std::vector<int> X0;
        for (int z : d[x0])
          if (z != y0) X0.push_back(z);
        std::vector<int> srcs(inc[y0].begin(), inc[y0].end());
        for (int v : srcs) {
          if (v == x0) continue;
          for (int z : X0) {
            if (d[v].erase(z))
              inc[z].erase(v);
            else {
              d[v].insert(z);
              inc[z].insert(v);
            }
          }
        }
        for (int c : {x0, y0}) {
          for (int z : d[c]) inc[z].erase(c);
          for (int v : inc[c]) d[v].erase(c);
          d[c].clear();
          inc[c].clear();
          alive[c] = 0;
        }
        ++cur.d_ranks[w[x0]];
        last_nonzero = r;
        changed = true;
      }
    }
    if (r == 0) ss.e1_by_vertex = by_vertex();
    ss.pages.push_back(snapshot(r + 1));
  }
  if (ss.pages.size() == 1) {
    ss.e1_by_vertex = ss.e0_by_vertex;
    ss.pages.push_back(snapshot(1));
  }
  ss.collapse_page = last_nonzero + 1;
  ss.e_infty_total = ss.pages.back().total();
  if (ss.e_infty_total != homology_rank(cube)) throw InvariantError("E_infinity total differs from homology rank");
  return ss;
}

std::string to_json(const SpectralSequence& ss) {
  using nlohmann::json;
  json pages = json::array();
  for (const auto& p : ss.pages) {
    json rw = json::object(), dr = json::object();
    for (auto [k, v] : p.ranks_by_weight) rw[std::to_string(k)] = v;
    for (auto [k, v] : p.d_ranks) dr[std::to_string(k)] = v;
    pages.push_back({{"r", p.r}, {"ranks_by_weight", rw}, {"d_ranks", dr}});
  }
  json j{{"pages", pages},
         {"collapse_page", ss.collapse_page},
         {"e_infty_total", ss.e_infty_total},
         {"e0_by_vertex", ss.e0_by_vertex},
         {"e1_by_vertex", ss.e1_by_vertex}};
  return j.dump(2);
}

std::string render_grid(const SpectralSequence& ss) {
  std::ostringstream os;
  const int n = ss.cube_dim;
  auto vertex_table = [&](const char* title, const std::map<std::string, int>& m) {
    os << title << "\n";
    if (n == 2) {
      os << "        x2=0  x2=1\n";
      for (char a : {'0', '1'}) {
        os << "  x1=" << a << " ";
        for (char b : {'0', '1'}) {
          auto it = m.find(std::string{a, b});
          os << "  " << (it == m.end() ? 0 : it->second) << "   ";
        }
        os << "\n";
      }
    } else {
      for (const auto& [v, k] : m) os << "  " << (v.empty() ? "()" : v) << ": " << k << "\n";
    }
  };
  if (n <= 3) {
    vertex_table("E0 by vertex", ss.e0_by_vertex);
    vertex_table("E1 by vertex", ss.e1_by_vertex);
  }
  for (std::size_t r = 1; r < ss.pages.size(); ++r) {
    const auto& p = ss.pages[r];
    os << "E" << p.r << " by weight:";
    for (int k = 0; k <= n; ++k) {
      auto it = p.ranks_by_weight.find(k);
      os << " " << k << ":" << (it == p.ranks_by_weight.end() ? 0 : it->second);
    }
    os << "  (total " << p.total() << ")\n";
  }
  os << "collapse page " << ss.collapse_page << ", E_inf total " << ss.e_infty_total << "\n";
  return os.str();
}

}  // namespace bfss
