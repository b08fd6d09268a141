#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bfss/algebra.hpp"

namespace bfss {

using Level = std::vector<std::uint8_t>;
using Seq = std::vector<int>;

struct CheckReport {
  bool ok = true;
  std::vector<std::string> violations;
  void fail(std::string s) {
    ok = false;
    if (violations.size() < 64) violations.push_back(std::move(s));
  }
};

// ---------------------------------------------------------------- type D

template <class Alg>
struct DStructure {
  using Elem = typename Alg::Elem;
  using Id = typename Alg::Id;

  Alg alg;
  std::vector<Id> idem;
  std::vector<Level> level;
  std::vector<std::string> name;
  // delta[x][y] = coefficients c with c (x) y a term of delta^1(x)
  std::vector<std::map<int, std::set<Elem>>> delta;

  int size() const { return static_cast<int>(idem.size()); }
  int add_generator(Id i, Level lv = {}, std::string nm = {}) {
    idem.push_back(i);
    level.push_back(std::move(lv));
    name.push_back(nm.empty() ? "x" + std::to_string(idem.size() - 1) : std::move(nm));
    delta.emplace_back();
    return size() - 1;
  }
  void toggle_arrow(int x, Elem c, int y) {
    auto& s = delta[x][y];
    if (!s.erase(c)) s.insert(c);
    if (s.empty()) delta[x].erase(y);
  }
  std::size_t num_terms() const {
    std::size_t n = 0;
    for (const auto& m : delta)
      for (const auto& [y, s] : m) n += s.size();
    return n;
  }
};

using DS = DStructure<Single>;
using DD = DStructure<Outer>;

template <class Alg>
struct DMorphism {
  using Elem = typename Alg::Elem;
  const DStructure<Alg>* source = nullptr;
  const DStructure<Alg>* target = nullptr;
  std::vector<std::map<int, std::set<Elem>>> f;  // f[x][y]

  void toggle(int x, Elem c, int y) {
    auto& s = f[x][y];
    if (!s.erase(c)) s.insert(c);
    if (s.empty()) f[x].erase(y);
  }
  bool is_zero() const {
    for (const auto& m : f)
      if (!m.empty()) return false;
    return true;
  }
};

template <class Alg>
CheckReport structure_check(const DStructure<Alg>& P) {
  using Elem = typename Alg::Elem;
  CheckReport rep;
  const auto& A = P.alg;
  for (int x = 0; x < P.size(); ++x) {
    std::map<int, std::set<Elem>> acc;
    auto tog = [&](int y, Elem c) {
      auto& s = acc[y];
      if (!s.erase(c)) s.insert(c);
    };
    for (const auto& [y, cs] : P.delta[x]) {
      for (Elem c : cs) {
        if (A.left(c) != P.idem[x] || A.right(c) != P.idem[y])
          rep.fail("idempotent mismatch " + P.name[x] + " -> " + P.name[y] + " by " + A.str(c));
        for (Elem dc : A.d(c)) tog(y, dc);
        for (const auto& [z, cs2] : P.delta[y])
          for (Elem c2 : cs2) {
            Elem p = A.mul(c, c2);
            if (p != Alg::zero) tog(z, p);
          }
      }
    }
    for (const auto& [z, s] : acc)
      for (Elem c : s) rep.fail("structure equation: " + P.name[x] + " -> " + P.name[z] + " by " + A.str(c));
  }
  return rep;
}

template <class Alg>
DMorphism<Alg> mor_differential(const DMorphism<Alg>& g) {
  const auto& P = *g.source;
  const auto& Q = *g.target;
  const auto& A = P.alg;
  DMorphism<Alg> out{g.source, g.target, std::vector<std::map<int, std::set<typename Alg::Elem>>>(P.size())};
  for (int x = 0; x < P.size(); ++x) {
    for (const auto& [y, cs] : g.f[x])
      for (auto c : cs) {
        for (auto dc : A.d(c)) out.toggle(x, dc, y);
        for (const auto& [z, cs2] : Q.delta[y])
          for (auto c2 : cs2) {
            auto p = A.mul(c, c2);
            if (p != Alg::zero) out.toggle(x, p, z);
          }
      }
    for (const auto& [x2, cs] : P.delta[x])
      for (auto c : cs)
        for (const auto& [y, cs2] : g.f[x2])
          for (auto c2 : cs2) {
            auto p = A.mul(c, c2);
            if (p != Alg::zero) out.toggle(x, p, y);
          }
  }
  return out;
}

// (f o g): apply g, then f.
template <class Alg>
DMorphism<Alg> compose(const DMorphism<Alg>& f, const DMorphism<Alg>& g) {
  if (g.target != f.source) throw ValidationError("compose: source/target mismatch");
  const auto& A = g.source->alg;
  DMorphism<Alg> out{g.source, f.target, std::vector<std::map<int, std::set<typename Alg::Elem>>>(g.source->size())};
  for (int x = 0; x < g.source->size(); ++x)
    for (const auto& [y, cs] : g.f[x])
      for (auto c : cs)
        for (const auto& [z, cs2] : f.f[y])
          for (auto c2 : cs2) {
            auto p = A.mul(c, c2);
            if (p != Alg::zero) out.toggle(x, p, z);
          }
  return out;
}

template <class Alg>
DMorphism<Alg> identity_morphism(const DStructure<Alg>& P) {
  DMorphism<Alg> out{&P, &P, std::vector<std::map<int, std::set<typename Alg::Elem>>>(P.size())};
  for (int x = 0; x < P.size(); ++x) out.toggle(x, P.alg.unit(P.idem[x]), x);
  return out;
}

// Source at filtration 0, target at filtration 1; levels are prefixed.
template <class Alg>
DStructure<Alg> mapping_cone(const DMorphism<Alg>& f) {
  if (!mor_differential(f).is_zero()) throw ValidationError("mapping_cone: morphism is not a cycle");
  const auto& P = *f.source;
  const auto& Q = *f.target;
  DStructure<Alg> C;
  C.alg = P.alg;
  for (int x = 0; x < P.size(); ++x) {
    Level lv{0};
    lv.insert(lv.end(), P.level[x].begin(), P.level[x].end());
    C.add_generator(P.idem[x], lv, P.name[x]);
  }
  for (int y = 0; y < Q.size(); ++y) {
    Level lv{1};
    lv.insert(lv.end(), Q.level[y].begin(), Q.level[y].end());
    C.add_generator(Q.idem[y], lv, Q.name[y]);
  }
  const int off = P.size();
  for (int x = 0; x < P.size(); ++x) {
    C.delta[x] = P.delta[x];
    for (const auto& [y, cs] : f.f[x]) C.delta[x][off + y] = cs;
  }
  for (int y = 0; y < Q.size(); ++y)
    for (const auto& [z, cs] : Q.delta[y]) C.delta[off + y][off + z] = cs;
  return C;
}

// Cancels arrows x0 -> y0 whose coefficient is an idempotent plus nilpotent terms,
// at equal filtration levels. Returns the number of cancellations.
template <class Alg>
int reduce_in_place(DStructure<Alg>& P, std::vector<char>* alive_out = nullptr);

template <class Alg>
DStructure<Alg> compact(const DStructure<Alg>& P, const std::vector<char>& alive) {
  DStructure<Alg> N;
  N.alg = P.alg;
  std::vector<int> map(P.size(), -1);
  for (int x = 0; x < P.size(); ++x)
    if (alive[x]) map[x] = N.add_generator(P.idem[x], P.level[x], P.name[x]);
  for (int x = 0; x < P.size(); ++x) {
    if (!alive[x]) continue;
    for (const auto& [y, cs] : P.delta[x])
      if (alive[y] && !cs.empty()) N.delta[map[x]][map[y]] = cs;
  }
  return N;
}

template <class Alg>
DStructure<Alg> reduce(const DStructure<Alg>& P) {
  DStructure<Alg> W = P;
  std::vector<char> alive;
  reduce_in_place(W, &alive);
  return compact(W, alive);
}

template <class Alg>
int reduce_in_place(DStructure<Alg>& P, std::vector<char>* alive_out) {
  using Elem = typename Alg::Elem;
  const auto& A = P.alg;
  const int n = P.size();
  std::vector<char> alive(n, 1);
  std::vector<std::set<int>> inc(n);
  for (int w = 0; w < n; ++w)
    for (const auto& [y, cs] : P.delta[w]) inc[y].insert(w);
  int cancelled = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x0 = 0; x0 < n; ++x0) {
      if (!alive[x0]) continue;
      for (auto it = P.delta[x0].begin(); it != P.delta[x0].end(); ++it) {
        const int y0 = it->first;
        if (y0 == x0 || !alive[y0] || P.level[x0] != P.level[y0]) continue;
        int nid = 0;
        std::vector<Elem> loops;
        for (Elem c : it->second) {
          if (A.is_idem(c))
            ++nid;
          else
            loops.push_back(c);
        }
        if (nid != 1) continue;
        // (1 + c)^{-1} = sum of powers of c; c is nilpotent.
        std::vector<Elem> inv;  // excludes the unit
        std::vector<Elem> frontier(loops.begin(), loops.end());
        while (!frontier.empty()) {
          std::vector<Elem> nf;
          for (Elem c : frontier) {
            inv.push_back(c);
            for (Elem l : loops) {
              Elem p = A.mul(c, l);
              if (p != Alg::zero) nf.push_back(p);
            }
          }
          frontier.swap(nf);
          if (inv.size() > 100000) throw InvariantError("reduce: loop series does not terminate");
        }
        std::vector<std::pair<int, std::vector<Elem>>> out;
        for (const auto& [z, cs] : P.delta[x0])
          if (z != x0 && z != y0 && alive[z]) out.emplace_back(z, std::vector<Elem>(cs.begin(), cs.end()));
        std::vector<int> srcs(inc[y0].begin(), inc[y0].end());
        for (int w : srcs) {
          if (!alive[w] || w == x0) continue;
          auto f = P.delta[w].find(y0);
          if (f == P.delta[w].end()) continue;
          std::vector<Elem> c1(f->second.begin(), f->second.end());
          std::vector<Elem> pre = c1;
          for (Elem a : c1)
            for (Elem m : inv) {
              Elem p = A.mul(a, m);
              if (p != Alg::zero) pre.push_back(p);
            }
          for (const auto& [z, c2] : out) {
            for (Elem a : pre)
              for (Elem b : c2) {
                Elem p = A.mul(a, b);
                if (p != Alg::zero) P.toggle_arrow(w, p, z);
              }
            inc[z].insert(w);
          }
        }
        alive[x0] = alive[y0] = 0;
        ++cancelled;
        changed = true;
        break;
      }
    }
  }
  if (alive_out) *alive_out = alive;
  return cancelled;
}

// ---------------------------------------------------------------- type DA

// Output (type D) side over `out`, input (type A) side over `in`.
struct DABimodule {
  const StrandsAlgebra* out = nullptr;
  const StrandsAlgebra* in = nullptr;
  std::vector<Idem> out_idem;
  std::vector<Idem> in_idem;
  std::vector<Level> level;
  std::vector<std::string> name;
  // ops[x][T][y] = output coefficients
  std::vector<std::map<Seq, std::map<int, std::set<int>>>> ops;

  int size() const { return static_cast<int>(out_idem.size()); }
  int add_generator(Idem o, Idem i, Level lv = {}, std::string nm = {});
  void toggle(int x, const Seq& T, int c, int y);
  std::size_t num_terms() const;
};

struct DAMorphism {
  const DABimodule* source = nullptr;
  const DABimodule* target = nullptr;
  std::vector<std::map<Seq, std::map<int, std::set<int>>>> f;
};

// ---------------------------------------------------------------- type AA

// Two right actions: sigma inputs (paired with the first DD factor) and tau inputs.
struct AABimodule {
  const StrandsAlgebra* sigma = nullptr;
  const StrandsAlgebra* tau = nullptr;
  std::vector<Idem> sid, tid;
  std::vector<std::string> name;
  std::vector<std::map<std::pair<Seq, Seq>, std::set<int>>> ops;

  int size() const { return static_cast<int>(sid.size()); }
  int add_generator(Idem s, Idem t, std::string nm = {});
  void toggle(int x, const Seq& S, const Seq& T, int y);
  std::size_t num_terms() const;
};

// ---------------------------------------------------------------- A-infinity module

struct AInfModule {
  const StrandsAlgebra* alg = nullptr;
  std::vector<Idem> idem;
  std::vector<std::string> name;
  std::vector<std::map<Seq, std::set<int>>> ops;

  int size() const { return static_cast<int>(idem.size()); }
  int add_generator(Idem i, std::string nm = {});
  void toggle(int x, const Seq& T, int y);
  std::size_t num_terms() const;
};

// ---------------------------------------------------------------- complexes

struct ChainComplex {
  std::vector<Level> level;
  std::vector<std::string> name;
  std::vector<std::vector<int>> d;  // sorted targets

  int size() const { return static_cast<int>(d.size()); }
  std::size_t num_terms() const;
};

CheckReport structure_check(const DABimodule& M);
CheckReport structure_check(const AABimodule& M, int max_len = 6);
CheckReport structure_check(const AInfModule& M, int max_len = 6);
CheckReport structure_check(const ChainComplex& C);
CheckReport filtration_check(const ChainComplex& C);

DABimodule box(const AABimodule& M, const DD& P);
DAMorphism box_morphism(const AABimodule& M, const DD& P, const DD& Q, const DMorphism<Outer>& f,
                        const DABimodule& MP, const DABimodule& MQ);
DABimodule mapping_cone(const DAMorphism& f);
DS box(const DABimodule& M, const DS& P);
DABimodule box(const DABimodule& M, const DABimodule& N);
// Pairs the sigma side of M with P; the result is an A-infinity module over tau.
AInfModule box_sigma(const AABimodule& M, const DS& P);
ChainComplex box(const AInfModule& M, const DS& P);

DABimodule reduce(const DABimodule& M);
AABimodule reduce(const AABimodule& M);
AInfModule reduce(const AInfModule& M);
ChainComplex reduce(const ChainComplex& C, bool filtered);

// CFAA(Id) as Mor(P, A(Z)) for the identity DD structure P. When `keep_sid` is
// nonempty, only generators whose sigma idempotent passes the filter are built.
AABimodule mor_dd_to_alg(const DD& P, const std::vector<char>& keep_sid = {});

bool is_identity_like(const DABimodule& M);

std::string to_json(const DS& P);
std::string to_json(const DD& P);
std::string to_json(const DABimodule& M);
std::string to_json(const AABimodule& M);
std::string to_json(const AInfModule& M);
std::string to_json(const ChainComplex& C);

}  // namespace bfss
