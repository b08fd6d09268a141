#include "bfss/homalg.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "json.hpp"

namespace bfss {

namespace {

template <class S, class V>
void flip(S& s, const V& v) {
  if (!s.erase(v)) s.insert(v);
}

Seq cat(const Seq& a, const Seq& b) {
  Seq r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::set<Seq> prefixes(const std::vector<Seq>& keys) {
  std::set<Seq> out;
  for (const auto& k : keys)
    for (size_t i = 0; i <= k.size(); ++i) out.insert(Seq(k.begin(), k.begin() + i));
  return out;
}

std::string seq_str(const StrandsAlgebra& A, const Seq& s) {
  std::string r = "(";
  for (size_t i = 0; i < s.size(); ++i) r += (i ? ", " : "") + A.str(s[i]);
  return r + ")";
}

// Inverse tables used to enumerate every input sequence on which an A-infinity
// relation can be nonzero.
struct Inverses {
  std::unordered_map<int, std::vector<int>> dinv;                     // y -> {x : y in dx}
  std::unordered_map<int, std::vector<std::pair<int, int>>> factors;  // p -> {(a,b) : ab = p}
};

Inverses inverses(const StrandsAlgebra& A, const std::set<int>& weights) {
  Inverses inv;
  for (int x = 0; x < A.size(); ++x) {
    if (!weights.count(A.weight(x))) continue;
    for (int y : A.d(x)) inv.dinv[y].push_back(x);
    if (A.is_idempotent(x)) continue;
    for (int y : A.with_left(A.right(x))) {
      if (A.is_idempotent(y)) continue;
      int p = A.mul(x, y);
      if (p >= 0) inv.factors[p].emplace_back(x, y);
    }
  }
  return inv;
}

// All sequences obtained from `key` by replacing one entry with a d-preimage or by
// splitting one entry into a factorization.
void expand_key(const Seq& key, const Inverses& inv, std::set<Seq>& out) {
  for (size_t i = 0; i < key.size(); ++i) {
    if (auto it = inv.dinv.find(key[i]); it != inv.dinv.end())
      for (int x : it->second) {
        Seq s = key;
        s[i] = x;
        out.insert(s);
      }
    if (auto it = inv.factors.find(key[i]); it != inv.factors.end())
      for (auto [a, b] : it->second) {
        Seq s(key.begin(), key.begin() + i);
        s.push_back(a);
        s.push_back(b);
        s.insert(s.end(), key.begin() + i + 1, key.end());
        out.insert(s);
      }
  }
}

}  // namespace

// ---------------------------------------------------------------- containers

int DABimodule::add_generator(Idem o, Idem i, Level lv, std::string nm) {
  out_idem.push_back(o);
  in_idem.push_back(i);
  level.push_back(std::move(lv));
  name.push_back(nm.empty() ? "x" + std::to_string(out_idem.size() - 1) : std::move(nm));
  ops.emplace_back();
  return size() - 1;
}

void DABimodule::toggle(int x, const Seq& T, int c, int y) {
  auto& byT = ops[x];
  auto& byY = byT[T];
  auto& s = byY[y];
  flip(s, c);
  if (s.empty()) {
    byY.erase(y);
    if (byY.empty()) byT.erase(T);
  }
}

std::size_t DABimodule::num_terms() const {
  std::size_t n = 0;
  for (const auto& m : ops)
    for (const auto& [T, ys] : m)
      for (const auto& [y, cs] : ys) n += cs.size();
  return n;
}

int AABimodule::add_generator(Idem s, Idem t, std::string nm) {
  sid.push_back(s);
  tid.push_back(t);
  name.push_back(nm.empty() ? "w" + std::to_string(sid.size() - 1) : std::move(nm));
  ops.emplace_back();
  return size() - 1;
}

void AABimodule::toggle(int x, const Seq& S, const Seq& T, int y) {
  auto key = std::make_pair(S, T);
  auto& s = ops[x][key];
  flip(s, y);
  if (s.empty()) ops[x].erase(key);
}

std::size_t AABimodule::num_terms() const {
  std::size_t n = 0;
  for (const auto& m : ops)
    for (const auto& [k, ys] : m) n += ys.size();
  return n;
}

int AInfModule::add_generator(Idem i, std::string nm) {
  idem.push_back(i);
  name.push_back(nm.empty() ? "m" + std::to_string(idem.size() - 1) : std::move(nm));
  ops.emplace_back();
  return size() - 1;
}

void AInfModule::toggle(int x, const Seq& T, int y) {
  auto& s = ops[x][T];
  flip(s, y);
  if (s.empty()) ops[x].erase(T);
}

std::size_t AInfModule::num_terms() const {
  std::size_t n = 0;
  for (const auto& m : ops)
    for (const auto& [k, ys] : m) n += ys.size();
  return n;
}

std::size_t ChainComplex::num_terms() const {
  std::size_t n = 0;
  for (const auto& v : d) n += v.size();
  return n;
}

// ---------------------------------------------------------------- checks

CheckReport structure_check(const DABimodule& M) {
  CheckReport rep;
  const auto& B = *M.out;
  const auto& A = *M.in;
  std::set<int> weights;
  for (int x = 0; x < M.size(); ++x) weights.insert(popcount(M.in_idem[x]));
  Inverses inv = inverses(A, weights);

  for (int x = 0; x < M.size(); ++x) {
    for (const auto& [T, ys] : M.ops[x]) {
      Idem cur = M.in_idem[x];
      for (int a : T) {
        if (A.left(a) != cur || A.is_idempotent(a)) rep.fail("input idempotents do not chain at " + M.name[x]);
        cur = A.right(a);
      }
      for (const auto& [y, cs] : ys) {
        if (cur != M.in_idem[y]) rep.fail("input idempotent mismatch " + M.name[x] + " -> " + M.name[y]);
        for (int c : cs)
          if (B.left(c) != M.out_idem[x] || B.right(c) != M.out_idem[y])
            rep.fail("output idempotent mismatch " + M.name[x] + " -> " + M.name[y]);
      }
    }
    std::set<Seq> cand;
    for (const auto& [T1, ys] : M.ops[x]) {
      cand.insert(T1);
      expand_key(T1, inv, cand);
      for (const auto& [y, cs] : ys)
        for (const auto& [T2, zs] : M.ops[y]) cand.insert(cat(T1, T2));
    }
    for (const Seq& T : cand) {
      std::map<int, std::set<int>> acc;
      auto get = [&](int g, const Seq& S) -> const std::map<int, std::set<int>>* {
        auto it = M.ops[g].find(S);
        return it == M.ops[g].end() ? nullptr : &it->second;
      };
      if (auto* ys = get(x, T))
        for (const auto& [y, cs] : *ys)
          for (int c : cs)
            for (int dc : B.d(c)) flip(acc[y], dc);
      for (size_t i = 0; i <= T.size(); ++i) {
        auto* ys = get(x, Seq(T.begin(), T.begin() + i));
        if (!ys) continue;
        Seq rest(T.begin() + i, T.end());
        for (const auto& [y, cs] : *ys) {
          auto* zs = get(y, rest);
          if (!zs) continue;
          for (int c1 : cs)
            for (const auto& [z, cs2] : *zs)
              for (int c2 : cs2) {
                int p = B.mul(c1, c2);
                if (p >= 0) flip(acc[z], p);
              }
        }
      }
      for (size_t i = 0; i < T.size(); ++i) {
        for (int e : A.d(T[i])) {
          Seq S = T;
          S[i] = e;
          if (auto* ys = get(x, S))
            for (const auto& [y, cs] : *ys)
              for (int c : cs) flip(acc[y], c);
        }
        if (i + 1 < T.size()) {
          int p = A.mul(T[i], T[i + 1]);
          if (p >= 0 && !A.is_idempotent(p)) {
            Seq S(T.begin(), T.begin() + i);
            S.push_back(p);
            S.insert(S.end(), T.begin() + i + 2, T.end());
            if (auto* ys = get(x, S))
              for (const auto& [y, cs] : *ys)
                for (int c : cs) flip(acc[y], c);
          }
        }
      }
      for (const auto& [y, cs] : acc)
        for (int c : cs)
          rep.fail("DA relation at " + M.name[x] + " inputs " + seq_str(A, T) + " -> " + M.name[y] + " by " +
                   B.str(c));
    }
  }
  return rep;
}

namespace {

using Key2 = std::pair<Seq, Seq>;

const std::set<int>* aa_get(const AABimodule& M, int g, const Seq& S, const Seq& T) {
  auto it = M.ops[g].find(Key2(S, T));
  return it == M.ops[g].end() ? nullptr : &it->second;
}

}  // namespace

CheckReport structure_check(const AABimodule& M, int max_len) {
  CheckReport rep;
  const auto& As = *M.sigma;
  const auto& At = *M.tau;
  std::set<int> ws, wt;
  for (int x = 0; x < M.size(); ++x) {
    ws.insert(popcount(M.sid[x]));
    wt.insert(popcount(M.tid[x]));
  }
  Inverses is = inverses(As, ws), it = inverses(At, wt);

  for (int x = 0; x < M.size(); ++x) {
    std::set<Key2> cand;
    for (const auto& [k1, ys] : M.ops[x]) {
      cand.insert(k1);
      std::set<Seq> e;
      expand_key(k1.first, is, e);
      for (auto& s : e) cand.insert({s, k1.second});
      e.clear();
      expand_key(k1.second, it, e);
      for (auto& t : e) cand.insert({k1.first, t});
      for (int y : ys)
        for (const auto& [k2, zs] : M.ops[y]) cand.insert({cat(k1.first, k2.first), cat(k1.second, k2.second)});
    }
    for (const auto& [S, T] : cand) {
      if (static_cast<int>(S.size() + T.size()) > max_len) continue;
      std::set<int> acc;
      for (size_t i = 0; i <= S.size(); ++i)
        for (size_t j = 0; j <= T.size(); ++j) {
          auto* mid = aa_get(M, x, Seq(S.begin(), S.begin() + i), Seq(T.begin(), T.begin() + j));
          if (!mid) continue;
          Seq S2(S.begin() + i, S.end()), T2(T.begin() + j, T.end());
          for (int y : *mid)
            if (auto* zs = aa_get(M, y, S2, T2))
              for (int z : *zs) flip(acc, z);
        }
      auto inner = [&](const Seq& seq, const StrandsAlgebra& A, bool sigma) {
        for (size_t i = 0; i < seq.size(); ++i) {
          for (int e : A.d(seq[i])) {
            Seq s = seq;
            s[i] = e;
            if (auto* zs = sigma ? aa_get(M, x, s, T) : aa_get(M, x, S, s))
              for (int z : *zs) flip(acc, z);
          }
          if (i + 1 < seq.size()) {
            int p = A.mul(seq[i], seq[i + 1]);
            if (p >= 0 && !A.is_idempotent(p)) {
              Seq s(seq.begin(), seq.begin() + i);
              s.push_back(p);
              s.insert(s.end(), seq.begin() + i + 2, seq.end());
              if (auto* zs = sigma ? aa_get(M, x, s, T) : aa_get(M, x, S, s))
                for (int z : *zs) flip(acc, z);
            }
          }
        }
      };
      inner(S, As, true);
      inner(T, At, false);
      for (int z : acc)
        rep.fail("AA relation at " + M.name[x] + " sigma " + seq_str(As, S) + " tau " + seq_str(At, T) + " -> " +
                 M.name[z]);
    }
  }
  return rep;
}

CheckReport structure_check(const AInfModule& M, int max_len) {
  CheckReport rep;
  const auto& A = *M.alg;
  std::set<int> ws;
  for (int x = 0; x < M.size(); ++x) ws.insert(popcount(M.idem[x]));
  Inverses inv = inverses(A, ws);
  auto get = [&](int g, const Seq& T) -> const std::set<int>* {
    auto it = M.ops[g].find(T);
    return it == M.ops[g].end() ? nullptr : &it->second;
  };
  for (int x = 0; x < M.size(); ++x) {
    std::set<Seq> cand;
    for (const auto& [k1, ys] : M.ops[x]) {
      cand.insert(k1);
      expand_key(k1, inv, cand);
      for (int y : ys)
        for (const auto& [k2, zs] : M.ops[y]) cand.insert(cat(k1, k2));
    }
    for (const Seq& T : cand) {
      if (static_cast<int>(T.size()) > max_len) continue;
      std::set<int> acc;
      for (size_t i = 0; i <= T.size(); ++i) {
        auto* mid = get(x, Seq(T.begin(), T.begin() + i));
        if (!mid) continue;
        Seq rest(T.begin() + i, T.end());
        for (int y : *mid)
          if (auto* zs = get(y, rest))
            for (int z : *zs) flip(acc, z);
      }
      for (size_t i = 0; i < T.size(); ++i) {
        for (int e : A.d(T[i])) {
          Seq s = T;
          s[i] = e;
          if (auto* zs = get(x, s))
            for (int z : *zs) flip(acc, z);
        }
        if (i + 1 < T.size()) {
          int p = A.mul(T[i], T[i + 1]);
          if (p >= 0 && !A.is_idempotent(p)) {
            Seq s(T.begin(), T.begin() + i);
            s.push_back(p);
            s.insert(s.end(), T.begin() + i + 2, T.end());
            if (auto* zs = get(x, s))
              for (int z : *zs) flip(acc, z);
          }
        }
      }
      for (int z : acc) rep.fail("A-infinity relation at " + M.name[x] + " inputs " + seq_str(A, T) + " -> " + M.name[z]);
    }
  }
  return rep;
}

CheckReport structure_check(const ChainComplex& C) {
  CheckReport rep;
  for (int x = 0; x < C.size(); ++x) {
    std::set<int> acc;
    for (int y : C.d[x])
      for (int z : C.d[y]) flip(acc, z);
    for (int z : acc) rep.fail("d^2 != 0 from " + std::to_string(x) + " to " + std::to_string(z));
  }
  return rep;
}

CheckReport filtration_check(const ChainComplex& C) {
  CheckReport rep;
  for (int x = 0; x < C.size(); ++x)
    for (int y : C.d[x]) {
      bool ok = C.level[x].size() == C.level[y].size();
      for (size_t i = 0; ok && i < C.level[x].size(); ++i) ok = C.level[x][i] <= C.level[y][i];
      if (!ok) rep.fail("arrow lowers filtration: " + std::to_string(x) + " -> " + std::to_string(y));
    }
  return rep;
}

// ---------------------------------------------------------------- box products

namespace {

// For each generator of an AA bimodule: sigma sequence -> list of (tau sequence, targets).
struct SigmaIndex {
  std::map<Seq, std::vector<std::pair<Seq, const std::set<int>*>>> by_s;
  std::set<Seq> pref;
};

SigmaIndex sigma_index(const AABimodule& M, int W) {
  SigmaIndex ix;
  std::vector<Seq> keys;
  for (const auto& [k, ys] : M.ops[W]) {
    ix.by_s[k.first].emplace_back(k.second, &ys);
    keys.push_back(k.first);
  }
  ix.pref = prefixes(keys);
  return ix;
}

std::vector<std::vector<int>> pair_index(int na, int nb, const std::function<bool(int, int)>& ok,
                                         std::vector<std::pair<int, int>>& gens) {
  std::vector<std::vector<int>> id(na, std::vector<int>(nb, -1));
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      if (ok(a, b)) {
        id[a][b] = static_cast<int>(gens.size());
        gens.emplace_back(a, b);
      }
  return id;
}

}  // namespace

DABimodule box(const AABimodule& M, const DD& P) {
  const StrandsAlgebra& R = *P.alg.A;
  DABimodule out;
  out.out = &R;
  out.in = M.tau;
  std::vector<std::pair<int, int>> gens;
  auto id = pair_index(M.size(), P.size(),
                       [&](int w, int q) { return M.sid[w] == Outer::id_first(P.idem[q]); }, gens);
  for (auto [w, q] : gens)
    out.add_generator(Outer::id_second(P.idem[q]), M.tid[w], P.level[q], M.name[w] + "|" + P.name[q]);

  for (int W = 0; W < M.size(); ++W) {
    SigmaIndex ix = sigma_index(M, W);
    for (int Q = 0; Q < P.size(); ++Q) {
      const int g = id[W][Q];
      if (g < 0) continue;
      const int unitQ = R.idempotent(Outer::id_second(P.idem[Q]));
      struct State {
        Seq S;
        int rho;
        int q;
      };
      std::vector<State> stack{{{}, -1, Q}};
      while (!stack.empty()) {
        State st = std::move(stack.back());
        stack.pop_back();
        if (auto it = ix.by_s.find(st.S); it != ix.by_s.end())
          for (const auto& [T, ys] : it->second)
            for (int W2 : *ys) {
              int g2 = id[W2][st.q];
              if (g2 >= 0) out.toggle(g, T, st.rho < 0 ? unitQ : st.rho, g2);
            }
        for (const auto& [q2, cs] : P.delta[st.q])
          for (auto c : cs) {
            int cs_ = Outer::first(c), cr = Outer::second(c);
            if (M.sigma->is_idempotent(cs_)) {
              if (st.S.empty() && st.rho < 0 && id[W][q2] >= 0) out.toggle(g, {}, cr, id[W][q2]);
              continue;
            }
            Seq S2 = st.S;
            S2.push_back(cs_);
            if (!ix.pref.count(S2)) continue;
            int r2 = st.rho < 0 ? cr : R.mul(st.rho, cr);
            if (r2 < 0) continue;
            stack.push_back({std::move(S2), r2, q2});
          }
      }
    }
  }
  return out;
}

DAMorphism box_morphism(const AABimodule& M, const DD& P, const DD& Q, const DMorphism<Outer>& f,
                        const DABimodule& MP, const DABimodule& MQ) {
  const StrandsAlgebra& R = *P.alg.A;
  DAMorphism out{&MP, &MQ, std::vector<std::map<Seq, std::map<int, std::set<int>>>>(MP.size())};
  auto index = [&](const DD& D) {
    std::vector<std::vector<int>> id(M.size(), std::vector<int>(D.size(), -1));
    int g = 0;
    for (int w = 0; w < M.size(); ++w)
      for (int q = 0; q < D.size(); ++q)
        if (M.sid[w] == Outer::id_first(D.idem[q])) id[w][q] = g++;
    return id;
  };
  auto idP = index(P), idQ = index(Q);
  auto tog = [&](int x, const Seq& T, int c, int y) {
    auto& s = out.f[x][T][y];
    flip(s, c);
  };
  for (int W = 0; W < M.size(); ++W) {
    SigmaIndex ix = sigma_index(M, W);
    for (int p0 = 0; p0 < P.size(); ++p0) {
      const int g = idP[W][p0];
      if (g < 0) continue;
      struct State {
        Seq S;
        int rho;
        int q;
        bool crossed;
      };
      std::vector<State> stack{{{}, -1, p0, false}};
      while (!stack.empty()) {
        State st = std::move(stack.back());
        stack.pop_back();
        if (st.crossed)
          if (auto it = ix.by_s.find(st.S); it != ix.by_s.end())
            for (const auto& [T, ys] : it->second)
              for (int W2 : *ys)
                if (idQ[W2][st.q] >= 0) tog(g, T, st.rho, idQ[W2][st.q]);
        auto step = [&](int q2, Outer::Elem c, bool cross) {
          int cs_ = Outer::first(c), cr = Outer::second(c);
          if (M.sigma->is_idempotent(cs_)) {
            if (cross && st.S.empty() && st.rho < 0 && idQ[W][q2] >= 0) tog(g, {}, cr, idQ[W][q2]);
            return;
          }
          Seq S2 = st.S;
          S2.push_back(cs_);
          if (!ix.pref.count(S2)) return;
          int r2 = st.rho < 0 ? cr : R.mul(st.rho, cr);
          if (r2 < 0) return;
          stack.push_back({std::move(S2), r2, q2, st.crossed || cross});
        };
        if (!st.crossed) {
          for (const auto& [q2, cs] : P.delta[st.q])
            for (auto c : cs) step(q2, c, false);
          for (const auto& [q2, cs] : f.f[st.q])
            for (auto c : cs) step(q2, c, true);
        } else {
          for (const auto& [q2, cs] : Q.delta[st.q])
            for (auto c : cs) step(q2, c, false);
        }
      }
    }
  }
  for (auto& m : out.f)
    for (auto itT = m.begin(); itT != m.end();) {
      for (auto itY = itT->second.begin(); itY != itT->second.end();)
        itY = itY->second.empty() ? itT->second.erase(itY) : std::next(itY);
      itT = itT->second.empty() ? m.erase(itT) : std::next(itT);
    }
  return out;
}

DABimodule mapping_cone(const DAMorphism& f) {
  const auto& P = *f.source;
  const auto& Q = *f.target;
  DABimodule C;
  C.out = P.out;
  C.in = P.in;
  for (int x = 0; x < P.size(); ++x) {
    Level lv{0};
    lv.insert(lv.end(), P.level[x].begin(), P.level[x].end());
    C.add_generator(P.out_idem[x], P.in_idem[x], lv, P.name[x]);
  }
  for (int y = 0; y < Q.size(); ++y) {
    Level lv{1};
    lv.insert(lv.end(), Q.level[y].begin(), Q.level[y].end());
    C.add_generator(Q.out_idem[y], Q.in_idem[y], lv, Q.name[y]);
  }
  const int off = P.size();
  for (int x = 0; x < P.size(); ++x) {
    C.ops[x] = P.ops[x];
    for (const auto& [T, ys] : f.f[x])
      for (const auto& [y, cs] : ys)
        for (int c : cs) C.toggle(x, T, c, off + y);
  }
  for (int y = 0; y < Q.size(); ++y)
    for (const auto& [T, zs] : Q.ops[y])
      for (const auto& [z, cs] : zs)
        for (int c : cs) C.toggle(off + y, T, c, off + z);
  return C;
}

DS box(const DABimodule& M, const DS& P) {
  const StrandsAlgebra& B = *M.out;
  DS N;
  N.alg = Single{&B};
  std::vector<std::pair<int, int>> gens;
  auto id = pair_index(M.size(), P.size(), [&](int m, int p) { return M.in_idem[m] == P.idem[p]; }, gens);
  for (auto [m, p] : gens) {
    Level lv = M.level[m];
    lv.insert(lv.end(), P.level[p].begin(), P.level[p].end());
    N.add_generator(M.out_idem[m], lv, M.name[m] + "|" + P.name[p]);
  }
  const StrandsAlgebra& A = *P.alg.A;
  for (int m = 0; m < M.size(); ++m) {
    std::vector<Seq> keys;
    for (const auto& [T, ys] : M.ops[m]) keys.push_back(T);
    std::set<Seq> pref = prefixes(keys);
    for (int p = 0; p < P.size(); ++p) {
      const int g = id[m][p];
      if (g < 0) continue;
      std::vector<std::pair<Seq, int>> stack{{{}, p}};
      while (!stack.empty()) {
        auto [T, q] = std::move(stack.back());
        stack.pop_back();
        if (auto it = M.ops[m].find(T); it != M.ops[m].end())
          for (const auto& [y, cs] : it->second)
            if (id[y][q] >= 0)
              for (int c : cs) N.toggle_arrow(g, c, id[y][q]);
        for (const auto& [q2, cs] : P.delta[q])
          for (int c : cs) {
            if (A.is_idempotent(c)) {
              if (T.empty() && id[m][q2] >= 0) N.toggle_arrow(g, B.idempotent(M.out_idem[m]), id[m][q2]);
              continue;
            }
            Seq T2 = T;
            T2.push_back(c);
            if (pref.count(T2)) stack.emplace_back(std::move(T2), q2);
          }
      }
    }
  }
  return N;
}

DABimodule box(const DABimodule& M, const DABimodule& N) {
  // M's inputs are N's outputs.
  const StrandsAlgebra& B = *M.out;
  DABimodule O;
  O.out = M.out;
  O.in = N.in;
  std::vector<std::pair<int, int>> gens;
  auto id = pair_index(M.size(), N.size(), [&](int m, int n) { return M.in_idem[m] == N.out_idem[n]; }, gens);
  for (auto [m, n] : gens) {
    Level lv = M.level[m];
    lv.insert(lv.end(), N.level[n].begin(), N.level[n].end());
    O.add_generator(M.out_idem[m], N.in_idem[n], lv, M.name[m] + "|" + N.name[n]);
  }
  const StrandsAlgebra& C = *N.out;
  for (int m = 0; m < M.size(); ++m) {
    std::vector<Seq> keys;
    for (const auto& [T, ys] : M.ops[m]) keys.push_back(T);
    std::set<Seq> pref = prefixes(keys);
    for (int n0 = 0; n0 < N.size(); ++n0) {
      const int g = id[m][n0];
      if (g < 0) continue;
      struct State {
        Seq Tacc;
        Seq Bseq;
        int n;
      };
      std::vector<State> stack{{{}, {}, n0}};
      while (!stack.empty()) {
        State st = std::move(stack.back());
        stack.pop_back();
        if (auto it = M.ops[m].find(st.Bseq); it != M.ops[m].end())
          for (const auto& [y, cs] : it->second)
            if (id[y][st.n] >= 0)
              for (int c : cs) O.toggle(g, st.Tacc, c, id[y][st.n]);
        for (const auto& [T2, ys] : N.ops[st.n])
          for (const auto& [n2, bs] : ys)
            for (int b : bs) {
              if (C.is_idempotent(b)) {
                if (st.Bseq.empty() && st.Tacc.empty() && id[m][n2] >= 0)
                  O.toggle(g, T2, B.idempotent(M.out_idem[m]), id[m][n2]);
                continue;
              }
              Seq B2 = st.Bseq;
              B2.push_back(b);
              if (!pref.count(B2)) continue;
              stack.push_back({cat(st.Tacc, T2), std::move(B2), n2});
            }
      }
    }
  }
  return O;
}

AInfModule box_sigma(const AABimodule& M, const DS& P) {
  AInfModule out;
  out.alg = M.tau;
  std::vector<std::pair<int, int>> gens;
  auto id = pair_index(M.size(), P.size(), [&](int w, int p) { return M.sid[w] == P.idem[p]; }, gens);
  for (auto [w, p] : gens) out.add_generator(M.tid[w], M.name[w] + "|" + P.name[p]);
  const StrandsAlgebra& A = *P.alg.A;
  for (int W = 0; W < M.size(); ++W) {
    SigmaIndex ix = sigma_index(M, W);
    for (int p = 0; p < P.size(); ++p) {
      const int g = id[W][p];
      if (g < 0) continue;
      std::vector<std::pair<Seq, int>> stack{{{}, p}};
      while (!stack.empty()) {
        auto [S, q] = std::move(stack.back());
        stack.pop_back();
        if (auto it = ix.by_s.find(S); it != ix.by_s.end())
          for (const auto& [T, ys] : it->second)
            for (int W2 : *ys)
              if (id[W2][q] >= 0) out.toggle(g, T, id[W2][q]);
        for (const auto& [q2, cs] : P.delta[q])
          for (int c : cs) {
            if (A.is_idempotent(c)) {
              if (S.empty() && id[W][q2] >= 0) out.toggle(g, {}, id[W][q2]);
              continue;
            }
            Seq S2 = S;
            S2.push_back(c);
            if (ix.pref.count(S2)) stack.emplace_back(std::move(S2), q2);
          }
      }
    }
  }
  return out;
}

ChainComplex box(const AInfModule& M, const DS& P) {
  ChainComplex C;
  std::vector<std::pair<int, int>> gens;
  auto id = pair_index(M.size(), P.size(), [&](int a, int p) { return M.idem[a] == P.idem[p]; }, gens);
  for (auto [a, p] : gens) {
    C.level.push_back(P.level[p]);
    C.name.push_back(M.name[a] + "|" + P.name[p]);
  }
  std::vector<std::set<int>> d(gens.size());
  const StrandsAlgebra& A = *P.alg.A;
  for (int a = 0; a < M.size(); ++a) {
    std::vector<Seq> keys;
    for (const auto& [T, ys] : M.ops[a]) keys.push_back(T);
    std::set<Seq> pref = prefixes(keys);
    for (int p = 0; p < P.size(); ++p) {
      const int g = id[a][p];
      if (g < 0) continue;
      std::vector<std::pair<Seq, int>> stack{{{}, p}};
      while (!stack.empty()) {
        auto [T, q] = std::move(stack.back());
        stack.pop_back();
        if (auto it = M.ops[a].find(T); it != M.ops[a].end())
          for (int y : it->second)
            if (id[y][q] >= 0) flip(d[g], id[y][q]);
        for (const auto& [q2, cs] : P.delta[q])
          for (int c : cs) {
            if (A.is_idempotent(c)) {
              if (T.empty() && id[a][q2] >= 0) flip(d[g], id[a][q2]);
              continue;
            }
            Seq T2 = T;
            T2.push_back(c);
            if (pref.count(T2)) stack.emplace_back(std::move(T2), q2);
          }
      }
    }
  }
  for (auto& s : d) C.d.emplace_back(s.begin(), s.end());
  return C;
}

// ---------------------------------------------------------------- reductions

DABimodule reduce(const DABimodule& R) {
  const StrandsAlgebra& B = *R.out;
  const int n = R.size();
  auto ops = R.ops;
  std::vector<char> alive(n, 1);
  std::vector<std::set<std::pair<int, Seq>>> inc(n);
  for (int w = 0; w < n; ++w)
    for (const auto& [T, ys] : ops[w])
      for (const auto& [y, cs] : ys) inc[y].insert({w, T});

  auto tog = [&](int x, const Seq& T, int c, int y) {
    auto& s = ops[x][T][y];
    flip(s, c);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int x0 = 0; x0 < n; ++x0) {
      if (!alive[x0]) continue;
      auto e = ops[x0].find(Seq{});
      if (e == ops[x0].end()) continue;
      std::vector<int> cands;
      for (const auto& [y, cs] : e->second)
        if (y != x0 && alive[y] && cs.size() == 1 && B.is_idempotent(*cs.begin()) && R.level[x0] == R.level[y])
          cands.push_back(y);
      for (int y0 : cands) {
        std::vector<std::pair<Seq, int>> loops;
        bool blocked = false;
        for (const auto& [T, ys] : ops[x0]) {
          if (T.empty()) continue;
          auto f = ys.find(y0);
          if (f == ys.end()) continue;
          for (int c : f->second) {
            if (B.is_idempotent(c)) blocked = true;
            loops.emplace_back(T, c);
          }
        }
        if (blocked) continue;
        // Zig-zag chains through repeated x0 -> y0 loops; c = -1 stands for the unit.
        std::vector<std::pair<Seq, int>> chains{{{}, -1}}, frontier{{{}, -1}};
        while (!frontier.empty()) {
          std::vector<std::pair<Seq, int>> nf;
          for (const auto& [T, c] : frontier)
            for (const auto& [Tl, cl] : loops) {
              int p = c < 0 ? cl : B.mul(c, cl);
              if (p >= 0) nf.emplace_back(cat(T, Tl), p);
            }
          chains.insert(chains.end(), nf.begin(), nf.end());
          frontier.swap(nf);
          if (chains.size() > 100000) throw InvariantError("DA reduce: loop chain does not terminate");
        }
        std::vector<std::tuple<Seq, int, std::vector<int>>> outs;
        for (const auto& [T, ys] : ops[x0])
          for (const auto& [z, cs] : ys)
            if (z != x0 && z != y0 && alive[z] && !cs.empty()) outs.emplace_back(T, z, std::vector<int>(cs.begin(), cs.end()));
        std::vector<std::pair<int, Seq>> srcs(inc[y0].begin(), inc[y0].end());
        for (const auto& [w, T1] : srcs) {
          if (!alive[w] || w == x0) continue;
          auto fT = ops[w].find(T1);
          if (fT == ops[w].end()) continue;
          auto fy = fT->second.find(y0);
          if (fy == fT->second.end() || fy->second.empty()) continue;
          std::vector<int> c1(fy->second.begin(), fy->second.end());
          for (const auto& [Tm, cm] : chains) {
            std::vector<int> pre;
            for (int a : c1) {
              int a2 = cm < 0 ? a : B.mul(a, cm);
              if (a2 >= 0) pre.push_back(a2);
            }
            if (pre.empty()) continue;
            Seq T1m = cat(T1, Tm);
            for (const auto& [T2, z, c2] : outs) {
              Seq key = cat(T1m, T2);
              for (int a : pre)
                for (int b : c2) {
                  int p = B.mul(a, b);
                  if (p >= 0) tog(w, key, p, z);
                }
              inc[z].insert({w, key});
            }
          }
        }
        alive[x0] = alive[y0] = 0;
        changed = true;
        break;
      }
    }
  }
  DABimodule N;
  N.out = R.out;
  N.in = R.in;
  std::vector<int> map(n, -1);
  for (int x = 0; x < n; ++x)
    if (alive[x]) map[x] = N.add_generator(R.out_idem[x], R.in_idem[x], R.level[x], R.name[x]);
  for (int x = 0; x < n; ++x) {
    if (!alive[x]) continue;
    for (const auto& [T, ys] : ops[x])
      for (const auto& [y, cs] : ys)
        if (alive[y])
          for (int c : cs) N.toggle(map[x], T, c, map[y]);
  }
  return N;
}

AABimodule reduce(const AABimodule& M) {
  const int n = M.size();
  auto ops = M.ops;
  std::vector<char> alive(n, 1);
  std::vector<std::set<std::pair<int, Key2>>> inc(n);
  for (int w = 0; w < n; ++w)
    for (const auto& [k, ys] : ops[w])
      for (int y : ys) inc[y].insert({w, k});
  const Key2 empty{};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x0 = 0; x0 < n; ++x0) {
      if (!alive[x0]) continue;
      auto e = ops[x0].find(empty);
      if (e == ops[x0].end()) continue;
      std::vector<int> cands(e->second.begin(), e->second.end());
      for (int y0 : cands) {
        if (y0 == x0 || !alive[y0]) continue;
        bool blocked = false;
        for (const auto& [k, ys] : ops[x0])
          if (k != empty && ys.count(y0)) blocked = true;
        if (blocked) continue;
        auto X0 = ops[x0];
        std::vector<std::pair<int, Key2>> srcs(inc[y0].begin(), inc[y0].end());
        for (const auto& [w, k1] : srcs) {
          if (!alive[w] || w == x0) continue;
          auto f = ops[w].find(k1);
          if (f == ops[w].end() || !f->second.count(y0)) continue;
          for (const auto& [k2, zs] : X0) {
            Key2 key{cat(k1.first, k2.first), cat(k1.second, k2.second)};
            auto& tgt = ops[w][key];
            for (int z : zs) {
              if (z == x0 || z == y0 || !alive[z]) continue;
              flip(tgt, z);
              inc[z].insert({w, key});
            }
          }
        }
        alive[x0] = alive[y0] = 0;
        changed = true;
        break;
      }
    }
  }
  AABimodule N;
  N.sigma = M.sigma;
  N.tau = M.tau;
  std::vector<int> map(n, -1);
  for (int x = 0; x < n; ++x)
    if (alive[x]) map[x] = N.add_generator(M.sid[x], M.tid[x], M.name[x]);
  for (int x = 0; x < n; ++x) {
    if (!alive[x]) continue;
    for (const auto& [k, ys] : ops[x])
      for (int y : ys)
        if (alive[y]) N.toggle(map[x], k.first, k.second, map[y]);
  }
  return N;
}

AInfModule reduce(const AInfModule& M) {
  const int n = M.size();
  auto ops = M.ops;
  std::vector<char> alive(n, 1);
  std::vector<std::set<std::pair<int, Seq>>> inc(n);
  for (int w = 0; w < n; ++w)
    for (const auto& [k, ys] : ops[w])
      for (int y : ys) inc[y].insert({w, k});
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x0 = 0; x0 < n; ++x0) {
      if (!alive[x0]) continue;
      auto e = ops[x0].find(Seq{});
      if (e == ops[x0].end()) continue;
      std::vector<int> cands(e->second.begin(), e->second.end());
      for (int y0 : cands) {
        if (y0 == x0 || !alive[y0]) continue;
        bool blocked = false;
        for (const auto& [k, ys] : ops[x0])
          if (!k.empty() && ys.count(y0)) blocked = true;
        if (blocked) continue;
        auto X0 = ops[x0];
        std::vector<std::pair<int, Seq>> srcs(inc[y0].begin(), inc[y0].end());
        for (const auto& [w, k1] : srcs) {
          if (!alive[w] || w == x0) continue;
          auto f = ops[w].find(k1);
          if (f == ops[w].end() || !f->second.count(y0)) continue;
          for (const auto& [k2, zs] : X0) {
            Seq key = cat(k1, k2);
            auto& tgt = ops[w][key];
            for (int z : zs) {
              if (z == x0 || z == y0 || !alive[z]) continue;
              flip(tgt, z);
              inc[z].insert({w, key});
            }
          }
        }
        alive[x0] = alive[y0] = 0;
        changed = true;
        break;
      }
    }
  }
  AInfModule N;
  N.alg = M.alg;
  std::vector<int> map(n, -1);
  for (int x = 0; x < n; ++x)
    if (alive[x]) map[x] = N.add_generator(M.idem[x], M.name[x]);
  for (int x = 0; x < n; ++x) {
    if (!alive[x]) continue;
    for (const auto& [k, ys] : ops[x])
      for (int y : ys)
        if (alive[y]) N.toggle(map[x], k, map[y]);
  }
  return N;
}

ChainComplex reduce(const ChainComplex& C, bool filtered) {
  const int n = C.size();
  std::vector<std::set<int>> d(n);
  std::vector<std::set<int>> inc(n);
  for (int x = 0; x < n; ++x)
    for (int y : C.d[x]) {
      d[x].insert(y);
      inc[y].insert(x);
    }
  std::vector<char> alive(n, 1);
  for (int x0 = 0; x0 < n; ++x0) {
    if (!alive[x0]) continue;
    int y0 = -1;
    for (int y : d[x0])
      if (y != x0 && alive[y] && (!filtered || C.level[y] == C.level[x0])) {
        y0 = y;
        break;
      }
    if (y0 < 0) continue;
    std::vector<int> X0;
    for (int z : d[x0])
      if (z != y0 && z != x0 && alive[z]) X0.push_back(z);
    std::vector<int> srcs(inc[y0].begin(), inc[y0].end());
    for (int w : srcs) {
      if (!alive[w] || w == x0 || !d[w].count(y0)) continue;
      for (int z : X0) {
        if (d[w].count(z)) {
          d[w].erase(z);
          inc[z].erase(w);
        } else {
          d[w].insert(z);
          inc[z].insert(w);
        }
      }
    }
    alive[x0] = alive[y0] = 0;
    for (int z : d[x0]) inc[z].erase(x0);
    for (int z : d[y0]) inc[z].erase(y0);
  }
  ChainComplex N;
  std::vector<int> map(n, -1);
  for (int x = 0; x < n; ++x)
    if (alive[x]) {
      map[x] = N.size();
      N.level.push_back(C.level[x]);
      N.name.push_back(C.name.empty() ? std::to_string(x) : C.name[x]);
      N.d.emplace_back();
    }
  for (int x = 0; x < n; ++x) {
    if (!alive[x]) continue;
    for (int y : d[x])
      if (alive[y]) N.d[map[x]].push_back(map[y]);
    std::sort(N.d[map[x]].begin(), N.d[map[x]].end());
  }
  return N;
}

// ---------------------------------------------------------------- Mor dualization

AABimodule mor_dd_to_alg(const DD& P, const std::vector<char>& keep_sid) {
  const StrandsAlgebra& A = *P.alg.A;
  if (P.alg.reversed) throw ValidationError("mor_dd_to_alg expects the plain outer product");
  AABimodule M;
  M.sigma = &A;
  M.tau = &A;
  const int nI = P.size();
  if (nI == 0) return M;
  const int wt = popcount(Outer::id_first(P.idem[0]));
  auto keep = [&](Idem s) { return keep_sid.empty() || keep_sid[s]; };

  std::unordered_map<std::uint64_t, int> index;
  auto key = [&](int b, int I, int a) {
    return (std::uint64_t(b) * std::uint64_t(nI) + std::uint64_t(I)) * std::uint64_t(A.size()) + std::uint64_t(a);
  };
  struct G {
    int b, I, a;
  };
  std::vector<G> gens;
  for (int I = 0; I < nI; ++I) {
    if (P.level[I] != P.level[0]) throw ValidationError("mor_dd_to_alg expects an unfiltered DD structure");
    const Idem i = Outer::id_first(P.idem[I]), ip = Outer::id_second(P.idem[I]);
    for (int b : A.with_right(ip))
      for (int a : A.with_left(i)) {
        if (!keep(A.right(a))) continue;
        index.emplace(key(b, I, a), static_cast<int>(gens.size()));
        gens.push_back({b, I, a});
        M.add_generator(A.right(a), A.left(b), A.str(b) + "|" + P.name[I] + "|" + A.str(a));
      }
  }
  auto find = [&](int b, int I, int a) {
    auto it = index.find(key(b, I, a));
    return it == index.end() ? -1 : it->second;
  };

  // post[(c, p)]: z with z c = p;  pre[p]: (t, z) with t z = p, t non-idempotent.
  std::unordered_map<std::uint64_t, std::vector<int>> post;
  std::unordered_map<int, std::vector<std::pair<int, int>>> pre;
  std::unordered_map<int, std::vector<int>> dinv;
  const std::uint64_t N = A.size();
  for (int z : A.basis(wt)) {
    for (int y : A.d(z)) dinv[y].push_back(z);
    for (int c : A.with_left(A.right(z))) {
      int p = A.mul(z, c);
      if (p < 0) continue;
      post[std::uint64_t(c) * N + std::uint64_t(p)].push_back(z);
      if (!A.is_idempotent(z)) pre[p].emplace_back(z, c);
    }
  }
  std::vector<std::vector<std::pair<int, Outer::Elem>>> incoming(nI);
  for (int J = 0; J < nI; ++J)
    for (const auto& [I, cs] : P.delta[J])
      for (auto c : cs) incoming[I].emplace_back(J, c);

  for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
    const auto [b, I, a] = gens[g];
    auto m1 = [&](int t) {
      if (t >= 0) M.toggle(g, {}, {}, t);
    };
    for (int x : A.d(a)) m1(find(b, I, x));
    if (auto it = dinv.find(b); it != dinv.end())
      for (int z : it->second) m1(find(z, I, a));
    for (const auto& [J, c] : incoming[I]) {
      int x = A.mul(Outer::first(c), a);
      if (x < 0) continue;
      auto it = post.find(std::uint64_t(Outer::second(c)) * N + std::uint64_t(b));
      if (it == post.end()) continue;
      for (int z : it->second) m1(find(z, J, x));
    }
    for (int s : A.with_left(A.right(a))) {
      if (A.is_idempotent(s)) continue;
      int x = A.mul(a, s);
      if (x < 0) continue;
      int t = find(b, I, x);
      if (t >= 0) M.toggle(g, {s}, {}, t);
    }
    if (auto it = pre.find(b); it != pre.end())
      for (auto [t, z] : it->second) {
        int y = find(z, I, a);
        if (y >= 0) M.toggle(g, {}, {t}, y);
      }
  }
  return M;
}

bool is_identity_like(const DABimodule& M) {
  const StrandsAlgebra& A = *M.in;
  std::map<Idem, int> by_idem;
  for (int x = 0; x < M.size(); ++x) {
    if (M.out_idem[x] != M.in_idem[x] || by_idem.count(M.in_idem[x])) return false;
    by_idem[M.in_idem[x]] = x;
  }
  if (M.size() == 0) return false;
  const int wt = popcount(M.in_idem[0]);
  if (by_idem.size() != A.idempotents(wt).size()) return false;
  for (int x = 0; x < M.size(); ++x) {
    std::size_t expected = 0;
    for (int a : A.with_left(M.in_idem[x])) {
      if (A.is_idempotent(a)) continue;
      ++expected;
      auto it = M.ops[x].find(Seq{a});
      if (it == M.ops[x].end() || it->second.size() != 1) return false;
      const auto& [y, cs] = *it->second.begin();
      if (y != by_idem[A.right(a)] || cs.size() != 1 || *cs.begin() != a) return false;
    }
    if (M.ops[x].size() != expected) return false;
  }
  return true;
}

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

json idem_json(const Pmc& z, Idem i) {
  json a = json::array();
  for (int P = 0; P < z.num_pairs(); ++P)
    if (i >> P & 1) a.push_back({z.pair(P).first, z.pair(P).second});
  return a;
}

json seq_json(const StrandsAlgebra& A, const Seq& s) {
  json a = json::array();
  for (int x : s) a.push_back(A.str(x));
  return a;
}

}  // namespace

std::string to_json(const DS& P) {
  const auto& A = *P.alg.A;
  json j{{"kind", "type_d"}, {"generators", json::array()}, {"terms", json::array()}};
  for (int x = 0; x < P.size(); ++x)
    j["generators"].push_back({{"id", x}, {"name", P.name[x]}, {"idempotent", idem_json(A.pmc(), P.idem[x])}, {"level", P.level[x]}});
  for (int x = 0; x < P.size(); ++x)
    for (const auto& [y, cs] : P.delta[x])
      for (int c : cs) j["terms"].push_back({{"source", x}, {"target", y}, {"coefficient", A.str(c)}});
  return j.dump(1);
}

std::string to_json(const DD& P) {
  const auto& A = *P.alg.A;
  json j{{"kind", "type_dd"}, {"generators", json::array()}, {"terms", json::array()}};
  for (int x = 0; x < P.size(); ++x)
    j["generators"].push_back({{"id", x},
                               {"name", P.name[x]},
                               {"idempotent", {idem_json(A.pmc(), Outer::id_first(P.idem[x])), idem_json(A.pmc(), Outer::id_second(P.idem[x]))}},
                               {"level", P.level[x]}});
  for (int x = 0; x < P.size(); ++x)
    for (const auto& [y, cs] : P.delta[x])
      for (auto c : cs)
        j["terms"].push_back({{"source", x}, {"target", y}, {"coefficient", {A.str(Outer::first(c)), A.str(Outer::second(c))}}});
  return j.dump(1);
}

std::string to_json(const DABimodule& M) {
  const auto& B = *M.out;
  json j{{"kind", "type_da"}, {"generators", json::array()}, {"terms", json::array()}};
  for (int x = 0; x < M.size(); ++x)
    j["generators"].push_back({{"id", x},
                               {"name", M.name[x]},
                               {"idempotent", {idem_json(B.pmc(), M.out_idem[x]), idem_json(M.in->pmc(), M.in_idem[x])}},
                               {"level", M.level[x]}});
  for (int x = 0; x < M.size(); ++x)
    for (const auto& [T, ys] : M.ops[x])
      for (const auto& [y, cs] : ys)
        for (int c : cs)
          j["terms"].push_back({{"source", x}, {"target", y}, {"inputs", seq_json(*M.in, T)}, {"coefficient", B.str(c)}});
  return j.dump(1);
}

std::string to_json(const AABimodule& M) {
  json j{{"kind", "type_aa"}, {"generators", json::array()}, {"terms", json::array()}};
  for (int x = 0; x < M.size(); ++x)
    j["generators"].push_back({{"id", x},
                               {"name", M.name[x]},
                               {"idempotent", {idem_json(M.sigma->pmc(), M.sid[x]), idem_json(M.tau->pmc(), M.tid[x])}}});
  for (int x = 0; x < M.size(); ++x)
    for (const auto& [k, ys] : M.ops[x])
      for (int y : ys)
        j["terms"].push_back({{"source", x}, {"target", y}, {"sigma", seq_json(*M.sigma, k.first)}, {"tau", seq_json(*M.tau, k.second)}});
  return j.dump(1);
}

std::string to_json(const AInfModule& M) {
  json j{{"kind", "type_a"}, {"generators", json::array()}, {"terms", json::array()}};
  for (int x = 0; x < M.size(); ++x)
    j["generators"].push_back({{"id", x}, {"name", M.name[x]}, {"idempotent", idem_json(M.alg->pmc(), M.idem[x])}});
  for (int x = 0; x < M.size(); ++x)
    for (const auto& [k, ys] : M.ops[x])
      for (int y : ys) j["terms"].push_back({{"source", x}, {"target", y}, {"inputs", seq_json(*M.alg, k)}});
  return j.dump(1);
}

std::string to_json(const ChainComplex& C) {
  json j{{"kind", "complex"}, {"generators", json::array()}, {"terms", json::array()}};
  for (int x = 0; x < C.size(); ++x)
    j["generators"].push_back({{"id", x}, {"name", C.name.empty() ? std::to_string(x) : C.name[x]}, {"level", C.level[x]}});
  for (int x = 0; x < C.size(); ++x)
    for (int y : C.d[x]) j["terms"].push_back({{"source", x}, {"target", y}});
  return j.dump(1);
}

}  // namespace bfss
