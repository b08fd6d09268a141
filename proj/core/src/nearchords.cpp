#include "bfss/nearchords.hpp"

#include <algorithm>
#include <set>

namespace bfss {

namespace {

using Shape = std::pair<std::vector<Chord>, std::vector<Chord>>;  // (chords in Z, chords in Z read in Z coords)

std::vector<Chord> reflect_chords(const Pmc& z, const std::vector<Chord>& m) {
  std::vector<Chord> out;
  for (const auto& c : m) out.push_back({z.reflect(c.end), z.reflect(c.start)});
  return out;
}

Idem all_pairs(const Pmc& z) { return (Idem(1) << z.num_pairs()) - 1; }

enum class JCond { None, Generic, Degenerate };

struct Builder {
  const StrandsAlgebra& A;
  const Curve& c;
  std::vector<NearChord> out;
  std::set<Outer::Elem> seen;

  bool accept(Outer::Elem x, const std::set<OuterIdem>& L, const std::set<OuterIdem>& R, JCond j) const {
    Outer O{&A};
    if (!L.count(O.left(x)) || !R.count(O.right(x))) return false;
    if (!supports_agree(A, x, c.c1, c.c2)) return false;
    const int a = Outer::first(x), b = Outer::second(x), n = A.pmc().size();
    if (j == JCond::Generic)
      return A.multiplicity(a, c.c1) == A.multiplicity(a, c.c1 + 2) &&
             A.multiplicity(b, n - c.c1) == A.multiplicity(b, n - c.c1 - 2);
    if (j == JCond::Degenerate)
      return A.multiplicity(a, c.c1) == A.multiplicity(a, c.c1 + 1) &&
             A.multiplicity(b, n - c.c1) == A.multiplicity(b, n - c.c1 - 1);
    return true;
  }

  void add(NearChordKind kind, const std::vector<Shape>& shapes, const std::vector<OuterIdem>& starts,
           const std::set<OuterIdem>& L, const std::set<OuterIdem>& R, JCond j) {
    const Pmc& z = A.pmc();
    for (const auto& [mz, mzp] : shapes) {
      const auto mzr = reflect_chords(z, mzp);
      for (OuterIdem st : starts) {
        int a = A.with_left_moving(Outer::id_first(st), mz);
        int b = A.with_left_moving(Outer::id_second(st), mzr);
        if (a < 0 || b < 0) continue;
        Outer::Elem x = Outer::pack(a, b);
        if (!accept(x, L, R, j) || !seen.insert(x).second) continue;
        out.push_back({kind, x});
      }
    }
  }
};

std::vector<NearChord> reflect_all(const StrandsAlgebra& A, const std::vector<NearChord>& v) {
  std::vector<NearChord> out;
  for (const auto& c : v)
    out.push_back({c.kind, Outer::pack(A.reflect(Outer::first(c.elem)), A.reflect(Outer::second(c.elem)))});
  return out;
}

}  // namespace

const char* kind_name(NearChordKind k) {
  static const char* names[] = {"Id",  "B1",  "B2",  "B3", "B4", "B5", "B6", "B7", "B8", "Bd1", "Bd2", "N1",
                                "N2",  "N3",  "N4",  "Nd1", "Nd2", "P1", "P2", "P3", "P4", "Pd1", "Pd2"};
  return names[static_cast<int>(k)];
}

std::vector<OuterIdem> diagonal_idempotents(const StrandsAlgebra& A) {
  std::vector<OuterIdem> out;
  const Idem all = all_pairs(A.pmc());
  for (Idem s : A.idempotents(A.pmc().genus())) out.push_back(Outer::pack_id(s, A.reflect_idem(all & ~s)));
  return out;
}

std::vector<OuterIdem> antibraid_idempotents(const StrandsAlgebra& A, const Curve& c) {
  const Pmc& z = A.pmc();
  const Idem all = all_pairs(z);
  const Idem pc = Idem(1) << z.pair_of(c.c1);
  std::vector<OuterIdem> out;
  const auto idems = A.idempotents(z.genus());
  for (Idem s : idems)
    for (Idem t : idems) {
      if ((s & t) != pc) continue;
      const Idem u = s | t;
      bool ok;
      if (c.kind == CurveKind::Generic)
        ok = u == (all & ~(Idem(1) << z.pair_of(c.d))) || u == (all & ~(Idem(1) << z.pair_of(c.u)));
      else
        ok = u == (all & ~(Idem(1) << z.pair_of(c.p)));
      if (ok) out.push_back(Outer::pack_id(s, A.reflect_idem(t)));
    }
  return out;
}

bool supports_agree(const StrandsAlgebra& A, Outer::Elem x, int c1, int c2) {
  const int a = Outer::first(x), b = Outer::second(x), n = A.pmc().size();
  for (int r = 1; r < n; ++r) {
    if (c1 <= r && r < c2) continue;
    if (A.multiplicity(a, r) != A.multiplicity(b, n - r)) return false;
  }
  return true;
}

std::vector<NearChord> identity_near_chords(const StrandsAlgebra& A) {
  const Pmc& z = A.pmc();
  std::vector<NearChord> out;
  for (OuterIdem st : diagonal_idempotents(A))
    for (const Chord& ch : all_chords(z)) {
      int a = A.with_left_moving(Outer::id_first(st), {ch});
      int b = A.with_left_moving(Outer::id_second(st), reflect_chords(z, {ch}));
      if (a >= 0 && b >= 0) out.push_back({NearChordKind::Identity, Outer::pack(a, b)});
    }
  return out;
}

namespace {

CurveData generic_data(const StrandsAlgebra& A, const Curve& c) {
  using K = NearChordKind;
  const int n = A.pmc().size();
  const int c1 = c.c1, c2 = c.c2, d = c.d, u = c.u;
  CurveData cd;
  cd.curve = c;
  cd.y_idems = antibraid_idempotents(A, c);
  const auto diag = diagonal_idempotents(A);
  const std::set<OuterIdem> B(cd.y_idems.begin(), cd.y_idems.end()), D(diag.begin(), diag.end());

  std::vector<int> G;
  for (int x = 1; x <= n; ++x)
    if (x != c1 && x != c2 && x != d && x != u) G.push_back(x);
  std::vector<std::pair<int, int>> outer;
  for (int p = 1; p < c1; ++p)
    for (int q = c2 + 1; q <= n; ++q) outer.emplace_back(p, q);

  Builder b0{A, c, {}, {}};
  {
    std::vector<Shape> s1;
    for (int p : G)
      for (int q : G)
        if (p < q) s1.push_back({{{p, q}}, {{p, q}}});
    b0.add(K::B1, s1, cd.y_idems, B, B, JCond::Generic);
    b0.add(K::B2, {{{{d, u}}, {}}, {{}, {{d, u}}}}, cd.y_idems, B, B, JCond::Generic);
    b0.add(K::B3, {{{{c1, d}, {u, c2}}, {}}, {{}, {{c1, d}, {u, c2}}}}, cd.y_idems, B, B, JCond::Generic);
    b0.add(K::B4, {{{{c1, c2}}, {}}, {{}, {{c1, c2}}}}, cd.y_idems, B, B, JCond::Generic);
    std::vector<Shape> s5, s6, s7, s8;
    for (auto [p, q] : outer) {
      s5.push_back({{{p, c1}, {c2, q}}, {{p, q}}});
      s5.push_back({{{p, q}}, {{p, c1}, {c2, q}}});
      s6.push_back({{{p, d}, {u, q}}, {{p, q}}});
      s6.push_back({{{p, q}}, {{p, d}, {u, q}}});
      s7.push_back({{{p, c1}, {c2, q}}, {{p, c1}, {c2, q}}});
      s8.push_back({{{p, c1}, {c2, q}}, {{p, d}, {u, q}}});
      s8.push_back({{{p, d}, {u, q}}, {{p, c1}, {c2, q}}});
    }
    b0.add(K::B5, s5, cd.y_idems, B, B, JCond::Generic);
    b0.add(K::B6, s6, cd.y_idems, B, B, JCond::Generic);
    b0.add(K::B7, s7, cd.y_idems, B, B, JCond::Generic);
    b0.add(K::B8, s8, cd.y_idems, B, B, JCond::Generic);
  }
  cd.a0 = std::move(b0.out);

  Builder bm{A, c, {}, {}};
  {
    std::vector<Shape> n2, n4;
    for (int e = c2 + 1; e <= n; ++e) {
      n2.push_back({{{u, e}}, {{c2, e}}});
      n4.push_back({{{d, e}}, {{c2, e}}});
    }
    for (int e = 1; e < c1; ++e) {
      n2.push_back({{{e, c1}}, {{e, d}}});
      n4.push_back({{{e, c1}}, {{e, u}}});
    }
    bm.add(K::N1, {{{{u, c2}}, {}}, {{}, {{c1, d}}}}, diag, D, B, JCond::None);
    bm.add(K::N2, n2, diag, D, B, JCond::None);
    bm.add(K::N3, {{{{d, c2}}, {}}, {{}, {{c1, u}}}}, diag, D, B, JCond::None);
    bm.add(K::N4, n4, diag, D, B, JCond::None);
  }
  cd.fminus = std::move(bm.out);

  Builder bp{A, c, {}, {}};
  {
    std::vector<Shape> p2, p4;
    for (int e = 1; e < c1; ++e) {
      p2.push_back({{{e, d}}, {{e, c1}}});
      p4.push_back({{{e, u}}, {{e, c1}}});
    }
    for (int e = c2 + 1; e <= n; ++e) {
      p2.push_back({{{c2, e}}, {{u, e}}});
      p4.push_back({{{c2, e}}, {{d, e}}});
    }
    bp.add(K::P1, {{{{c1, d}}, {}}, {{}, {{u, c2}}}}, cd.y_idems, B, D, JCond::None);
    bp.add(K::P2, p2, cd.y_idems, B, D, JCond::None);
    bp.add(K::P3, {{{{c1, u}}, {}}, {{}, {{d, c2}}}}, cd.y_idems, B, D, JCond::None);
    bp.add(K::P4, p4, cd.y_idems, B, D, JCond::None);
  }
  cd.fplus = std::move(bp.out);
  return cd;
}

CurveData low_data(const StrandsAlgebra& A, const Curve& c) {
  using K = NearChordKind;
  const int n = A.pmc().size();
  const int c1 = c.c1, c2 = c.c2, p = c.p;
  CurveData cd;
  cd.curve = c;
  cd.y_idems = antibraid_idempotents(A, c);
  const auto diag = diagonal_idempotents(A);
  const std::set<OuterIdem> B(cd.y_idems.begin(), cd.y_idems.end()), D(diag.begin(), diag.end());
  std::vector<int> G;
  for (int x = 1; x <= n; ++x)
    if (x != c1 && x != c2 && x != p) G.push_back(x);

  Builder b0{A, c, {}, {}};
  std::vector<Shape> s1;
  for (int a : G)
    for (int b : G)
      if (a < b) s1.push_back({{{a, b}}, {{a, b}}});
  b0.add(K::Bd1, s1, cd.y_idems, B, B, JCond::Degenerate);
  b0.add(K::Bd2, {{{{c1, c2}}, {}}, {{}, {{c1, c2}}}}, cd.y_idems, B, B, JCond::Degenerate);
  cd.a0 = std::move(b0.out);

  Builder bm{A, c, {}, {}};
  std::vector<Shape> nd2, pd2;
  for (int e = c2 + 1; e <= n; ++e) {
    nd2.push_back({{{p, e}}, {{c2, e}}});
    pd2.push_back({{{c2, e}}, {{p, e}}});
  }
  bm.add(K::Nd1, {{{{p, c2}}, {}}, {{}, {{c1, p}}}}, diag, D, B, JCond::None);
  bm.add(K::Nd2, nd2, diag, D, B, JCond::None);
  cd.fminus = std::move(bm.out);

  Builder bp{A, c, {}, {}};
  bp.add(K::Pd1, {{{{c1, p}}, {}}, {{}, {{p, c2}}}}, cd.y_idems, B, D, JCond::None);
  bp.add(K::Pd2, pd2, cd.y_idems, B, D, JCond::None);
  cd.fplus = std::move(bp.out);
  return cd;
}

}  // namespace

CurveData curve_data(const StrandsAlgebra& A, int index) {
  const Curve c = curve(A.pmc(), index);
  if (c.kind == CurveKind::Generic) return generic_data(A, c);
  if (c.kind == CurveKind::DegenerateLow) return low_data(A, c);
  // The high curve is the low curve seen through p -> 4k+1-p, which also swaps
  // the direction of the skein maps.
  CurveData low = low_data(A, curve(A.pmc(), 1));
  CurveData cd;
  cd.curve = c;
  cd.y_idems = antibraid_idempotents(A, c);
  cd.a0 = reflect_all(A, low.a0);
  cd.fminus = reflect_all(A, low.fplus);
  cd.fplus = reflect_all(A, low.fminus);
  for (auto& x : cd.fminus) x.kind = x.kind == NearChordKind::Pd1 ? NearChordKind::Nd1 : NearChordKind::Nd2;
  for (auto& x : cd.fplus) x.kind = x.kind == NearChordKind::Nd1 ? NearChordKind::Pd1 : NearChordKind::Pd2;
  return cd;
}

std::vector<Outer::Elem> elements(const std::vector<NearChord>& v) {
  std::vector<Outer::Elem> out;
  for (const auto& c : v) out.push_back(c.elem);
  return out;
}

std::string near_chord_str(const StrandsAlgebra& A, const NearChord& c) {
  return std::string(kind_name(c.kind)) + ": " + A.str(Outer::first(c.elem)) + " (x) " + A.str(Outer::second(c.elem));
}

}  // namespace bfss
