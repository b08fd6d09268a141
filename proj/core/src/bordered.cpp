#include "bfss/bordered.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace bfss {

namespace {

std::map<OuterIdem, int> by_idem(const DD& P) {
  std::map<OuterIdem, int> m;
  for (int x = 0; x < P.size(); ++x) m[P.idem[x]] = x;
  return m;
}

std::string idem_name(const Pmc& z, Idem i) {
  std::string s;
  for (int P = 0; P < z.num_pairs(); ++P)
    if (i >> P & 1) s += std::to_string(z.pair(P).first) + "-" + std::to_string(z.pair(P).second) + ",";
  if (!s.empty()) s.pop_back();
  return s;
}

}  // namespace

DD dd_from_constant(const StrandsAlgebra& A, const std::vector<OuterIdem>& idems,
                    const std::vector<Outer::Elem>& chords, const std::string& prefix) {
  DD P;
  P.alg = Outer{&A};
  for (OuterIdem i : idems)
    P.add_generator(i, {}, prefix + "{" + idem_name(A.pmc(), Outer::id_first(i)) + "|" +
                               idem_name(A.pmc(), Outer::id_second(i)) + "}");
  auto ix = by_idem(P);
  for (auto c : chords) {
    auto s = ix.find(P.alg.left(c)), t = ix.find(P.alg.right(c));
    if (s == ix.end() || t == ix.end()) throw InvariantError("structure constant leaves the idempotent set");
    P.toggle_arrow(s->second, c, t->second);
  }
  return P;
}

DD cfdd_identity(const StrandsAlgebra& A) {
  return dd_from_constant(A, diagonal_idempotents(A), elements(identity_near_chords(A)), "I");
}

DD cfdd_zero_surgery(const StrandsAlgebra& A, const CurveData& cd) {
  return dd_from_constant(A, cd.y_idems, elements(cd.a0), "Y");
}

DMorphism<Outer> morphism_from_constant(const DD& source, const DD& target, const std::vector<Outer::Elem>& chords) {
  DMorphism<Outer> f{&source, &target, std::vector<std::map<int, std::set<Outer::Elem>>>(source.size())};
  auto s_ix = by_idem(source), t_ix = by_idem(target);
  for (auto c : chords) {
    auto s = s_ix.find(source.alg.left(c)), t = t_ix.find(source.alg.right(c));
    if (s == s_ix.end() || t == t_ix.end()) throw InvariantError("morphism constant leaves the idempotent set");
    f.toggle(s->second, c, t->second);
  }
  return f;
}

DMorphism<Outer> skein_morphism(const DD& id, const DD& y0, const CurveData& cd, int sign) {
  if (sign < 0) return morphism_from_constant(id, y0, elements(cd.fminus));
  return morphism_from_constant(y0, id, elements(cd.fplus));
}

DD cfdd_dehn_twist(const StrandsAlgebra& A, const CurveData& cd, int sign) {
  DD id = cfdd_identity(A);
  DD y0 = cfdd_zero_surgery(A, cd);
  return mapping_cone(skein_morphism(id, y0, cd, sign));
}

Idem plat_idempotent(const StrandsAlgebra& A, PlatSide side) {
  const Pmc& z = A.pmc();
  Idem s = Idem(1) << z.pair_of(1);
  for (int m = 1; m < z.genus(); ++m) s |= Idem(1) << z.pair_of(4 * m);
  return side == PlatSide::Sigma ? s : A.reflect_idem(s);
}

DS cfd_plat(const StrandsAlgebra& A, PlatSide side) {
  const Pmc& z = A.pmc();
  std::vector<Chord> chords{{1, 3}};
  for (int m = 2; m <= z.genus(); ++m) chords.push_back({4 * m - 4, 4 * m - 1});
  if (side == PlatSide::Tau)
    for (auto& c : chords) c = {z.reflect(c.end), z.reflect(c.start)};
  const Idem s = plat_idempotent(A, side);
  DS P;
  P.alg = Single{&A};
  P.add_generator(s, {}, "p");
  for (const auto& c : chords) {
    int x = A.with_left_moving(s, {c});
    if (x < 0) throw InvariantError("plat chord is not compatible with the plat idempotent");
    P.toggle_arrow(0, x, 0);
  }
  return P;
}

AABimodule cfaa_identity(const StrandsAlgebra& A) { return reduce(mor_dd_to_alg(cfdd_identity(A))); }

AInfModule cfa_plat(const StrandsAlgebra& A) {
  const Idem s = plat_idempotent(A, PlatSide::Sigma);
  std::vector<char> keep(std::size_t(1) << A.pmc().num_pairs(), 0);
  keep[s] = 1;
  AABimodule M = mor_dd_to_alg(cfdd_identity(A), keep);
  return reduce(box_sigma(M, cfd_plat(A, PlatSide::Sigma)));
}

std::vector<Outer::Elem> structure_residual(const StrandsAlgebra& A, const std::vector<Outer::Elem>& X,
                                            const std::vector<Outer::Elem>& L, const std::vector<Outer::Elem>& R) {
  Outer O{&A};
  std::unordered_map<Outer::Elem, char> acc;
  auto tog = [&](Outer::Elem e) { acc[e] ^= 1; };
  std::unordered_map<OuterIdem, std::vector<Outer::Elem>> x_by_left, r_by_left;
  for (auto x : X) x_by_left[O.left(x)].push_back(x);
  for (auto r : R) r_by_left[O.left(r)].push_back(r);
  for (auto x : X) {
    for (auto e : O.d(x)) tog(e);
    if (auto it = r_by_left.find(O.right(x)); it != r_by_left.end())
      for (auto r : it->second)
        if (auto p = O.mul(x, r); p != Outer::zero) tog(p);
  }
  for (auto l : L)
    if (auto it = x_by_left.find(O.right(l)); it != x_by_left.end())
      for (auto x : it->second)
        if (auto p = O.mul(l, x); p != Outer::zero) tog(p);
  std::vector<Outer::Elem> out;
  for (auto [e, v] : acc)
    if (v) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

StructureReport verify_structure_constants(const StrandsAlgebra& A, const std::vector<Outer::Elem>& a_id,
                                           const std::vector<Outer::Elem>& a0, const std::vector<Outer::Elem>& fminus,
                                           const std::vector<Outer::Elem>& fplus) {
  StructureReport rep;
  Outer O{&A};
  auto run = [&](CheckReport& r, const char* eq, const std::vector<Outer::Elem>& X, const std::vector<Outer::Elem>& L,
                 const std::vector<Outer::Elem>& R) {
    for (auto e : structure_residual(A, X, L, R)) r.fail(std::string(eq) + ": uncanceled " + O.str(e));
  };
  // For A_Id and A_0 the equation is dX + X.X = 0, i.e. L = 0, R = X.
  run(rep.a_id, "dA_Id + A_Id A_Id", a_id, {}, a_id);
  run(rep.a0, "dA_0 + A_0 A_0", a0, {}, a0);
  run(rep.fminus, "dF- + A_Id F- + F- A_0", fminus, a_id, a0);
  run(rep.fplus, "dF+ + A_0 F+ + F+ A_Id", fplus, a0, a_id);
  return rep;
}

StructureReport verify_structure_constants(const StrandsAlgebra& A, int curve_index) {
  CurveData cd = curve_data(A, curve_index);
  return verify_structure_constants(A, elements(identity_near_chords(A)), elements(cd.a0), elements(cd.fminus),
                                    elements(cd.fplus));
}

}  // namespace bfss
