#include "bfss/factor.hpp"

#include <algorithm>

namespace bfss {

NearChordFactorizer::NearChordFactorizer(const StrandsAlgebra& A, FactorContext ctx, int curve_index)
    : A_(A), O_{&A}, ctx_(ctx) {
  diag_ = diagonal_idempotents(A);
  if (ctx == FactorContext::Identity) {
    chords_ = identity_near_chords(A);
    main_ = close(elements(chords_), diag_);
    return;
  }
  CurveData cd = curve_data(A, curve_index);
  curve_ = cd.curve;
  yid_ = cd.y_idems;
  if (ctx == FactorContext::AntiBraid) {
    chords_ = cd.a0;
    main_ = close(elements(chords_), yid_);
    return;
  }
  Closure D = close(elements(identity_near_chords(A)), diag_);
  Closure B = close(elements(cd.a0), yid_);
  const bool minus = ctx == FactorContext::MorphismMinus;
  chords_ = minus ? cd.fminus : cd.fplus;
  left_ = minus ? D : B;
  right_ = minus ? B : D;

  auto bucket = [&](const Closure& c, bool by_left) {
    std::unordered_map<OuterIdem, std::vector<Outer::Elem>> m;
    for (auto u : c.units) m[by_left ? O_.left(u) : O_.right(u)].push_back(u);
    for (const auto& [e, p] : c.parent) m[by_left ? O_.left(e) : O_.right(e)].push_back(e);
    for (auto& [k, v] : m) std::sort(v.begin(), v.end());
    return m;
  };
  auto lb = bucket(left_, false), rb = bucket(right_, true);
  for (const auto& nc : chords_) {
    const Outer::Elem n = nc.elem;
    auto li = lb.find(O_.left(n));
    auto ri = rb.find(O_.right(n));
    if (li == lb.end() || ri == rb.end()) continue;
    for (auto d : li->second) {
      auto dn = O_.mul(d, n);
      if (dn == Outer::zero) continue;
      for (auto b : ri->second) {
        auto p = O_.mul(dn, b);
        if (p != Outer::zero) triples_.try_emplace(p, d, n, b);
      }
    }
  }
}

NearChordFactorizer::Closure NearChordFactorizer::close(const std::vector<Outer::Elem>& gens,
                                                        const std::vector<OuterIdem>& idems) const {
  Closure c;
  for (auto i : idems) c.units.push_back(O_.unit(i));
  std::unordered_map<OuterIdem, std::vector<Outer::Elem>> by_left;
  for (auto g : gens) by_left[O_.left(g)].push_back(g);
  std::vector<Outer::Elem> frontier;
  for (auto g : gens)
    if (c.parent.try_emplace(g, kUnit, g).second) frontier.push_back(g);
  while (!frontier.empty()) {
    std::vector<Outer::Elem> next;
    for (auto e : frontier) {
      auto it = by_left.find(O_.right(e));
      if (it == by_left.end()) continue;
      for (auto g : it->second) {
        auto p = O_.mul(e, g);
        if (p != Outer::zero && c.parent.try_emplace(p, e, g).second) next.push_back(p);
      }
    }
    frontier.swap(next);
  }
  return c;
}

std::vector<Outer::Elem> NearChordFactorizer::unwind(const Closure& c, Outer::Elem x) const {
  std::vector<Outer::Elem> out;
  while (x != kUnit) {
    auto it = c.parent.find(x);
    if (it == c.parent.end()) return {x};  // idempotent flank
    out.push_back(it->second.second);
    x = it->second.first;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool NearChordFactorizer::member(Outer::Elem x, const std::vector<OuterIdem>& L, const std::vector<OuterIdem>& R,
                                 int jcond) const {
  if (std::find(L.begin(), L.end(), O_.left(x)) == L.end()) return false;
  if (std::find(R.begin(), R.end(), O_.right(x)) == R.end()) return false;
  if (ctx_ == FactorContext::Identity) return supports_agree(A_, x, 0, 0);
  if (!supports_agree(A_, x, curve_.c1, curve_.c2)) return false;
  if (!jcond) return true;
  const int a = Outer::first(x), b = Outer::second(x), n = A_.pmc().size(), c1 = curve_.c1;
  const int gap = curve_.kind == CurveKind::Generic ? 2 : 1;
  return A_.multiplicity(a, c1) == A_.multiplicity(a, c1 + gap) &&
         A_.multiplicity(b, n - c1) == A_.multiplicity(b, n - c1 - gap);
}

bool NearChordFactorizer::in_subalgebra(Outer::Elem x) const {
  switch (ctx_) {
    case FactorContext::Identity: return member(x, diag_, diag_, 0);
    case FactorContext::AntiBraid: return member(x, yid_, yid_, 1);
    case FactorContext::MorphismMinus: return member(x, diag_, yid_, 0);
    case FactorContext::MorphismPlus: return member(x, yid_, diag_, 0);
  }
  return false;
}

Factorization NearChordFactorizer::factor(Outer::Elem x) const {
  Factorization f;
  if (!in_subalgebra(x)) {
    f.status = FactorStatus::NotMember;
    return f;
  }
  if (O_.is_idem(x)) {
    f.status = FactorStatus::Found;
    f.factors = {x};
    return f;
  }
  if (ctx_ == FactorContext::Identity || ctx_ == FactorContext::AntiBraid) {
    if (main_.parent.count(x)) {
      f.status = FactorStatus::Found;
      f.factors = unwind(main_, x);
    }
    return f;
  }
  auto it = triples_.find(x);
  if (it == triples_.end()) return f;
  const auto [d, n, b] = it->second;
  f.status = FactorStatus::Found;
  f.factors = unwind(left_, d);
  f.middle = static_cast<int>(f.factors.size());
  f.factors.push_back(n);
  auto rest = unwind(right_, b);
  f.factors.insert(f.factors.end(), rest.begin(), rest.end());
  return f;
}

std::vector<Outer::Elem> NearChordFactorizer::subalgebra_basis() const {
  std::vector<Outer::Elem> out;
  const auto basis = A_.basis(A_.pmc().genus());
  for (int a : basis)
    for (int b : basis) {
      Outer::Elem x = Outer::pack(a, b);
      if (in_subalgebra(x)) out.push_back(x);
    }
  return out;
}

}  // namespace bfss
