#pragma once

#include <unordered_map>
#include <vector>

#include "bfss/nearchords.hpp"

namespace bfss {

enum class FactorContext { Identity, AntiBraid, MorphismMinus, MorphismPlus };

enum class FactorStatus { Found, NotMember, Exhausted };

struct Factorization {
  FactorStatus status = FactorStatus::Exhausted;
  // Ordered factors whose product is the input. Morphism contexts give
  // d-part, then the near-chord, then b-part; the flanking parts are themselves
  // near-chord products (an idempotent when empty).
  std::vector<Outer::Elem> factors;
  int middle = -1;  // index of the morphism near-chord, morphism contexts only
};

// Factors basic elements of one of the subalgebras of A(Z) (x) A(Z') into near-chords
// by closing the near-chord set under multiplication.
class NearChordFactorizer {
 public:
  NearChordFactorizer(const StrandsAlgebra& A, FactorContext ctx, int curve_index = 0);

  bool in_subalgebra(Outer::Elem x) const;
  Factorization factor(Outer::Elem x) const;

  // Every basic element of the subalgebra, by filtering all basic pairs.
  std::vector<Outer::Elem> subalgebra_basis() const;

  const std::vector<NearChord>& near_chords() const { return chords_; }

 private:
  struct Closure {
    // element -> (prefix element or unit marker, last near-chord)
    std::unordered_map<Outer::Elem, std::pair<Outer::Elem, Outer::Elem>> parent;
    std::vector<Outer::Elem> units;
  };
  static constexpr Outer::Elem kUnit = ~Outer::Elem(1);

  Closure close(const std::vector<Outer::Elem>& gens, const std::vector<OuterIdem>& idems) const;
  std::vector<Outer::Elem> unwind(const Closure& c, Outer::Elem x) const;
  bool member(Outer::Elem x, const std::vector<OuterIdem>& L, const std::vector<OuterIdem>& R, int jcond) const;

  const StrandsAlgebra& A_;
  Outer O_;
  FactorContext ctx_;
  Curve curve_{};
  std::vector<NearChord> chords_;
  std::vector<OuterIdem> diag_, yid_;
  Closure main_;               // Identity / AntiBraid
  Closure left_, right_;       // flanking subalgebras for morphism contexts
  // product -> (left element, near-chord, right element), morphism contexts
  std::unordered_map<Outer::Elem, std::tuple<Outer::Elem, Outer::Elem, Outer::Elem>> triples_;
};

}  // namespace bfss
