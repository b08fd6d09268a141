#pragma once

#include <string>
#include <vector>

#include "bfss/algebra.hpp"
#include "bfss/pmc.hpp"

namespace bfss {

enum class NearChordKind {
  Identity,
  B1, B2, B3, B4, B5, B6, B7, B8,
  Bd1, Bd2,
  N1, N2, N3, N4,
  Nd1, Nd2,
  P1, P2, P3, P4,
  Pd1, Pd2,
};

const char* kind_name(NearChordKind k);

struct NearChord {
  NearChordKind kind;
  Outer::Elem elem;
};

using OuterIdem = Outer::Id;

// I(S) (x) I'(T) with T the reflected complement of S.
std::vector<OuterIdem> diagonal_idempotents(const StrandsAlgebra& A);
std::vector<OuterIdem> antibraid_idempotents(const StrandsAlgebra& A, const Curve& c);

// Region multiplicities of a outside [c1, c2) agree with those of a' at the
// reflected regions. With c1 = c2 = 0 this is the full support condition.
bool supports_agree(const StrandsAlgebra& A, Outer::Elem x, int c1, int c2);

// Everything a curve contributes: Y0 idempotents and the three structure constants.
struct CurveData {
  Curve curve;
  std::vector<OuterIdem> y_idems;
  std::vector<NearChord> a0;      // anti-braid (or degenerate) structure constant
  std::vector<NearChord> fminus;  // CFDD(Id) -> CFDD(Y0)
  std::vector<NearChord> fplus;   // CFDD(Y0) -> CFDD(Id)
};

std::vector<NearChord> identity_near_chords(const StrandsAlgebra& A);
CurveData curve_data(const StrandsAlgebra& A, int index);

std::vector<Outer::Elem> elements(const std::vector<NearChord>& v);
std::string near_chord_str(const StrandsAlgebra& A, const NearChord& c);

}  // namespace bfss
