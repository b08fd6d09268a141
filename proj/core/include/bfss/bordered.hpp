#pragma once

#include <vector>

#include "bfss/homalg.hpp"
#include "bfss/nearchords.hpp"

namespace bfss {

// A DD structure with one generator per idempotent and delta^1 the sum of `chords`.
DD dd_from_constant(const StrandsAlgebra& A, const std::vector<OuterIdem>& idems,
                    const std::vector<Outer::Elem>& chords, const std::string& prefix);

DD cfdd_identity(const StrandsAlgebra& A);
DD cfdd_zero_surgery(const StrandsAlgebra& A, const CurveData& cd);

// sign < 0: F- : id -> y0.  sign > 0: F+ : y0 -> id.
DMorphism<Outer> skein_morphism(const DD& id, const DD& y0, const CurveData& cd, int sign);
DMorphism<Outer> morphism_from_constant(const DD& source, const DD& target, const std::vector<Outer::Elem>& chords);

// Cone(F+) for sign > 0 (Y0 at filtration 0), Cone(F-) for sign < 0 (Id at 0).
DD cfdd_dehn_twist(const StrandsAlgebra& A, const CurveData& cd, int sign);

// Which factor of A(Z) (x) A(Z') the handlebody is glued along: Sigma uses Z
// positions, Tau the reflected ones.
enum class PlatSide { Sigma, Tau };
DS cfd_plat(const StrandsAlgebra& A, PlatSide side = PlatSide::Sigma);
Idem plat_idempotent(const StrandsAlgebra& A, PlatSide side = PlatSide::Sigma);

AABimodule cfaa_identity(const StrandsAlgebra& A);
// Built from the unreduced Mor bimodule restricted to generators that can pair
// with the plat generator, then reduced.
AInfModule cfa_plat(const StrandsAlgebra& A);

struct StructureReport {
  CheckReport a_id, a0, fminus, fplus;
  bool ok() const { return a_id.ok && a0.ok && fminus.ok && fplus.ok; }
};

// Terms of dX + L.X + X.R that fail to cancel.
std::vector<Outer::Elem> structure_residual(const StrandsAlgebra& A, const std::vector<Outer::Elem>& X,
                                            const std::vector<Outer::Elem>& L, const std::vector<Outer::Elem>& R);

StructureReport verify_structure_constants(const StrandsAlgebra& A, const std::vector<Outer::Elem>& a_id,
                                           const std::vector<Outer::Elem>& a0, const std::vector<Outer::Elem>& fminus,
                                           const std::vector<Outer::Elem>& fplus);
StructureReport verify_structure_constants(const StrandsAlgebra& A, int curve_index);

}  // namespace bfss
