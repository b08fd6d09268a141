#pragma once

#include <compare>
#include <map>
#include <utility>
#include <vector>

namespace bfss {

struct Generator {
  int index;  // s_index crosses strands index and index+1
  int sign;   // +1 or -1
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

// Braid on `strands` strands closed by caps (1,2),(3,4),... top and bottom.
struct PlatDiagram {
  int strands = 4;
  std::vector<Generator> word;
};

struct Resolution {
  int circles = 0;
  int marked = 0;           // circle through the top of strand 1
  std::vector<int> segment; // circle of each segment, indexed level * strands + (strand - 1)
};

struct ResolutionCube {
  int crossings = 0;
  std::vector<Resolution> vertices;  // indexed by bitmask, bit t = resolution of crossing t
};

ResolutionCube resolution_cube(const PlatDiagram& d);

enum class KhGrading { Direct, Reversed };

// Ranks of reduced Khovanov homology over F2 by cube weight. Reversed maps weight w to c - w.
std::map<int, int> reduced_kh(const PlatDiagram& d, KhGrading g = KhGrading::Direct);
std::map<int, int> unreduced_kh(const PlatDiagram& d, KhGrading g = KhGrading::Direct);

// The grading direction under which the oracle agrees with the spectral sequence's E2 page.
inline constexpr KhGrading kFrozenKhGrading = KhGrading::Direct;

}  // namespace bfss
