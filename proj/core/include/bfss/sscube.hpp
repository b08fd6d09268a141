#pragma once

#include <map>
#include <string>
#include <vector>

#include "bfss/homalg.hpp"

namespace bfss {

// A cube-filtered complex is a ChainComplex whose levels are vertices of {0,1}^n.

int weight(const Level& v);
std::string vertex_str(const Level& v);

ChainComplex weight_filtration(const ChainComplex& cube);

struct Page {
  int r = 0;
  std::map<int, int> ranks_by_weight;
  std::map<int, int> d_ranks;  // rank of d_r leaving each weight
  int total() const;
};

struct SpectralSequence {
  std::vector<Page> pages;                 // E_0, E_1, ..., last entry is E_infinity
  std::map<std::string, int> e0_by_vertex;
  std::map<std::string, int> e1_by_vertex;
  int collapse_page = 0;                   // smallest r with d_s = 0 for all s >= r
  int e_infty_total = 0;
  int cube_dim = 0;

  const Page& page(int r) const;
};

// Throws InvariantError when d^2 != 0 or an arrow lowers the filtration.
SpectralSequence spectral_sequence(const ChainComplex& cube);

// dim ker - dim im over F2.
int homology_rank(const ChainComplex& C);

std::string to_json(const SpectralSequence& ss);
std::string render_grid(const SpectralSequence& ss);

}  // namespace bfss
