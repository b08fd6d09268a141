#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "bfss/pmc.hpp"

namespace bfss {

// Set of matched pairs, as a bitmask over pair indices.
using Idem = std::uint32_t;

inline int popcount(Idem i) { return __builtin_popcount(i); }

struct Strands {
  Idem horizontal = 0;
  std::vector<Chord> moving;  // sorted
};

// An F2 sum of basic generators: sorted, duplicate-free ids.
using Element = std::vector<int>;

void toggle(Element& e, int x);

// Truncated strands algebra A(Z), all weights, basic generators numbered 0..size-1.
class StrandsAlgebra {
 public:
  static constexpr int kZero = -1;

  explicit StrandsAlgebra(Pmc z);

  const Pmc& pmc() const { return z_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const Strands& gen(int x) const { return gens_[x]; }

  // -1 when (horizontal, moving) is not a valid basic generator.
  int find(Idem horizontal, std::vector<Chord> moving) const;

  Idem left(int x) const { return left_[x]; }
  Idem right(int x) const { return right_[x]; }
  int weight(int x) const { return popcount(left_[x]); }
  bool is_idempotent(int x) const { return gens_[x].moving.empty(); }
  int idempotent(Idem i) const { return idem_id_[i]; }

  int mul(int a, int b) const;
  const std::vector<int>& d(int x) const { return d_[x]; }
  Element mul(const Element& a, const Element& b) const;
  Element d(const Element& a) const;

  const std::vector<int>& with_left(Idem i) const { return by_left_[i]; }
  const std::vector<int>& with_right(Idem i) const { return by_right_[i]; }
  std::vector<int> basis(int weight) const;
  std::vector<Idem> idempotents(int weight) const;

  // Multiplicity of region r (between r and r+1), 1 <= r < 4k.
  int multiplicity(int x, int r) const { return mult_[x][r]; }
  const std::vector<std::int8_t>& multiplicities(int x) const { return mult_[x]; }

  // i . a(moving): the unique generator with these moving chords and left idempotent i.
  int with_left_moving(Idem i, const std::vector<Chord>& moving) const;

  std::vector<int> chord_element(Chord c, int weight) const;
  std::vector<int> set_element(const std::vector<Chord>& chords, int weight) const;

  // Position reflection p -> 4k+1-p; requires a symmetric matching.
  int reflect(int x) const;
  Idem reflect_idem(Idem i) const;

  Idem pairs_of_points(const std::vector<int>& pts) const;

  std::string str(int x) const;
  std::string str(const Element& e) const;
  // Torus names (iota_0, rho_1, ...) for genus 1; falls back to str().
  std::string torus_name(int x, const std::string& letter = "rho") const;

 private:
  int compute_mul(int a, int b) const;
  std::string key(Idem h, const std::vector<Chord>& m) const;

  Pmc z_;
  std::vector<Strands> gens_;
  std::unordered_map<std::string, int> index_;
  std::vector<Idem> left_, right_;
  std::vector<std::vector<std::int8_t>> mult_;
  std::vector<std::vector<int>> d_;
  std::vector<std::vector<int>> by_left_, by_right_;
  std::vector<int> idem_id_;

  // Product rows, filled lazily: row a holds (b, ab) for nonzero ab.
  mutable std::vector<std::vector<std::pair<int, int>>> rows_;
  mutable std::unique_ptr<std::once_flag[]> row_once_;
};

// Multiplication table of one weight summand, generators in display order
// (idempotents first, then by total chord length and start point).
struct AlgebraTable {
  std::vector<int> gens;
  std::vector<std::string> names;
  std::vector<std::tuple<int, int, int>> products;  // (a, b, ab) as positions in gens
  std::vector<std::pair<int, std::vector<int>>> differentials;  // nonzero only
};
AlgebraTable algebra_table(const StrandsAlgebra& A, int weight);

bool valid_strands(const Pmc& z, Idem horizontal, const std::vector<Chord>& moving);

}  // namespace bfss
