#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfss/strands.hpp"

namespace bfss {

// Coefficient adapters used by the generic structures in homalg.hpp.

struct Single {
  using Elem = int;
  using Id = Idem;
  static constexpr Elem zero = -1;

  const StrandsAlgebra* A = nullptr;

  Elem mul(Elem a, Elem b) const { return A->mul(a, b); }
  const std::vector<int>& d(Elem a) const { return A->d(a); }
  bool is_idem(Elem a) const { return A->is_idempotent(a); }
  Id left(Elem a) const { return A->left(a); }
  Id right(Elem a) const { return A->right(a); }
  Elem unit(Id i) const { return A->idempotent(i); }
  std::string str(Elem a) const { return A->str(a); }
  std::string str_id(Id i) const { return std::to_string(i); }
};

// A(Z) (x) A(Z') with Z' the reflected circle. Both factors are stored in the same
// algebra object; Z' positions are reflected positions.
struct Outer {
  using Elem = std::uint64_t;
  using Id = std::uint64_t;
  static constexpr Elem zero = ~std::uint64_t(0);

  const StrandsAlgebra* A = nullptr;
  // Reverse the second factor's product (opposite algebra). Off in the pipeline.
  bool reversed = false;

  static Elem pack(int a, int b) { return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b); }
  static int first(Elem x) { return int(x >> 32); }
  static int second(Elem x) { return int(x & 0xffffffffu); }
  static Id pack_id(Idem i, Idem j) { return (std::uint64_t(i) << 32) | j; }
  static Idem id_first(Id x) { return Idem(x >> 32); }
  static Idem id_second(Id x) { return Idem(x & 0xffffffffu); }

  Elem mul(Elem x, Elem y) const {
    int a = A->mul(first(x), first(y));
    if (a < 0) return zero;
    int b = reversed ? A->mul(second(y), second(x)) : A->mul(second(x), second(y));
    if (b < 0) return zero;
    return pack(a, b);
  }
  std::vector<Elem> d(Elem x) const {
    std::vector<Elem> out;
    for (int a : A->d(first(x))) out.push_back(pack(a, second(x)));
    for (int b : A->d(second(x))) out.push_back(pack(first(x), b));
    return out;
  }
  bool is_idem(Elem x) const { return A->is_idempotent(first(x)) && A->is_idempotent(second(x)); }
  Id left(Elem x) const {
    return pack_id(A->left(first(x)), reversed ? A->right(second(x)) : A->left(second(x)));
  }
  Id right(Elem x) const {
    return pack_id(A->right(first(x)), reversed ? A->left(second(x)) : A->right(second(x)));
  }
  Elem unit(Id i) const { return pack(A->idempotent(id_first(i)), A->idempotent(id_second(i))); }
  std::string str(Elem x) const { return A->str(first(x)) + " (x) " + A->str(second(x)); }
  std::string str_id(Id i) const {
    return std::to_string(id_first(i)) + "," + std::to_string(id_second(i));
  }
};

}  // namespace bfss
