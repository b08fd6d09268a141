#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bfss {

struct Chord {
  int start = 0;
  int end = 0;
  friend auto operator<=>(const Chord&, const Chord&) = default;
};

// Matched circle on positions 1..4k, cut at the basepoint (between 4k and 1).
class Pmc {
 public:
  Pmc(int genus, const std::vector<std::pair<int, int>>& pairs);

  static Pmc linear(int genus);

  int genus() const { return k_; }
  int size() const { return 4 * k_; }
  int num_pairs() const { return 2 * k_; }

  int partner(int p) const { return partner_[p]; }
  int pair_of(int p) const { return pair_of_[p]; }
  const std::pair<int, int>& pair(int idx) const { return pairs_[idx]; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  // Orientation reversal -Z: same matching read backwards.
  int reflect(int p) const { return 4 * k_ + 1 - p; }
  int reflect_pair(int idx) const { return pair_of_[reflect(pairs_[idx].first)]; }
  bool symmetric() const;

  bool is_linear() const { return linear_; }
  std::string str() const;

  friend bool operator==(const Pmc& a, const Pmc& b) { return a.pairs_ == b.pairs_; }

 private:
  int k_;
  bool linear_ = false;
  std::vector<std::pair<int, int>> pairs_;  // sorted by first point
  std::vector<int> partner_;
  std::vector<int> pair_of_;
};

bool surgery_connected(int n, const std::vector<int>& partner);

enum class CurveKind { Generic, DegenerateLow, DegenerateHigh };

struct Curve {
  int index = 0;
  int c1 = 0, c2 = 0;
  CurveKind kind = CurveKind::Generic;
  int d = 0, u = 0;  // Generic
  int p = 0;         // degenerate cases
};

Curve curve(const Pmc& z, int n);
std::vector<Chord> all_chords(const Pmc& z);

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bfss
