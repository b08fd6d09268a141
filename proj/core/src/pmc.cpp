#include "bfss/pmc.hpp"

#include <algorithm>
#include <sstream>

namespace bfss {

bool surgery_connected(int n, const std::vector<int>& partner) {
  // Segment j runs from point j to j+1 (indices mod n). Walking up a segment and
  // crossing the handle at its top endpoint lands on the segment above the partner.
  std::vector<char> seen(n, 0);
  int j = 0, len = 0;
  while (!seen[j]) {
    seen[j] = 1;
    ++len;
    j = partner[j + 1] % n;
  }
  return len == n;
}

Pmc::Pmc(int genus, const std::vector<std::pair<int, int>>& pairs) : k_(genus) {
  if (genus < 1) throw ValidationError("genus must be positive");
  const int n = 4 * genus;
  if (static_cast<int>(pairs.size()) != 2 * genus)
    throw ValidationError("expected " + std::to_string(2 * genus) + " matched pairs");
  partner_.assign(n + 1, 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > n || b > n || a == b || partner_[a] || partner_[b])
      throw ValidationError("matching is not a fixed-point-free involution");
    partner_[a] = b;
    partner_[b] = a;
    pairs_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs_.begin(), pairs_.end());
  if (!surgery_connected(n, partner_)) throw ValidationError("surgered circle is disconnected");
  pair_of_.assign(n + 1, -1);
  for (int i = 0; i < static_cast<int>(pairs_.size()); ++i) {
    pair_of_[pairs_[i].first] = i;
    pair_of_[pairs_[i].second] = i;
  }
}

Pmc Pmc::linear(int genus) {
  if (genus < 1) throw ValidationError("linear_pmc needs genus >= 1");
  const int n = 4 * genus;
  std::vector<std::pair<int, int>> pairs;
  if (genus == 1) {
    pairs = {{1, 3}, {2, 4}};
  } else {
    pairs.emplace_back(1, 3);
    pairs.emplace_back(n - 2, n);
    for (int m = 1; m <= 2 * genus - 2; ++m) pairs.emplace_back(2 * m, 2 * m + 3);
  }
  Pmc z(genus, pairs);
  z.linear_ = true;
  return z;
}

bool Pmc::symmetric() const {
  for (int p = 1; p <= size(); ++p)
    if (reflect(partner(p)) != partner(reflect(p))) return false;
  return true;
}

std::string Pmc::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < pairs_.size(); ++i) {
    if (i) os << ' ';
    os << pairs_[i].first << '-' << pairs_[i].second;
  }
  return os.str();
}

Curve curve(const Pmc& z, int n) {
  if (!z.is_linear()) throw ValidationError("curve classification needs a linear pmc");
  const int k = z.genus();
  if (n < 1 || n > 2 * k) throw ValidationError("curve index out of range");
  Curve c;
  c.index = n;
  if (n == 1) {
    c.kind = CurveKind::DegenerateLow;
    c.c1 = 1;
    c.c2 = 3;
    c.p = 2;
  } else if (n == 2 * k) {
    c.kind = CurveKind::DegenerateHigh;
    c.c1 = z.size() - 2;
    c.c2 = z.size();
    c.p = z.size() - 1;
  } else {
    const int m = n - 1;
    c.c1 = 2 * m;
    c.c2 = 2 * m + 3;
    c.d = c.c1 + 1;
    c.u = c.c1 + 2;
  }
  return c;
}

std::vector<Chord> all_chords(const Pmc& z) {
  std::vector<Chord> out;
  for (int i = 1; i <= z.size(); ++i)
    for (int j = i + 1; j <= z.size(); ++j) out.push_back({i, j});
  return out;
}

}  // namespace bfss
