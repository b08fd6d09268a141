#include "bfss/strands.hpp"

#include <algorithm>
#include <sstream>

namespace bfss {

void toggle(Element& e, int x) {
  auto it = std::lower_bound(e.begin(), e.end(), x);
  if (it != e.end() && *it == x)
    e.erase(it);
  else
    e.insert(it, x);
}

bool valid_strands(const Pmc& z, Idem horizontal, const std::vector<Chord>& moving) {
  Idem starts = 0, ends = 0;
  std::vector<int> mult(z.size() + 1, 0);
  for (const auto& c : moving) {
    if (c.start < 1 || c.end > z.size() || c.start >= c.end) return false;
    Idem s = Idem(1) << z.pair_of(c.start), e = Idem(1) << z.pair_of(c.end);
    if ((starts & s) || (ends & e)) return false;
    starts |= s;
    ends |= e;
    for (int r = c.start; r < c.end; ++r)
      if (++mult[r] > 1) return false;
  }
  return !(starts & horizontal) && !(ends & horizontal);
}

std::string StrandsAlgebra::key(Idem h, const std::vector<Chord>& m) const {
  std::string s;
  s.reserve(1 + 2 * m.size());
  s.push_back(static_cast<char>(h));
  for (const auto& c : m) {
    s.push_back(static_cast<char>(c.start));
    s.push_back(static_cast<char>(c.end));
  }
  return s;
}

StrandsAlgebra::StrandsAlgebra(Pmc z) : z_(std::move(z)) {
  const int n = z_.size();
  const int np = z_.num_pairs();
  std::vector<Chord> chords = all_chords(z_);

  std::vector<std::vector<Chord>> movings;
  std::vector<Chord> cur;
  std::vector<int> mult(n + 1, 0);
  Idem starts = 0, ends = 0;
  auto rec = [&](auto&& self, size_t from) -> void {
    movings.push_back(cur);
    for (size_t i = from; i < chords.size(); ++i) {
      const Chord c = chords[i];
      Idem s = Idem(1) << z_.pair_of(c.start), e = Idem(1) << z_.pair_of(c.end);
      if ((starts & s) || (ends & e)) continue;
      bool ok = true;
      for (int r = c.start; r < c.end && ok; ++r) ok = mult[r] == 0;
      if (!ok) continue;
      for (int r = c.start; r < c.end; ++r) mult[r] = 1;
      starts |= s;
      ends |= e;
      cur.push_back(c);
      self(self, i + 1);
      cur.pop_back();
      starts &= ~s;
      ends &= ~e;
      for (int r = c.start; r < c.end; ++r) mult[r] = 0;
    }
  };
  rec(rec, 0);

  const Idem all = (Idem(1) << np) - 1;
  for (const auto& m : movings) {
    Idem used = 0;
    for (const auto& c : m) used |= (Idem(1) << z_.pair_of(c.start)) | (Idem(1) << z_.pair_of(c.end));
    const Idem free = all & ~used;
    for (Idem h = free;; h = (h - 1) & free) {
      gens_.push_back({h, m});
      if (h == 0) break;
    }
  }
  std::sort(gens_.begin(), gens_.end(), [&](const Strands& a, const Strands& b) {
    Idem la = a.horizontal, lb = b.horizontal;
    for (auto& c : a.moving) la |= Idem(1) << z_.pair_of(c.start);
    for (auto& c : b.moving) lb |= Idem(1) << z_.pair_of(c.start);
    if (popcount(la) != popcount(lb)) return popcount(la) < popcount(lb);
    if (a.moving.size() != b.moving.size()) return a.moving.size() < b.moving.size();
    if (a.moving != b.moving) return a.moving < b.moving;
    return a.horizontal < b.horizontal;
  });

  const int N = size();
  left_.resize(N);
  right_.resize(N);
  mult_.assign(N, std::vector<std::int8_t>(n + 1, 0));
  by_left_.assign(all + 1, {});
  by_right_.assign(all + 1, {});
  idem_id_.assign(all + 1, -1);
  for (int x = 0; x < N; ++x) {
    const auto& g = gens_[x];
    index_.emplace(key(g.horizontal, g.moving), x);
    Idem l = g.horizontal, r = g.horizontal;
    for (const auto& c : g.moving) {
      l |= Idem(1) << z_.pair_of(c.start);
      r |= Idem(1) << z_.pair_of(c.end);
      for (int q = c.start; q < c.end; ++q) mult_[x][q] = 1;
    }
    left_[x] = l;
    right_[x] = r;
    by_left_[l].push_back(x);
    by_right_[r].push_back(x);
    if (g.moving.empty()) idem_id_[g.horizontal] = x;
  }

  d_.assign(N, {});
  for (int x = 0; x < N; ++x) {
    const auto& g = gens_[x];
    for (int P = 0; P < np; ++P) {
      if (!(g.horizontal >> P & 1)) continue;
      for (int q : {z_.pair(P).first, z_.pair(P).second}) {
        for (size_t i = 0; i < g.moving.size(); ++i) {
          const Chord c = g.moving[i];
          if (!(c.start < q && q < c.end)) continue;
          std::vector<Chord> m = g.moving;
          m[i] = {c.start, q};
          m.push_back({q, c.end});
          int y = find(g.horizontal & ~(Idem(1) << P), m);
          if (y >= 0) toggle(d_[x], y);
        }
      }
    }
  }

  rows_.assign(N, {});
  row_once_ = std::make_unique<std::once_flag[]>(N);
}

int StrandsAlgebra::find(Idem horizontal, std::vector<Chord> moving) const {
  std::sort(moving.begin(), moving.end());
  auto it = index_.find(key(horizontal, moving));
  return it == index_.end() ? -1 : it->second;
}

int StrandsAlgebra::compute_mul(int a, int b) const {
  if (right_[a] != left_[b]) return kZero;
  const auto& A = gens_[a];
  const auto& B = gens_[b];
  for (int r = 1; r < z_.size(); ++r)
    if (mult_[a][r] + mult_[b][r] > 1) return kZero;
  std::vector<Chord> m;
  m.reserve(A.moving.size() + B.moving.size());
  Idem joined = 0;
  for (const auto& c : A.moving) {
    const int P = z_.pair_of(c.end);
    const Chord* next = nullptr;
    for (const auto& c2 : B.moving)
      if (z_.pair_of(c2.start) == P) next = &c2;
    if (!next) {
      m.push_back(c);
      continue;
    }
    if (next->start != c.end) return kZero;
    m.push_back({c.start, next->end});
    joined |= Idem(1) << P;
  }
  for (const auto& c2 : B.moving)
    if (!(joined >> z_.pair_of(c2.start) & 1)) m.push_back(c2);
  return find(A.horizontal & B.horizontal, std::move(m));
}

int StrandsAlgebra::mul(int a, int b) const {
  if (a < 0 || b < 0) return kZero;
  std::call_once(row_once_[a], [&] {
    auto& row = rows_[a];
    for (int y : by_left_[right_[a]]) {
      int p = compute_mul(a, y);
      if (p >= 0) row.emplace_back(y, p);
    }
  });
  const auto& row = rows_[a];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(b, -1));
  return (it != row.end() && it->first == b) ? it->second : kZero;
}

Element StrandsAlgebra::mul(const Element& a, const Element& b) const {
  Element out;
  for (int x : a)
    for (int y : b) {
      int p = mul(x, y);
      if (p >= 0) toggle(out, p);
    }
  return out;
}

Element StrandsAlgebra::d(const Element& a) const {
  Element out;
  for (int x : a)
    for (int y : d_[x]) toggle(out, y);
  return out;
}

std::vector<int> StrandsAlgebra::basis(int weight) const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (this->weight(x) == weight) out.push_back(x);
  return out;
}

std::vector<Idem> StrandsAlgebra::idempotents(int weight) const {
  std::vector<Idem> out;
  const Idem all = (Idem(1) << z_.num_pairs()) - 1;
  for (Idem i = 0; i <= all; ++i)
    if (popcount(i) == weight) out.push_back(i);
  return out;
}

int StrandsAlgebra::with_left_moving(Idem i, const std::vector<Chord>& moving) const {
  Idem starts = 0;
  for (const auto& c : moving) starts |= Idem(1) << z_.pair_of(c.start);
  if ((starts & i) != starts) return kZero;
  return find(i & ~starts, moving);
}

std::vector<int> StrandsAlgebra::set_element(const std::vector<Chord>& chords, int weight) const {
  std::vector<int> mult(z_.size() + 1, 0);
  for (const auto& c : chords)
    for (int r = c.start; r < c.end; ++r)
      if (++mult[r] > 1) throw ValidationError("set_element: chords overlap");
  std::vector<int> out;
  for (Idem i : idempotents(weight)) {
    int x = with_left_moving(i, chords);
    if (x >= 0) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> StrandsAlgebra::chord_element(Chord c, int weight) const {
  return set_element({c}, weight);
}

Idem StrandsAlgebra::reflect_idem(Idem i) const {
  Idem out = 0;
  for (int P = 0; P < z_.num_pairs(); ++P)
    if (i >> P & 1) out |= Idem(1) << z_.reflect_pair(P);
  return out;
}

int StrandsAlgebra::reflect(int x) const {
  const auto& g = gens_[x];
  std::vector<Chord> m;
  for (const auto& c : g.moving) m.push_back({z_.reflect(c.end), z_.reflect(c.start)});
  return find(reflect_idem(g.horizontal), m);
}

Idem StrandsAlgebra::pairs_of_points(const std::vector<int>& pts) const {
  Idem out = 0;
  for (int p : pts) out |= Idem(1) << z_.pair_of(p);
  return out;
}

std::string StrandsAlgebra::str(int x) const {
  const auto& g = gens_[x];
  std::ostringstream os;
  os << "H{";
  bool first = true;
  for (int P = 0; P < z_.num_pairs(); ++P) {
    if (!(g.horizontal >> P & 1)) continue;
    if (!first) os << ',';
    first = false;
    os << z_.pair(P).first << '-' << z_.pair(P).second;
  }
  os << "}|M{";
  for (size_t i = 0; i < g.moving.size(); ++i) {
    if (i) os << ',';
    os << '[' << g.moving[i].start << ',' << g.moving[i].end << ']';
  }
  os << '}';
  return os.str();
}

std::string StrandsAlgebra::str(const Element& e) const {
  if (e.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += " + ";
    s += str(e[i]);
  }
  return s;
}

std::string StrandsAlgebra::torus_name(int x, const std::string& letter) const {
  if (z_.genus() != 1 || weight(x) != 1) return str(x);
  const auto& g = gens_[x];
  if (g.moving.empty()) return g.horizontal == (Idem(1) << z_.pair_of(1)) ? "iota0" : "iota1";
  std::string s = letter;
  for (int p = g.moving[0].start; p < g.moving[0].end; ++p) s += std::to_string(p);
  return s;
}

AlgebraTable algebra_table(const StrandsAlgebra& A, int weight) {
  AlgebraTable t;
  t.gens = A.basis(weight);
  auto key = [&](int x) {
    int len = 0, start = 0;
    for (const auto& c : A.gen(x).moving) len += c.end - c.start;
    if (!A.gen(x).moving.empty()) start = A.gen(x).moving.front().start;
    return std::tuple(len, start, x);
  };
  std::sort(t.gens.begin(), t.gens.end(), [&](int a, int b) { return key(a) < key(b); });
  std::unordered_map<int, int> pos;
  for (std::size_t i = 0; i < t.gens.size(); ++i) {
    pos[t.gens[i]] = static_cast<int>(i);
    t.names.push_back(A.torus_name(t.gens[i]));
  }
  for (std::size_t i = 0; i < t.gens.size(); ++i) {
    for (std::size_t j = 0; j < t.gens.size(); ++j) {
      const int ab = A.mul(t.gens[i], t.gens[j]);
      if (ab != StrandsAlgebra::kZero) t.products.emplace_back(i, j, pos.at(ab));
    }
    if (!A.d(t.gens[i]).empty()) {
      std::vector<int> d;
      for (int y : A.d(t.gens[i])) d.push_back(pos.at(y));
      t.differentials.emplace_back(i, std::move(d));
    }
  }
  return t;
}

}  // namespace bfss
