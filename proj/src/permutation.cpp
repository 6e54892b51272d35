#include "thomalab/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "thomalab/errors.hpp"

namespace thomalab {

Permutation Permutation::from_mapping(const std::map<int, int>& mapping) {
  Permutation p;
  std::set<int> images;
  for (const auto& [k, v] : mapping) {
    if (k < 0 || v < 0) throw ContractError("negative point in permutation");
    if (k == v) continue;
    p.map_[k] = v;
    if (!images.insert(v).second) throw ContractError("mapping is not injective");
  }
  // Bijection on the support: every image must itself be a moved point.
  for (const auto& [k, v] : p.map_) {
    (void)k;
    if (!p.map_.contains(v)) throw ContractError("mapping is not a bijection on its support");
  }
  return p;
}

Permutation Permutation::transposition(int a, int b) {
  if (a == b) return {};
  return from_mapping({{a, b}, {b, a}});
}

Permutation Permutation::from_cycles(const std::vector<std::vector<int>>& cycles) {
  std::map<int, int> m;
  for (const auto& cyc : cycles) {
    if (cyc.size() < 2) continue;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const int from = cyc[i];
      const int to = cyc[(i + 1) % cyc.size()];
      if (m.contains(from)) throw ContractError("cycles are not disjoint");
      m[from] = to;
    }
  }
  return from_mapping(m);
}

int Permutation::operator()(int k) const {
  const auto it = map_.find(k);
  return it == map_.end() ? k : it->second;
}

int Permutation::preimage(int k) const {
  for (const auto& [from, to] : map_)
    if (to == k) return from;
  return k;
}

Permutation Permutation::inverse() const {
  Permutation q;
  for (const auto& [k, v] : map_) q.map_[v] = k;
  return q;
}

std::vector<int> Permutation::support() const {
  std::vector<int> s;
  s.reserve(map_.size());
  for (const auto& [k, v] : map_) {
    (void)v;
    s.push_back(k);
  }
  return s;
}

int Permutation::max_support() const { return map_.empty() ? -1 : map_.rbegin()->first; }

Permutation operator*(const Permutation& p, const Permutation& q) {
  std::map<int, int> m;
  for (const auto& [k, v] : p.mapping()) m[k] = q(v);
  for (const auto& [k, v] : q.mapping()) {
    (void)v;
    if (!p.mapping().contains(k)) m[k] = q(k);
  }
  return Permutation::from_mapping(m);
}

Cycle::Cycle(std::vector<int> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ContractError("cycle needs at least two points");
  std::set<int> seen;
  for (int x : points_) {
    if (x < 0) throw ContractError("negative point in cycle");
    if (!seen.insert(x).second) throw ContractError("repeated point in cycle");
  }
  const auto min_it = std::min_element(points_.begin(), points_.end());
  std::rotate(points_.begin(), min_it, points_.end());
}

Permutation Cycle::to_permutation() const { return Permutation::from_cycles({points_}); }

Permutation eval_word(const GeneratorWord& w) {
  Permutation acc;
  for (int letter : w.letters) {
    if (letter < 0) throw ContractError("negative generator index");
    if (letter == 0) continue;
    const Permutation gen = (w.alphabet == Alphabet::Coxeter)
                                ? Permutation::transposition(letter - 1, letter)
                                : Permutation::transposition(0, letter);
    acc = acc * gen;
  }
  return acc;
}

std::vector<Cycle> cycle_decompose(const Permutation& p) {
  std::vector<Cycle> out;
  std::set<int> done;
  for (const auto& [start, img] : p.mapping()) {
    (void)img;
    if (done.contains(start)) continue;
    std::vector<int> cyc;
    int x = start;
    do {
      cyc.push_back(x);
      done.insert(x);
      x = p(x);
    } while (x != start);
    out.emplace_back(std::move(cyc));
  }
  std::sort(out.begin(), out.end(),
            [](const Cycle& a, const Cycle& b) { return a.min_point() < b.min_point(); });
  return out;
}

CycleType cycle_type(const Permutation& p) {
  CycleType t;
  for (const auto& c : cycle_decompose(p)) ++t[c.length()];
  return t;
}

int sgn(const Permutation& p) {
  long flips = 0;
  for (const auto& [k, m] : cycle_type(p)) flips += static_cast<long>(k - 1) * m;
  return (flips % 2 == 0) ? 1 : -1;
}

GeneratorWord star_word_of_cycle(const Cycle& c) {
  GeneratorWord w{Alphabet::Star, {}};
  const auto& pts = c.points();
  for (int x : pts) w.letters.push_back(x);
  w.letters.push_back(pts.front());
  std::erase(w.letters, 0);
  return w;
}

namespace {

// shift_0: fixes 0 and maps k+1 -> p(k)+1; sends (i-1,i) to (i,i+1).
Permutation shift_once(const Permutation& p) {
  std::map<int, int> m;
  for (const auto& [k, v] : p.mapping()) m[k + 1] = v + 1;
  return Permutation::from_mapping(m);
}

}  // namespace

Permutation shift_m(const Permutation& p, int m) {
  if (m < 0) throw ContractError("shift index must be nonnegative");
  Permutation s = shift_once(p);
  if (m == 0) return s;
  // Conjugation by sigma_m sigma_{m-1} ... sigma_1.
  Permutation conj;
  for (int i = m; i >= 1; --i) conj = conj * Permutation::transposition(i - 1, i);
  return conj * s * conj.inverse();
}

Cycle conjugate_cycle(const Permutation& p, const Cycle& c) {
  std::vector<int> pts;
  pts.reserve(c.points().size());
  for (int x : c.points()) pts.push_back(p(x));
  return Cycle(std::move(pts));
}

std::vector<std::vector<int>> orbits(const Permutation& p, int window) {
  std::vector<std::vector<int>> out;
  std::set<int> done;
  for (int k = 0; k < window; ++k) {
    if (done.contains(k)) continue;
    std::set<int> block;
    int x = k;
    do {
      if (x < window) block.insert(x);
      x = p(x);
    } while (x != k);
    for (int b : block) done.insert(b);
    out.emplace_back(block.begin(), block.end());
  }
  return out;
}

int orbit_count(const Permutation& p, int window) {
  return static_cast<int>(orbits(p, window).size());
}

Permutation n_derivative(const Permutation& p, int n) {
  std::vector<std::vector<int>> kept;
  for (const auto& c : cycle_decompose(p)) {
    if (c.min_point() > n) continue;
    std::vector<int> pts;
    for (int x : c.points())
      if (x <= n) pts.push_back(x);
    if (pts.size() >= 2) kept.push_back(std::move(pts));
  }
  return Permutation::from_cycles(kept);
}

int excursion_length(const Permutation& p, int n, int k) {
  if (k > n || k < 0) return 0;
  const Permutation inv = p.inverse();
  int q = 0;
  int x = inv(k);
  while (x > n) {
    ++q;
    x = inv(x);
  }
  return q;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& f) {
  if (n <= 0) {
    f(Permutation());
    return;
  }
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  do {
    std::map<int, int> m;
    for (int i = 0; i < n; ++i) m[i] = img[i];
    f(Permutation::from_mapping(m));
  } while (std::next_permutation(img.begin(), img.end()));
}

std::vector<Int> stirling_sum(int n, int enumeration_bound) {
  if (n < 1) throw ContractError("stirling_sum needs n >= 1");
  if (n > enumeration_bound)
    throw ResourceCapError("stirling_sum: n exceeds enumeration bound");
  std::vector<Int> coeffs(n + 1, 0);
  for_each_permutation(n, [&](const Permutation& p) { coeffs[orbit_count(p, n)] += 1; });
  return coeffs;
}

std::vector<Int> rising_factorial_coeffs(int n) {
  std::vector<Int> poly{0, 1};  // x
  for (int j = 1; j < n; ++j) {
    std::vector<Int> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * j;
      next[i + 1] += poly[i];
    }
    poly = std::move(next);
  }
  if (n >= 1) poly.resize(n + 1, 0);
  return poly;
}

}  // namespace thomalab
