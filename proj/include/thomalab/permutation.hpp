#pragma once

#include <compare>
#include <functional>
#include <map>
#include <vector>

#include "thomalab/rational.hpp"

namespace thomalab {

/// Finite-support bijection of the nonnegative integers. Only non-fixed
/// points are stored; everything else maps to itself.
class Permutation {
 public:
  Permutation() = default;

  // mapping gives point -> image for every moved point (fixed points allowed
  // in the input, they are stripped). Must be a bijection on its support.
  static Permutation from_mapping(const std::map<int, int>& mapping);
  static Permutation transposition(int a, int b);
  static Permutation from_cycles(const std::vector<std::vector<int>>& cycles);

  int operator()(int k) const;
  int preimage(int k) const;
  Permutation inverse() const;

  bool is_identity() const { return map_.empty(); }
  std::vector<int> support() const;
  // Largest moved point, -1 for the identity.
  int max_support() const;

  const std::map<int, int>& mapping() const { return map_; }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::map<int, int> map_;
};

// Products act left to right: (p q)(k) = q(p(k)), so in a word the leftmost
// factor moves points first. This is the convention under which a k-cycle
// (n1,...,nk) equals the star word (n1 n2 ... nk n1).
Permutation operator*(const Permutation& p, const Permutation& q);

/// Cycle of length >= 2 on distinct points, stored rotated so that the
/// minimal point comes first (which puts 0 first whenever 0 is moved).
class Cycle {
 public:
  explicit Cycle(std::vector<int> points);

  const std::vector<int>& points() const { return points_; }
  int length() const { return static_cast<int>(points_.size()); }
  int min_point() const { return points_.front(); }
  Permutation to_permutation() const;

  bool operator==(const Cycle&) const = default;
  auto operator<=>(const Cycle&) const = default;

 private:
  std::vector<int> points_;
};

// k -> number of k-cycles, k >= 2; 1-cycles are omitted by convention.
using CycleType = std::map<int, int>;

enum class Alphabet { Coxeter, Star };

/// Word in Coxeter letters (letter i = transposition (i-1,i)) or star
/// letters (letter i = transposition (0,i)); letter 0 is the identity.
struct GeneratorWord {
  Alphabet alphabet = Alphabet::Star;
  std::vector<int> letters;

  bool operator==(const GeneratorWord&) const = default;
};

// The product of the letters, leftmost acting first.
Permutation eval_word(const GeneratorWord& w);

// Disjoint cycles of length >= 2, sorted by minimal point.
std::vector<Cycle> cycle_decompose(const Permutation& p);

CycleType cycle_type(const Permutation& p);

// (-1)^{sum_k (k-1) m_k}
int sgn(const Permutation& p);

// Star word (n1, n2, ..., nk, n1) realizing the cycle, with identity
// letters gamma_0 dropped. The cycle's canonical rotation already starts
// at 0 when 0 is moved.
GeneratorWord star_word_of_cycle(const Cycle& c);

// The shift endomorphism: shift_m(p) fixes everything below m and acts as
// the index shift above; shift_0 maps the transposition (i-1,i) to (i,i+1)
// and shift_m for m >= 1 maps (0,i) to (0,i) if i < m and (0,i+1) if i >= m.
Permutation shift_m(const Permutation& p, int m);

// The conjugated cycle (p(n1), ..., p(nk)), re-canonicalized.
Cycle conjugate_cycle(const Permutation& p, const Cycle& c);

// Orbit partition of {0..window-1} under <p>; orbits reaching outside the
// window are truncated to their intersection with it. Blocks are sorted by
// minimal element, points inside a block ascending.
std::vector<std::vector<int>> orbits(const Permutation& p, int window);

// Number of orbits of <p> on {0..window-1}, fixed points included.
int orbit_count(const Permutation& p, int window);

// Deletes all points > n from each nontrivial cycle (cyclic order kept);
// cycles left with fewer than two points disappear. n = -1 gives the
// identity.
Permutation n_derivative(const Permutation& p, int n);

// min{q >= 0 : p^{-(q+1)}(k) <= n} for k <= n, and 0 for k > n.
int excursion_length(const Permutation& p, int n, int k);

// Calls f on every permutation of {0..n-1}.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& f);

// Coefficients (index = power of x) of sum_{p in S_n} x^{orbit count of p
// on {0..n-1}}, by brute-force enumeration.
std::vector<Int> stirling_sum(int n, int enumeration_bound = 8);

// Coefficients of x (x+1) ... (x+n-1).
std::vector<Int> rising_factorial_coeffs(int n);

}  // namespace thomalab
