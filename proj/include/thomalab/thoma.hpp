#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thomalab/permutation.hpp"
#include "thomalab/rational.hpp"

namespace thomalab {

/// Character parameters: descending positive rationals (a_i), (b_j) with
/// sum a + sum b <= 1 and remainder c = 1 - sum a - sum b.
struct ThomaParams {
  std::vector<Rat> a;
  std::vector<Rat> b;
  Rat c;

  static ThomaParams make(std::vector<Rat> a, std::vector<Rat> b);
  static ThomaParams regular() { return make({}, {}); }

  bool operator==(const ThomaParams&) const = default;
};

/// Atomic probability measure on [-1,1]; the candidate spectrum of the
/// limit 2-cycle. Atoms keyed by their (nonzero) location.
struct ThomaMeasure {
  std::map<Rat, Rat> atoms;  // t != 0 -> mass
  Rat zero_mass = 0;

  Rat total_mass() const;
  bool operator==(const ThomaMeasure&) const = default;
};

// chi(p) = prod_{k>=2} (sum a_i^k + (-1)^{k-1} sum b_j^k)^{m_k(p)},
// with 0^0 = 1. Depends only on the cycle type.
Rat character(const ThomaParams& params, const Permutation& p);
Rat character_of_type(const ThomaParams& params, const CycleType& type);

// Groups equal parameter values: atom at +t collects the a_i equal to t,
// atom at -t the b_j equal to t; c becomes the mass at zero.
ThomaMeasure spectral_measure(const ThomaParams& params);

// k-th moment; moment(m, 0) = 1 for a probability measure.
Rat moment(const ThomaMeasure& m, int k);

// Multiplicity nu(t) = mass / |t| of an atom (0 if t is not an atom).
Rat atom_multiplicity(const ThomaMeasure& m, const Rat& t);

/// Normal form of the conditional expectation onto the fixed points of the
/// shifts above level n applied to a represented permutation: a derivative
/// permutation times central k-cycle scalars times per-slot limit 2-cycle
/// powers (right-handed order).
struct EnNormalForm {
  Permutation derivative;            // support within {0..n}
  std::map<int, int> c_exponents;    // k -> count of orbit blocks with |V| = k, min V > n
  std::map<int, int> a_factors;      // slot k <= n -> positive excursion exponent

  bool operator==(const EnNormalForm&) const = default;
};

EnNormalForm symbolic_En(const Permutation& p, int n);

// Evaluates the normal form against the spectral measure of params:
// C_k -> moment k-1, and the derivative/A-part contracted orbit by orbit.
// Equals the trace of the represented permutation.
Rat evaluate_En_trace(const ThomaParams& params, const EnNormalForm& form, int n);

enum class MarkovCase { NotMarkov, Regular, UniformA, UniformB };

struct MarkovWitness {
  bool is_markov = false;
  MarkovCase which = MarkovCase::NotMarkov;
  Rat t = 0;  // trace of a represented transposition: 0, 1/M or -1/N
};

// True iff the parameters are regular (all zero) or uniform 1/M on one
// side with nothing else.
MarkovWitness is_markov_params(const ThomaParams& params);

struct ThomaMeasureReport {
  bool ok = true;
  std::string detail;  // first violation, empty when ok

  struct AtomCheck {
    Rat t;
    Rat mass;
    Rat multiplicity;        // mass/|t|
    bool integer_ratio;      // multiplicity in N
    bool discreteness_bound; // mass >= t^2
  };
  std::vector<AtomCheck> atom_checks;
};

// Verifies integer nu(t) for every atom and the bound mass(t) >= t^2.
ThomaMeasureReport check_thoma_measure(const ThomaMeasure& m);

}  // namespace thomalab
