#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thomalab/errors.hpp"
#include "thomalab/tensor_model.hpp"

using namespace thomalab;

namespace {

Rat R(const std::string& s) { return rat_from_string(s); }

ThomaParams params_of(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<Rat> ra, rb;
  for (const auto& s : a) ra.push_back(R(s));
  for (const auto& s : b) rb.push_back(R(s));
  return ThomaParams::make(ra, rb);
}

Permutation k_cycle(int k) {
  std::vector<int> pts(k);
  for (int i = 0; i < k; ++i) pts[i] = i;
  return Permutation::from_cycles({pts});
}

ModelOperator star_gen(const ModelSpace& space, int i) {
  return represent(space, Permutation::transposition(0, i));
}

ModelOperator coxeter_gen(const ModelSpace& space, int i) {
  return represent(space, Permutation::transposition(i - 1, i));
}

Rat expected_cycle_trace(const ThomaParams& params, int k, int zero_labels) {
  Rat v = 0;
  for (const auto& ai : params.a) v += rat_pow(ai, k);
  Rat bs = 0;
  for (const auto& bj : params.b) bs += rat_pow(bj, k);
  v += (k % 2 == 0) ? -bs : bs;
  if (params.c > 0 && zero_labels > 0)
    v += zero_labels * rat_pow(params.c / zero_labels, k);
  return v;
}

}  // namespace

TEST_CASE("representation basics") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/4"});
  const ModelSpace space = ModelSpace::from_params(params, 5);

  CHECK(represent(space, Permutation()) == ModelOperator::identity());
  CHECK_THROWS_AS(represent(space, Permutation::transposition(0, 7)), ContractError);

  // Star generators are involutions.
  const ModelOperator v1 = star_gen(space, 1);
  CHECK(multiply(space, v1, v1) == ModelOperator::identity());

  // Homomorphism at the symbolic level.
  const Permutation p = Permutation::from_cycles({{0, 2, 3}});
  const Permutation q = Permutation::transposition(1, 3);
  CHECK(multiply(space, represent(space, p), represent(space, q)) ==
        represent(space, p * q));
}

TEST_CASE("trace of represented cycles gives the character sums") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/8"});
  for (int ell : {1, 2, 4}) {
    const ModelSpace space = ModelSpace::from_params(params, 6, ell);
    CHECK(trace(space, ModelOperator::identity()) == 1);
    for (int k = 2; k <= 5; ++k)
      CHECK(trace(space, represent(space, k_cycle(k))) ==
            expected_cycle_trace(params, k, ell));
  }
  // Limit mode drops the zero-sector contribution exactly.
  const ModelSpace lim = ModelSpace::from_params_limit(params, 6);
  for (int k = 2; k <= 5; ++k)
    CHECK(trace(lim, represent(lim, k_cycle(k))) == character(params, k_cycle(k)));

  // The regular parameters in limit mode: trace vanishes off the identity.
  const ModelSpace reg = ModelSpace::from_params_limit(ThomaParams::regular(), 6);
  CHECK(trace(reg, ModelOperator::identity()) == 1);
  for (int k = 2; k <= 5; ++k) CHECK(trace(reg, represent(reg, k_cycle(k))) == 0);
}

TEST_CASE("traciality on random monomial words") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/4"});
  const ModelSpace space = ModelSpace::from_params(params, 5);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    ModelOperator x = ModelOperator::identity();
    ModelOperator y = ModelOperator::identity();
    for (int i = 0; i < 3; ++i) {
      const int a = static_cast<int>(rng() % 5), b = static_cast<int>(rng() % 5);
      if (a != b) x = multiply(space, x, represent(space, Permutation::transposition(a, b)));
      x = multiply(space, x, limit_cycle_A(space, static_cast<int>(rng() % 5)));
      const int c = static_cast<int>(rng() % 5), d = static_cast<int>(rng() % 5);
      if (c != d) y = multiply(space, y, represent(space, Permutation::transposition(c, d)));
    }
    CHECK(trace(space, multiply(space, x, y)) == trace(space, multiply(space, y, x)));
  }
}

TEST_CASE("thoma multiplicativity on S6: model trace equals the character") {
  for (const auto& params :
       {params_of({"1/2", "1/4"}, {"1/4"}), params_of({"1/4", "1/4"}, {"1/2"})}) {
    const ModelSpace space = ModelSpace::from_params(params, 6);
    for_each_permutation(6, [&](const Permutation& p) {
      CHECK(trace(space, represent(space, p)) == character(params, p));
    });
  }
}

TEST_CASE("limit 2-cycles") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/4"});
  const ModelSpace space = ModelSpace::from_params(params, 6);
  const ThomaMeasure mu = spectral_measure(params);

  // Moments of the diagonal against the state.
  ModelOperator power = ModelOperator::identity();
  for (int k = 1; k <= 6; ++k) {
    power = multiply(space, power, limit_cycle_A(space, 0));
    CHECK(trace(space, power) == moment(mu, k));
  }

  // A_i = v_i A_0 v_i.
  for (int i = 1; i <= 4; ++i) {
    const ModelOperator vi = star_gen(space, i);
    CHECK(multiply(space, vi, multiply(space, limit_cycle_A(space, 0), vi)) ==
          limit_cycle_A(space, i));
  }

  // Conjugation relabels the slot: with the left-to-right product
  // convention, u A_i u^{-1} with u = represent(s) carries slot i to
  // s^{-1}(i) (equivalently represent(s^{-1}) A_i represent(s) = A_{s(i)}).
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int a = static_cast<int>(rng() % 6), b = static_cast<int>(rng() % 6);
    const int i = static_cast<int>(rng() % 6);
    if (a == b) continue;
    const Permutation s =
        Permutation::transposition(a, b) * Permutation::transposition(b, (b + 1) % 6);
    const ModelOperator u = represent(space, s);
    const ModelOperator u_inv = represent(space, s.inverse());
    CHECK(multiply(space, u_inv, multiply(space, limit_cycle_A(space, i), u)) ==
          limit_cycle_A(space, s(i)));
  }

  // Commutation relations.
  const ModelOperator a0 = limit_cycle_A(space, 0);
  const ModelOperator a2 = limit_cycle_A(space, 2);
  CHECK(multiply(space, a0, a2) == multiply(space, a2, a0));
  const ModelOperator v3 = star_gen(space, 3);
  CHECK(multiply(space, a2, v3) == multiply(space, v3, a2));
}

TEST_CASE("conditional expectation basics") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/4"});
  const ModelSpace space = ModelSpace::from_params(params, 6);

  // Operators inside the window are fixed.
  const Permutation p = Permutation::from_cycles({{0, 1, 2}});
  CHECK(conditional_E(space, represent(space, p), 2) == represent(space, p));

  // E_0 of a star generator is the limit 2-cycle (c = 0 space).
  for (int i = 1; i <= 5; ++i)
    CHECK(conditional_E(space, star_gen(space, i), 0) == limit_cycle_A(space, 0));

  // Idempotence and trace preservation on random monomials.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    ModelOperator x = ModelOperator::identity();
    for (int i = 0; i < 3; ++i) {
      const int a = static_cast<int>(rng() % 6), b = static_cast<int>(rng() % 6);
      if (a != b) x = multiply(space, x, represent(space, Permutation::transposition(a, b)));
      if (rng() % 2) x = multiply(space, x, limit_cycle_A(space, static_cast<int>(rng() % 6)));
    }
    const int n = static_cast<int>(rng() % 7) - 1;
    const ModelOperator ex = conditional_E(space, x, n);
    CHECK(ex.max_slot() <= n);
    CHECK(conditional_E(space, ex, n) == ex);
    CHECK(trace(space, ex) == trace(space, x));
    // Module property over operators inside the window.
    const Permutation inside =
        n >= 1 ? Permutation::transposition(0, n) : Permutation();
    const ModelOperator m = represent(space, inside);
    CHECK(conditional_E(space, multiply(space, m, multiply(space, x, m)), n) ==
          multiply(space, m, multiply(space, ex, m)));
  }
}

TEST_CASE("generalized multiplicativity on S4 windows, all levels") {
  for (const auto& params :
       {params_of({"1/2", "1/4"}, {"1/4"}), params_of({"1/4", "1/4"}, {"1/2"})}) {
    const ModelSpace space = ModelSpace::from_params(params, 4);
    for_each_permutation(4, [&](const Permutation& p) {
      for (int n = -1; n <= 3; ++n) {
        const ModelOperator lhs = conditional_E(space, represent(space, p), n);
        const ModelOperator rhs = realize_En(space, params, symbolic_En(p, n));
        CHECK(lhs == rhs);
      }
    });
  }
}

TEST_CASE("generalized multiplicativity in limit mode (c > 0)") {
  const ThomaParams params = params_of({"1/2"}, {"1/4"});  // c = 1/4
  const ModelSpace space = ModelSpace::from_params_limit(params, 4);
  for_each_permutation(4, [&](const Permutation& p) {
    for (int n = -1; n <= 3; ++n)
      CHECK(conditional_E(space, represent(space, p), n) ==
            realize_En(space, params, symbolic_En(p, n)));
  });
}

TEST_CASE("cesaro approximants of the limit 2-cycle") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/4"});
  const ModelSpace space = ModelSpace::from_params(params, 18);
  const ThomaMeasure mu = spectral_measure(params);

  CHECK(cesaro_A(space, 0, 1) == represent(space, Permutation::transposition(0, 1)));

  const ModelOperator a0 = limit_cycle_A(space, 0);
  Rat prev;
  bool have_prev = false;
  for (int N : {1, 2, 4, 8, 16}) {
    const ModelOperator diff = cesaro_A(space, 0, N) - a0;
    const Rat resid = l2_norm_squared(space, diff);
    // Exact residual: (1 - second moment)/N.
    CHECK(resid == (Rat(1) - moment(mu, 2)) / N);
    CHECK(trace(space, cesaro_A(space, 0, N)) == trace(space, a0));
    if (have_prev) CHECK(resid < prev);
    prev = resid;
    have_prev = true;
  }
}

TEST_CASE("shift endomorphism on generators") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/4"});
  const ModelSpace space = ModelSpace::from_params(params, 8);

  for (int i = 1; i <= 5; ++i)
    CHECK(shift_endo(space, coxeter_gen(space, i), 0) == coxeter_gen(space, i + 1));
  for (int i = 1; i <= 5; ++i)
    CHECK(shift_endo(space, star_gen(space, i), 1) == star_gen(space, i + 1));
  CHECK(shift_endo(space, star_gen(space, 1), 2) == star_gen(space, 1));
  for (int n = 1; n <= 3; ++n)
    for (int i = 1; i <= 4; ++i)
      CHECK(shift_endo(space, star_gen(space, i), n) ==
            star_gen(space, i < n ? i : i + 1));

  // Endomorphism property on products, and A_i -> A_{i+1} under the
  // 0-shift.
  CHECK(shift_endo(space, limit_cycle_A(space, 2), 0) == limit_cycle_A(space, 3));
  const ModelOperator x = multiply(space, star_gen(space, 1), coxeter_gen(space, 2));
  CHECK(shift_endo(space, x, 0) ==
        multiply(space, shift_endo(space, star_gen(space, 1), 0),
                 shift_endo(space, coxeter_gen(space, 2), 0)));

  CHECK_THROWS_AS(shift_endo(space, star_gen(space, 7), 0), ResourceCapError);
}

TEST_CASE("transition operator") {
  const ThomaParams params = params_of({"1/3", "1/3", "1/3"}, {});
  const ModelSpace space = ModelSpace::from_params(params, 4);

  CHECK(transition_R0(space, ModelOperator::identity()) == ModelOperator::identity());
  const ModelOperator u1 = coxeter_gen(space, 1);
  const ModelOperator a0 = limit_cycle_A(space, 0);
  const ModelOperator a1 = limit_cycle_A(space, 1);
  CHECK(transition_R0(space, u1) == a1);
  CHECK(transition_R0(space, a0) == a1);

  // R0(A_0^n u_eps) = A_1^{n+eps}
  for (int n = 0; n <= 3; ++n) {
    ModelOperator an = ModelOperator::identity();
    for (int i = 0; i < n; ++i) an = multiply(space, an, a0);
    ModelOperator a1_pow_n = ModelOperator::identity();
    for (int i = 0; i < n; ++i) a1_pow_n = multiply(space, a1_pow_n, a1);
    CHECK(transition_R0(space, an) == a1_pow_n);
    CHECK(transition_R0(space, multiply(space, an, u1)) == multiply(space, a1_pow_n, a1));
  }

  CHECK_THROWS_AS(transition_R0(space, coxeter_gen(space, 3)), ContractError);
}

TEST_CASE("antisymmetrizer identity") {
  const ThomaParams two_atoms = params_of({"1/2", "1/2"}, {});
  const ModelSpace space2 = ModelSpace::from_params(two_atoms, 6);
  for (int n = 1; n <= 5; ++n) {
    const auto [lhs, rhs] = antisymmetrizer_check(space2, two_atoms, R("1/2"), n);
    CHECK(lhs == rhs);
    if (n > 2) CHECK(lhs == 0);  // nu = 2 terminates the falling factorial
  }
  {
    // n = 2, t = 1/2, nu = 2: both sides equal (|t|^2/2!) * 2 * 1 = 1/4.
    // Direct enumeration: chi is the full projection here, so the value is
    // (1 - trace(flip))/2 = (1 - 1/2)/2.
    const auto [lhs, rhs] = antisymmetrizer_check(space2, two_atoms, R("1/2"), 2);
    CHECK(lhs == R("1/4"));
    CHECK(rhs == R("1/4"));
    const auto [l1, r1] = antisymmetrizer_check(space2, two_atoms, R("1/2"), 1);
    CHECK(l1 == 1);  // p^{(1)} is the identity and chi has full mass
    CHECK(r1 == 1);
  }

  // Negative-side atoms use the symmetrizer.
  const ThomaParams bside = params_of({}, {"1/3", "1/3", "1/3"});
  const ModelSpace space3 = ModelSpace::from_params(bside, 5);
  for (int n = 1; n <= 4; ++n) {
    const auto [lhs, rhs] = antisymmetrizer_check(space3, bside, R("-1/3"), n);
    CHECK(lhs == rhs);
    if (n > 3) CHECK(lhs == 0);
  }

  // A rational that is not an atom vanishes on both sides.
  const auto [lz, rz] = antisymmetrizer_check(space2, two_atoms, R("1/3"), 2);
  CHECK(lz == 0);
  CHECK(rz == 0);

  CHECK_THROWS_AS(antisymmetrizer_check(space2, two_atoms, R("0"), 2), ContractError);
  CHECK_THROWS_AS(antisymmetrizer_check(space2, two_atoms, R("1/2"), 9), ResourceCapError);
}

TEST_CASE("trace factorization with polynomial diagonal insertions") {
  // trace(represent(s) * prod f_i(A_i)) factorizes over the orbits of s,
  // each orbit integrating t^{|V|-1} prod f_j(t) against the measure.
  std::mt19937_64 rng(37);
  for (const auto& params :
       {params_of({"1/2", "1/4"}, {"1/4"}), params_of({"1/3"}, {"1/3"})}) {
    const ModelSpace space = ModelSpace::from_params_limit(params, 5);
    const ThomaMeasure mu = spectral_measure(params);
    for (int trial = 0; trial < 80; ++trial) {
      // Random permutation of {0..4} and random polynomials of degree <= 3,
      // most of them trivial.
      std::vector<int> letters;
      for (int i = 0; i < 4; ++i) letters.push_back(static_cast<int>(rng() % 5));
      Permutation s;
      for (int l : letters)
        if (l != 0) s = s * Permutation::transposition(0, l);
      std::vector<std::vector<Rat>> polys(5, {Rat(1)});  // constant one
      for (int i = 0; i < 5; ++i) {
        if (rng() % 2) continue;
        std::vector<Rat> coeffs;
        const int deg = static_cast<int>(rng() % 4);
        for (int d = 0; d <= deg; ++d)
          coeffs.push_back(Rat(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3)));
        polys[i] = std::move(coeffs);
      }
      auto eval_poly = [](const std::vector<Rat>& coeffs, const Rat& t) {
        Rat v = 0;
        for (std::size_t d = coeffs.size(); d-- > 0;) v = v * t + coeffs[d];
        return v;
      };

      ModelOperator x = represent(space, s);
      for (int i = 0; i < 5; ++i) {
        std::vector<Rat> values(space.label_count());
        for (int l = 0; l < space.label_count(); ++l)
          values[l] = eval_poly(polys[i], space.cycle_eigenvalue(l));
        x = multiply(space, x, ModelOperator::monomial(1, Permutation(), {{i, values}}));
      }
      const Rat lhs = trace(space, x);

      Rat rhs = 1;
      for (const auto& block : orbits(s, 5)) {
        Rat integral = 0;
        for (const auto& [t, mass] : mu.atoms) {
          Rat term = mass * rat_pow(t, block.size() - 1);
          for (int j : block) term *= eval_poly(polys[j], t);
          integral += term;
        }
        if (block.size() == 1) {
          Rat zero_term = mu.zero_mass;
          for (int j : block) zero_term *= eval_poly(polys[j], 0);
          integral += zero_term;
        }
        rhs *= integral;
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("spectral estimates for every atom") {
  for (const auto& params :
       {params_of({"1/2", "1/4"}, {"1/4"}), params_of({"1/4", "1/4"}, {"1/2"}),
        params_of({"1/3", "1/3", "1/3"}, {})}) {
    const ModelSpace space = ModelSpace::from_params(params, 3);
    const ThomaMeasure mu = spectral_measure(params);
    const ModelOperator u = represent(space, Permutation::transposition(0, 1));
    for (const auto& [t, mass] : mu.atoms) {
      const ModelOperator chi = spectral_indicator(space, 0, t);
      const Rat mixed = trace(space, multiply(space, chi, u));
      CHECK(rat_abs(t) * mass <= rat_abs(mixed));          // lower estimate
      CHECK(mixed * mixed <= mass * mass * mass);          // |tr|^2 <= mass^3
      CHECK(mass >= t * t);                                // discreteness bound
      CHECK(rat_is_natural(mass / rat_abs(t)));            // integer multiplicity
      CHECK(trace(space, chi) == mass);
    }
  }
}
