#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thomalab/errors.hpp"
#include "thomalab/thoma.hpp"

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

// PSD test by symmetric Gaussian elimination with diagonal pivoting, exact.
bool is_psd(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = step;
    for (std::size_t i = step; i < n; ++i)
      if (m[i][i] > m[pivot][pivot]) pivot = i;
    if (m[pivot][pivot] < 0) return false;
    if (m[pivot][pivot] == 0) {
      // Remaining block must vanish entirely.
      for (std::size_t i = step; i < n; ++i)
        for (std::size_t j = step; j < n; ++j)
          if (m[i][j] != 0) return false;
      return true;
    }
    std::swap(m[pivot], m[step]);
    for (auto& row : m) std::swap(row[pivot], row[step]);
    for (std::size_t i = step + 1; i < n; ++i) {
      if (m[i][step] == 0) continue;
      const Rat f = m[i][step] / m[step][step];
      for (std::size_t j = step; j < n; ++j) m[i][j] -= f * m[step][j];
    }
  }
  return true;
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS(params_of({"1/4", "1/2"}, {}), ContractError);  // not descending
  CHECK_THROWS_AS(params_of({"2/3"}, {"1/2"}), ContractError);    // sum > 1
  CHECK(params_of({"1/2"}, {"1/4"}).c == R("1/4"));
  CHECK(ThomaParams::regular().c == 1);
}

TEST_CASE("character values") {
  const ThomaParams uniform3 = params_of({"1/3", "1/3", "1/3"}, {});
  CHECK(character(uniform3, Permutation()) == 1);
  for (int k = 2; k <= 7; ++k)
    CHECK(character(uniform3, k_cycle(k)) == rat_pow(R("1/3"), k - 1));

  const ThomaParams regular = ThomaParams::regular();
  CHECK(character(regular, Permutation()) == 1);
  CHECK(character(regular, k_cycle(2)) == 0);
  CHECK(character(regular, Permutation::from_cycles({{0, 1}, {2, 3, 4}})) == 0);

  // Sign alternation from the b-side.
  const ThomaParams bside = params_of({}, {"1/2", "1/2"});
  CHECK(character(bside, k_cycle(2)) == R("-1/2"));
  CHECK(character(bside, k_cycle(3)) == R("1/4"));

  // Multiplicative over disjoint cycles.
  const ThomaParams mixed = params_of({"1/2", "1/4"}, {"1/8"});
  const Permutation two_and_three = Permutation::from_cycles({{0, 1}, {2, 3, 4}});
  CHECK(character(mixed, two_and_three) ==
        character(mixed, k_cycle(2)) * character(mixed, k_cycle(3)));
}

TEST_CASE("character is a class function, exhaustive on S6") {
  const ThomaParams mixed = params_of({"1/2", "1/4"}, {"1/4"});
  std::vector<Permutation> s6;
  for_each_permutation(6, [&](const Permutation& p) { s6.push_back(p); });
  std::map<CycleType, Rat> by_type;
  for (const auto& p : s6) {
    const auto t = cycle_type(p);
    if (!by_type.contains(t)) by_type.emplace(t, character(mixed, p));
  }
  for (const auto& q : s6)
    for (const auto& p : s6) {
      const Permutation conj = q.inverse() * p * q;
      CHECK(character(mixed, conj) == by_type.at(cycle_type(p)));
    }
}

TEST_CASE("gram matrix over S4 is positive semidefinite") {
  std::vector<Permutation> s4;
  for_each_permutation(4, [&](const Permutation& p) { s4.push_back(p); });
  for (const auto& params :
       {params_of({"1/2", "1/4"}, {"1/4"}), params_of({"1/3", "1/3", "1/3"}, {}),
        ThomaParams::regular(), params_of({"1/2"}, {"1/3"})}) {
    std::vector<std::vector<Rat>> gram(s4.size(), std::vector<Rat>(s4.size()));
    for (std::size_t i = 0; i < s4.size(); ++i)
      for (std::size_t j = 0; j < s4.size(); ++j)
        gram[i][j] = character(params, s4[i].inverse() * s4[j]);
    CHECK(is_psd(gram));
  }
  // Sanity: the checker does reject an indefinite matrix.
  CHECK_FALSE(is_psd({{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}));
}

TEST_CASE("spectral measure") {
  const ThomaMeasure m1 = spectral_measure(params_of({"1/2", "1/3"}, {"1/6"}));
  CHECK(m1.atoms == std::map<Rat, Rat>{{R("-1/6"), R("1/6")}, {R("1/3"), R("1/3")}, {R("1/2"), R("1/2")}});
  CHECK(m1.zero_mass == 0);
  CHECK(atom_multiplicity(m1, R("1/2")) == 1);

  const ThomaMeasure m2 = spectral_measure(params_of({"1/4", "1/4"}, {}));
  CHECK(m2.atoms == std::map<Rat, Rat>{{R("1/4"), R("1/2")}});
  CHECK(m2.zero_mass == R("1/2"));
  CHECK(atom_multiplicity(m2, R("1/4")) == 2);

  const ThomaMeasure m3 = spectral_measure(ThomaParams::regular());
  CHECK(m3.atoms.empty());
  CHECK(m3.zero_mass == 1);
  CHECK(m3.total_mass() == 1);
}

TEST_CASE("moments") {
  const ThomaMeasure m = spectral_measure(params_of({"1/2", "1/2"}, {}));
  CHECK(moment(m, 0) == 1);
  for (int k = 1; k <= 6; ++k) CHECK(moment(m, k) == rat_pow(R("1/2"), k));

  // moment(mu, k-1) equals the character of a k-cycle.
  for (const auto& params :
       {params_of({"1/2", "1/4"}, {"1/4"}), params_of({"2/3"}, {"1/4"}),
        params_of({}, {"1/3", "1/3", "1/3"}), ThomaParams::regular()}) {
    const ThomaMeasure mu = spectral_measure(params);
    for (int k = 2; k <= 8; ++k)
      CHECK(moment(mu, k - 1) == character(params, k_cycle(k)));
  }
}

TEST_CASE("symbolic normal form") {
  // Support inside the window: nothing to contract.
  const Permutation p = Permutation::from_cycles({{0, 2, 3}});
  const EnNormalForm f1 = symbolic_En(p, 3);
  CHECK(f1.derivative == p);
  CHECK(f1.c_exponents.empty());
  CHECK(f1.a_factors.empty());

  // Level -1: purely scalar, one C factor per cycle.
  const EnNormalForm f2 = symbolic_En(k_cycle(5), -1);
  CHECK(f2.derivative == Permutation());
  CHECK(f2.c_exponents == std::map<int, int>{{5, 1}});
  CHECK(f2.a_factors.empty());

  const EnNormalForm f3 =
      symbolic_En(Permutation::from_cycles({{0, 1}, {2, 3, 4}, {5, 6}}), -1);
  CHECK(f3.c_exponents == std::map<int, int>{{2, 2}, {3, 1}});

  // One point just above the window: a single limit 2-cycle factor at the
  // image of the boundary point.
  const Permutation q = Permutation::from_cycles({{0, 3, 1}});  // in S4, n = 2
  const EnNormalForm f4 = symbolic_En(q, 2);
  CHECK(f4.derivative == n_derivative(q, 2));
  CHECK(f4.c_exponents.empty());
  CHECK(f4.a_factors == std::map<int, int>{{q(3), 1}});

  // Worked example values.
  const Permutation w = Permutation::from_cycles({{1, 8, 7, 4, 10, 5}});
  const EnNormalForm f5 = symbolic_En(w, 6);
  CHECK(f5.derivative == Permutation::from_cycles({{1, 4, 5}}));
  CHECK(f5.c_exponents.empty());
  CHECK(f5.a_factors == std::map<int, int>{{4, 2}, {5, 1}});
}

TEST_CASE("normal form trace evaluation") {
  const ThomaParams params = params_of({"1/2", "1/4"}, {"1/4"});
  const ThomaMeasure mu = spectral_measure(params);

  CHECK(evaluate_En_trace(params, symbolic_En(Permutation(), -1), -1) == 1);
  for (int k = 2; k <= 6; ++k)
    CHECK(evaluate_En_trace(params, symbolic_En(k_cycle(k), -1), -1) == moment(mu, k - 1));

  const Permutation two_three = Permutation::from_cycles({{0, 1}, {2, 3, 4}});
  CHECK(evaluate_En_trace(params, symbolic_En(two_three, -1), -1) ==
        moment(mu, 1) * moment(mu, 2));

  // The contraction is trace-preserving: evaluating the level-n form always
  // returns the character, for every level.
  std::vector<Permutation> s5;
  for_each_permutation(5, [&](const Permutation& p) { s5.push_back(p); });
  for (const auto& p : s5)
    for (int n = -1; n <= 5; ++n)
      CHECK(evaluate_En_trace(params, symbolic_En(p, n), n) == character(params, p));

  CHECK_THROWS_AS(evaluate_En_trace(params, symbolic_En(k_cycle(4), 3), 1), ContractError);
}

TEST_CASE("normal form trace evaluation on S6 at the scalar level") {
  const ThomaParams params = params_of({"1/2"}, {"1/3"});
  for_each_permutation(6, [&](const Permutation& p) {
    CHECK(evaluate_En_trace(params, symbolic_En(p, -1), -1) == character(params, p));
  });
}

TEST_CASE("markov parameter detection") {
  const MarkovWitness w1 = is_markov_params(params_of({"1/3", "1/3", "1/3"}, {}));
  CHECK(w1.is_markov);
  CHECK(w1.which == MarkovCase::UniformA);
  CHECK(w1.t == R("1/3"));

  const MarkovWitness w2 = is_markov_params(params_of({"1/2", "1/4"}, {"1/4"}));
  CHECK_FALSE(w2.is_markov);

  const MarkovWitness w3 = is_markov_params(ThomaParams::regular());
  CHECK(w3.is_markov);
  CHECK(w3.which == MarkovCase::Regular);
  CHECK(w3.t == 0);

  const MarkovWitness w4 = is_markov_params(params_of({}, {"1/4", "1/4", "1/4", "1/4"}));
  CHECK(w4.is_markov);
  CHECK(w4.which == MarkovCase::UniformB);
  CHECK(w4.t == R("-1/4"));

  // Uniform values that do not exhaust the mass are not enough.
  CHECK_FALSE(is_markov_params(params_of({"1/4", "1/4"}, {})).is_markov);
}

TEST_CASE("thoma measure checks") {
  for (const auto& params :
       {params_of({"1/2", "1/4"}, {"1/4"}), params_of({"1/4", "1/4"}, {}),
        ThomaParams::regular()})
    CHECK(check_thoma_measure(spectral_measure(params)).ok);

  ThomaMeasure bad1;
  bad1.atoms[R("1/2")] = R("1/3");
  bad1.zero_mass = R("2/3");
  const auto r1 = check_thoma_measure(bad1);
  CHECK_FALSE(r1.ok);
  CHECK(r1.atom_checks.size() == 1);
  CHECK_FALSE(r1.atom_checks[0].integer_ratio);

  ThomaMeasure bad2;
  bad2.atoms[R("9/10")] = R("1/2");
  bad2.zero_mass = R("1/2");
  const auto r2 = check_thoma_measure(bad2);
  CHECK_FALSE(r2.ok);
  CHECK_FALSE(r2.atom_checks[0].discreteness_bound);
}
