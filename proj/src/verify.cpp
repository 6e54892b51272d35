#include "thomalab/verify.hpp"

#include <chrono>
#include <map>
#include <random>
#include <set>

#include "thomalab/dense_oracle.hpp"
#include "thomalab/errors.hpp"
#include "thomalab/fixtures.hpp"
#include "thomalab/tensor_model.hpp"

namespace thomalab {

namespace {

ThomaParams make_params(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::vector<Rat> ra, rb;
  for (const auto& s : a) ra.push_back(rat_from_string(s));
  for (const auto& s : b) rb.push_back(rat_from_string(s));
  return ThomaParams::make(ra, rb);
}

std::string cycle_type_string(const CycleType& t) {
  if (t.empty()) return "id";
  std::string s;
  for (const auto& [k, mk] : t) {
    if (!s.empty()) s += " ";
    s += std::to_string(k) + "^" + std::to_string(mk);
  }
  return s;
}

std::string params_string(const ThomaParams& p) {
  std::string s = "a=(";
  for (std::size_t i = 0; i < p.a.size(); ++i)
    s += (i ? "," : "") + rat_to_string(p.a[i]);
  s += ") b=(";
  for (std::size_t i = 0; i < p.b.size(); ++i)
    s += (i ? "," : "") + rat_to_string(p.b[i]);
  s += ") c=" + rat_to_string(p.c);
  return s;
}

void add_record(VerificationReport& report, std::string label, std::string anchor,
                bool pass, std::string lhs, std::string rhs) {
  report.records.push_back(
      {std::move(label), std::move(anchor), pass, std::move(lhs), std::move(rhs)});
}

std::map<CycleType, std::vector<Permutation>> group_by_type(int degree) {
  std::map<CycleType, std::vector<Permutation>> groups;
  for_each_permutation(degree, [&](const Permutation& p) {
    groups[cycle_type(p)].push_back(p);
  });
  return groups;
}

std::string op_brief(const ModelOperator& x) {
  if (x.is_zero()) return "0";
  Rat value;
  if (x.is_scalar(&value)) return rat_to_string(value) + "*1";
  return std::to_string(x.terms().size()) + " terms";
}

// ---------------------------------------------------------------------------
// Suite: multiplicativity (Thoma formula agreement + c-part convergence)

VerificationReport suite_multiplicativity(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "multiplicativity";
  report.seed = config.seed;

  struct NamedParams {
    std::string name;
    ThomaParams params;
  };
  const std::vector<NamedParams> sets = {
      {"uniform-a", make_params({"1/3", "1/3", "1/3"}, {})},
      {"uniform-b", make_params({}, {"1/4", "1/4", "1/4", "1/4"})},
      {"mixed", make_params({"1/2", "1/4"}, {"1/4"})},
      {"single-a", make_params({"1"}, {})},
      {"regular", ThomaParams::regular()},
      {"two-atom", make_params({"1/4", "1/4"}, {"1/2"})},
  };
  const int degree = config.group_degree;
  const auto groups = group_by_type(degree);
  for (const auto& [name, params] : sets) {
    const ModelSpace space = params.c == 0
                                 ? ModelSpace::from_params(params, degree)
                                 : ModelSpace::from_params_limit(params, degree);
    for (const auto& [type, perms] : groups) {
      const Rat expected = character_of_type(params, type);
      bool all = true;
      Rat got = expected;
      for (const auto& p : perms) {
        const Rat t = trace(space, represent(space, p));
        if (t != expected) {
          all = false;
          got = t;
          break;
        }
      }
      add_record(report, name + "/" + cycle_type_string(type), "thoma-formula", all,
                 rat_to_string(got), rat_to_string(expected));
    }
  }

  // Finite zero sector: exact residual and halving per doubling of ell.
  const ThomaParams half = make_params({"1/2"}, {});
  for (int k = 2; k <= 4; ++k) {
    Rat prev_resid;
    bool have_prev = false;
    for (int ell : config.ell_sequence) {
      const ModelSpace space = ModelSpace::from_params(half, k, ell);
      const Rat lhs = trace(space, represent(space, Permutation::from_cycles({[&] {
                              std::vector<int> pts(k);
                              for (int i = 0; i < k; ++i) pts[i] = i;
                              return pts;
                            }()})));
      const Rat resid = ell * rat_pow(half.c / ell, k);
      const Rat rhs = rat_pow(rat_from_string("1/2"), k) + resid;
      add_record(report,
                 "c-part/k=" + std::to_string(k) + "/ell=" + std::to_string(ell),
                 "c-part-convergence", lhs == rhs, rat_to_string(lhs), rat_to_string(rhs));
      if (have_prev)
        add_record(report,
                   "c-part-halving/k=" + std::to_string(k) + "/ell=" + std::to_string(ell),
                   "c-part-convergence", 2 * resid <= prev_resid, rat_to_string(resid),
                   rat_to_string(prev_resid) + "/2 or less");
      prev_resid = resid;
      have_prev = true;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: generalized-multiplicativity

VerificationReport suite_generalized(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "generalized-multiplicativity";
  report.seed = config.seed;

  const std::vector<ThomaParams> sets = {make_params({"1/2", "1/4"}, {"1/4"}),
                                         make_params({"1/4", "1/4"}, {"1/2"})};
  const int degree = config.group_degree;
  for (const auto& params : sets) {
    const ModelSpace space = ModelSpace::from_params(params, degree);
    for (int n = -1; n < degree; ++n) {
      int matches = 0, total = 0;
      for_each_permutation(degree, [&](const Permutation& p) {
        ++total;
        if (conditional_E(space, represent(space, p), n) ==
            realize_En(space, params, symbolic_En(p, n)))
          ++matches;
      });
      add_record(report, params_string(params) + "/n=" + std::to_string(n),
                 "generalized-multiplicativity", matches == total,
                 std::to_string(matches) + "/" + std::to_string(total) + " exact",
                 std::to_string(total) + "/" + std::to_string(total) + " exact");
    }
  }

  // Worked excursion example and its model realization.
  const Permutation sigma = Permutation::from_cycles({{1, 8, 7, 4, 10, 5}});
  add_record(report, "excursion/l(6,4)", "excursion-example",
             excursion_length(sigma, 6, 4) == 2,
             std::to_string(excursion_length(sigma, 6, 4)), "2");
  add_record(report, "excursion/l(6,9)", "excursion-example",
             excursion_length(sigma, 6, 9) == 0,
             std::to_string(excursion_length(sigma, 6, 9)), "0");
  add_record(report, "excursion/l(6,3)", "excursion-example",
             excursion_length(sigma, 6, 3) == 0,
             std::to_string(excursion_length(sigma, 6, 3)), "0");
  {
    const ThomaParams params = sets[0];
    const ModelSpace space = ModelSpace::from_params(params, 11);
    const ModelOperator lhs = conditional_E(space, represent(space, sigma), 6);
    const ModelOperator rhs = realize_En(space, params, symbolic_En(sigma, 6));
    const bool derivative_ok =
        n_derivative(sigma, 6) == Permutation::from_cycles({{1, 4, 5}});
    add_record(report, "derivative/d6", "excursion-example", derivative_ok,
               derivative_ok ? "(1,4,5)" : "mismatch", "(1,4,5)");
    add_record(report, "derivative/model-consistency", "excursion-example", lhs == rhs,
               op_brief(lhs), op_brief(rhs));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: definetti (exchangeability and tail factorization)

VerificationReport suite_definetti(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "definetti";
  report.seed = config.seed;

  const ThomaParams params = config.params;
  const ModelSpace space = ModelSpace::from_params_limit(params, 6);

  // Star-word moment invariance under index permutations.
  std::vector<Permutation> s4;
  for_each_permutation(4, [&](const Permutation& p) { s4.push_back(p); });
  for (int len = 1; len <= 5; ++len) {
    long checked = 0, good = 0;
    std::vector<int> letters(len, 1);
    for (;;) {
      Permutation w;
      for (int l : letters) w = w * Permutation::transposition(0, l);
      const Rat base = trace(space, represent(space, w));
      for (const auto& tau : s4) {
        Permutation relabeled;
        // tau permutes {0..3}; indices are 1..4, so shift by one.
        for (int l : letters)
          relabeled = relabeled * Permutation::transposition(0, tau(l - 1) + 1);
        ++checked;
        if (trace(space, represent(space, relabeled)) == base) ++good;
      }
      int pos = len - 1;
      while (pos >= 0 && letters[pos] == 4) letters[pos--] = 1;
      if (pos < 0) break;
      ++letters[pos];
    }
    add_record(report, "exchangeability/length=" + std::to_string(len),
               "star-exchangeability", checked == good,
               std::to_string(good) + "/" + std::to_string(checked) + " invariant",
               "all invariant");
  }

  // Tail factorization: E_0(x y) = E_0(x) E_0(y) for star words over
  // disjoint index sets.
  long checked = 0, good = 0;
  const std::vector<int> indices = {1, 2, 3, 4};
  for (unsigned jm = 1; jm < 16; ++jm)
    for (unsigned km = 1; km < 16; ++km) {
      if (jm & km) continue;
      auto words_over = [&](unsigned mask) {
        std::vector<Permutation> words;
        std::vector<int> pool;
        for (int i = 0; i < 4; ++i)
          if (mask & (1u << i)) pool.push_back(indices[i]);
        std::vector<std::vector<int>> stack{{}};
        for (int len = 1; len <= 2; ++len) {
          std::vector<std::vector<int>> next;
          for (const auto& w : stack)
            if (static_cast<int>(w.size()) == len - 1)
              for (int p : pool) {
                auto copy = w;
                copy.push_back(p);
                next.push_back(copy);
              }
          for (auto& w : next) stack.push_back(w);
        }
        for (const auto& w : stack) {
          if (w.empty()) continue;
          Permutation p;
          for (int l : w) p = p * Permutation::transposition(0, l);
          words.push_back(p);
        }
        return words;
      };
      for (const auto& x : words_over(jm))
        for (const auto& y : words_over(km)) {
          const ModelOperator ex = conditional_E(space, represent(space, x), 0);
          const ModelOperator ey = conditional_E(space, represent(space, y), 0);
          const ModelOperator exy =
              conditional_E(space, represent(space, x * y), 0);
          ++checked;
          if (exy == multiply(space, ex, ey)) ++good;
        }
    }
  add_record(report, "tail-factorization/disjoint-star-words", "tail-factorization",
             checked == good,
             std::to_string(good) + "/" + std::to_string(checked) + " factorized",
             "all factorized");
  return report;
}

// ---------------------------------------------------------------------------
// Suite: limit-cycles

VerificationReport suite_limit_cycles(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "limit-cycles";
  report.seed = config.seed;

  const ThomaParams params = config.params;
  const ModelSpace space = ModelSpace::from_params_limit(params, 8);
  const ThomaMeasure mu = spectral_measure(params);
  auto star = [&](int i) { return represent(space, Permutation::transposition(0, i)); };
  auto A = [&](int i) { return limit_cycle_A(space, i); };

  // Intertwining A_i = v_i A_0 v_i.
  {
    bool ok = true;
    for (int i = 1; i <= 5; ++i)
      ok &= multiply(space, star(i), multiply(space, A(0), star(i))) == A(i);
    add_record(report, "intertwining", "limit-cycle-relations", ok, ok ? "exact" : "mismatch",
               "exact");
  }
  // Slot relabeling under conjugation by represented permutations.
  {
    std::mt19937_64 rng(config.seed);
    bool ok = true;
    for (int trial = 0; trial < 60; ++trial) {
      const int a = static_cast<int>(rng() % 6), b = static_cast<int>(rng() % 6);
      const int c = static_cast<int>(rng() % 6), i = static_cast<int>(rng() % 6);
      Permutation s;
      if (a != b) s = s * Permutation::transposition(a, b);
      if (b != c) s = s * Permutation::transposition(b, c);
      const ModelOperator u = represent(space, s.inverse());
      const ModelOperator ui = represent(space, s);
      ok &= multiply(space, u, multiply(space, A(i), ui)) == A(s(i));
    }
    add_record(report, "slot-relabeling", "limit-cycle-relations", ok,
               ok ? "exact" : "mismatch", "exact");
  }
  // Mutual commutation and commutation with disjoint star generators.
  {
    bool ok = true;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        ok &= multiply(space, A(i), A(j)) == multiply(space, A(j), A(i));
    for (int i = 1; i < 5; ++i)
      for (int j = 1; j < 5; ++j) {
        if (i == j) continue;
        ok &= multiply(space, A(i), star(j)) == multiply(space, star(j), A(i));
      }
    add_record(report, "commutation", "limit-cycle-relations", ok,
               ok ? "exact" : "mismatch", "exact");
  }
  // Compressions of powers: E_0(A_i^k) is the central scalar of index k+1.
  {
    bool ok = true;
    for (int i = 1; i <= 3; ++i)
      for (int k = 1; k <= 4; ++k) {
        ModelOperator pw = ModelOperator::identity();
        for (int r = 0; r < k; ++r) pw = multiply(space, pw, A(i));
        ok &= conditional_E(space, pw, 0) == ModelOperator::scalar(moment(mu, k));
        ok &= conditional_E(space, pw, -1) == ModelOperator::scalar(moment(mu, k));
      }
    add_record(report, "central-compression", "limit-cycle-relations", ok,
               ok ? "exact" : "mismatch", "exact");
  }
  // Factorization over distinct slots, at the center and at the tail.
  {
    bool ok = true;
    const std::vector<std::pair<int, int>> exps = {{1, 1}, {2, 1}, {2, 3}, {3, 2}};
    for (const auto& [k1, k2] : exps) {
      auto power = [&](int slot, int k) {
        ModelOperator pw = ModelOperator::identity();
        for (int r = 0; r < k; ++r) pw = multiply(space, pw, A(slot));
        return pw;
      };
      const ModelOperator prod = multiply(space, power(1, k1), power(2, k2));
      ok &= conditional_E(space, prod, -1) ==
            ModelOperator::scalar(moment(mu, k1) * moment(mu, k2));
      const ModelOperator mixed = multiply(space, power(0, k1), power(2, k2));
      ok &= conditional_E(space, mixed, 0) ==
            multiply(space, power(0, k1), ModelOperator::scalar(moment(mu, k2)));
    }
    add_record(report, "disjoint-factorization", "limit-cycle-relations", ok,
               ok ? "exact" : "mismatch", "exact");
  }
  // Cesaro approximants: exact residual strictly decreasing.
  {
    const ModelSpace wide = ModelSpace::from_params_limit(params, 18);
    const ModelOperator a0 = limit_cycle_A(wide, 0);
    Rat prev;
    bool have_prev = true;
    bool decreasing = true;
    have_prev = false;
    for (int N : config.ell_sequence) {
      const Rat resid = l2_norm_squared(wide, cesaro_A(wide, 0, N) - a0);
      if (have_prev) decreasing &= resid < prev;
      add_record(report, "cesaro/N=" + std::to_string(N), "cesaro-approximation",
                 resid == (Rat(1) - moment(mu, 2)) / N, rat_to_string(resid),
                 rat_to_string((Rat(1) - moment(mu, 2)) / N));
      prev = resid;
      have_prev = true;
    }
    add_record(report, "cesaro/strictly-decreasing", "cesaro-approximation", decreasing,
               decreasing ? "decreasing" : "not decreasing", "decreasing");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: spectral

VerificationReport suite_spectral(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "spectral";
  report.seed = config.seed;

  const std::vector<ThomaParams> sets = {
      config.params,
      make_params({"1/4", "1/4"}, {"1/2"}),
      make_params({"1/3", "1/3", "1/3"}, {}),
      make_params({"1/2"}, {"1/3"}),
  };
  for (const auto& params : sets) {
    const ModelSpace space = ModelSpace::from_params_limit(params, 3);
    const ThomaMeasure mu = spectral_measure(params);
    const ModelOperator u = represent(space, Permutation::transposition(0, 1));
    for (const auto& [t, mass] : mu.atoms) {
      const ModelOperator chi = spectral_indicator(space, 0, t);
      const Rat mixed = trace(space, multiply(space, chi, u));
      const bool lower = rat_abs(t) * mass <= rat_abs(mixed);
      const bool upper = mixed * mixed <= mass * mass * mass;
      const bool bound = mass >= t * t;
      const bool integral = rat_is_natural(mass / rat_abs(t));
      add_record(report, params_string(params) + "/atom=" + rat_to_string(t),
                 "spectral-estimates", lower && upper && bound && integral,
                 "|tr(chi u)|=" + rat_to_string(rat_abs(mixed)) +
                     " mass=" + rat_to_string(mass),
                 "eps*mass <= |tr| <= mass^(3/2), mass >= eps^2, integral ratio");
    }
    const auto measure_report = check_thoma_measure(mu);
    add_record(report, params_string(params) + "/measure", "thoma-measure",
               measure_report.ok, measure_report.ok ? "pass" : measure_report.detail,
               "pass");
  }

  // The checker rejects synthetic violations.
  {
    ThomaMeasure bad;
    bad.atoms[rat_from_string("1/2")] = rat_from_string("1/3");
    bad.zero_mass = rat_from_string("2/3");
    add_record(report, "synthetic/non-integer-ratio", "thoma-measure",
               !check_thoma_measure(bad).ok, check_thoma_measure(bad).detail,
               "rejected");
    ThomaMeasure heavy;
    heavy.atoms[rat_from_string("9/10")] = rat_from_string("1/2");
    heavy.zero_mass = rat_from_string("1/2");
    add_record(report, "synthetic/discreteness-bound", "thoma-measure",
               !check_thoma_measure(heavy).ok, check_thoma_measure(heavy).detail,
               "rejected");
  }

  // Axiomatic route on the flip fixture built from the configured weights.
  {
    std::vector<Rat> weights = config.params.a;
    for (const auto& b : config.params.b) weights.push_back(b);
    if (config.params.c > 0) weights.push_back(config.params.c);
    const FlipFixture fixture = flip_fixture(weights);
    const DiscretenessReport d = discreteness_check(fixture.ambient, fixture.left,
                                                    fixture.flip);
    bool integral = d.ok && d.preconditions_hold && d.normal;
    for (const auto& atom : d.atoms) integral &= atom.integer_multiplicity;
    add_record(report, "flip-fixture/discreteness", "spectral-estimates", integral,
               integral ? "pass" : d.detail, "pass");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: commuting-squares

VerificationReport suite_commuting_squares(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "commuting-squares";
  report.seed = config.seed;

  // Flip fixture: the compression of the flip is the weight diagonal.
  {
    const std::vector<Rat> weights = {rat_from_string("1/2"), rat_from_string("1/3"),
                                      rat_from_string("1/6")};
    const FlipFixture f = flip_fixture(weights);
    const CMatrix e = conditional_expectation(f.ambient, f.left, f.flip);
    CMatrix expected = cmat_zero(9);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) expected[i * 3 + k][i * 3 + k] = CRat(weights[i]);
    add_record(report, "flip/compression", "flip-compression", e == expected,
               e == expected ? "weight diagonal" : "mismatch", "weight diagonal");
    const TracialAlgebra scalars = scalar_algebra(9, f.ambient.density);
    const CommutingSquareReport square =
        is_commuting_square(scalars, f.left, f.right, f.ambient, config.seed);
    add_record(report, "flip/square", "flip-compression", square.holds,
               "defect=" + rat_to_string(square.max_defect), "defect=0");
  }

  // Three realized tower cells.
  {
    const ModelSpace space =
        ModelSpace::from_params(make_params({"1/2"}, {"1/2"}), 4);
    for (int k = 0; k <= 2; ++k) {
      const TowerCell cell = tower_cell(space, k);
      const CommutingSquareReport square =
          is_commuting_square(cell.N, cell.B1, cell.B2, cell.M, config.seed);
      add_record(report, "tower-cell/k=" + std::to_string(k), "tower-cells",
                 square.holds, "defect=" + rat_to_string(square.max_defect),
                 "defect=0");
    }
  }

  // Fixtures declared in the config as nested fraction arrays.
  for (const auto& fixture : config.square_fixtures) {
    const std::string name =
        fixture.contains("name") ? fixture["name"].get<std::string>() : "config-fixture";
    auto corner = [&](const char* key) {
      if (!fixture.contains(key))
        throw ConfigError(std::string("square fixture ") + name + ": missing " + key);
      return tracial_algebra_from_json(
          Json{{"density", fixture.at("density")}, {"generators", fixture.at(key)}});
    };
    const CommutingSquareReport square =
        is_commuting_square(corner("N"), corner("B1"), corner("B2"), corner("M"),
                            config.seed);
    add_record(report, "config-fixture/" + name, "tower-cells", square.holds,
               commuting_square_report_to_json(square).dump(), "holds");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: markov

VerificationReport suite_markov(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "markov";
  report.seed = config.seed;

  const std::vector<ThomaParams> sweep = {
      make_params({"1/2", "1/2"}, {}),
      make_params({"1/3", "1/3", "1/3"}, {}),
      make_params({}, {"1/2", "1/2"}),
      make_params({}, {"1/5", "1/5", "1/5", "1/5", "1/5"}),
      ThomaParams::regular(),
      make_params({"1"}, {}),
      make_params({"2/3", "1/3"}, {}),
      make_params({"1/2", "1/4"}, {"1/4"}),
      make_params({"1/2"}, {"1/2"}),
      make_params({"1/2", "1/4", "1/4"}, {}),
  };
  const int nmax = std::min(config.group_degree, 6);
  for (const auto& params : sweep) {
    const MarkovTraceReport checked = markov_trace_check(params, nmax,
                                                         config.enumeration_bound);
    const MarkovWitness expected = is_markov_params(params);
    std::string lhs = checked.is_markov ? "markov" : "not markov";
    if (checked.witness)
      lhs += " (witness: g of type " + cycle_type_string(checked.witness->first) +
             ", n=" + std::to_string(checked.witness->second) + ")";
    add_record(report, params_string(params), "markov-equivalence",
               checked.is_markov == expected.is_markov, lhs,
               expected.is_markov ? "markov (t=" + rat_to_string(expected.t) + ")"
                                  : "not markov");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: stirling

VerificationReport suite_stirling(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "stirling";
  report.seed = config.seed;

  const int top = std::min(7, config.enumeration_bound);
  for (int n = 1; n <= top; ++n) {
    const auto brute = stirling_sum(n, config.enumeration_bound);
    const auto rising = rising_factorial_coeffs(n);
    std::string lhs, rhs;
    for (std::size_t i = 0; i < brute.size(); ++i)
      lhs += (i ? "," : "") + brute[i].str();
    for (std::size_t i = 0; i < rising.size(); ++i)
      rhs += (i ? "," : "") + rising[i].str();
    add_record(report, "n=" + std::to_string(n), "stirling-orbit-sum", brute == rising,
               lhs, rhs);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: antisymmetrizer

VerificationReport suite_antisymmetrizer(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "antisymmetrizer";
  report.seed = config.seed;

  struct Fixture {
    ThomaParams params;
    Rat t;
    int nu;
  };
  const std::vector<Fixture> fixtures = {
      {make_params({"1/2", "1/2"}, {}), rat_from_string("1/2"), 2},
      {make_params({}, {"1/3", "1/3", "1/3"}), rat_from_string("-1/3"), 3},
  };
  const int top = std::min(6, config.enumeration_bound);
  for (const auto& fixture : fixtures) {
    const ModelSpace space = ModelSpace::from_params(fixture.params, top);
    for (int n = 1; n <= top; ++n) {
      const auto [lhs, rhs] =
          antisymmetrizer_check(space, fixture.params, fixture.t, n,
                                config.enumeration_bound);
      const bool vanishing_ok = n <= fixture.nu || lhs == 0;
      add_record(report,
                 params_string(fixture.params) + "/t=" + rat_to_string(fixture.t) +
                     "/n=" + std::to_string(n),
                 "antisymmetrizer", lhs == rhs && vanishing_ok, rat_to_string(lhs),
                 rat_to_string(rhs) + (n > fixture.nu ? " (must vanish)" : ""));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite: transition

VerificationReport suite_transition(const ExperimentConfig& config) {
  VerificationReport report;
  report.suite = "transition";
  report.seed = config.seed;

  const ThomaParams params = make_params({"1/3", "1/3", "1/3"}, {});
  const ModelSpace space = ModelSpace::from_params(params, 4);
  const ModelOperator u1 = represent(space, Permutation::transposition(0, 1));
  const ModelOperator a0 = limit_cycle_A(space, 0);
  const ModelOperator a1 = limit_cycle_A(space, 1);

  add_record(report, "identity", "transition-operator",
             transition_R0(space, ModelOperator::identity()) == ModelOperator::identity(),
             "R0(1)", "1");
  for (int n = 0; n <= 3; ++n)
    for (int eps = 0; eps <= 1; ++eps) {
      ModelOperator x = ModelOperator::identity();
      for (int i = 0; i < n; ++i) x = multiply(space, x, a0);
      if (eps) x = multiply(space, x, u1);
      ModelOperator expected = ModelOperator::identity();
      for (int i = 0; i < n + eps; ++i) expected = multiply(space, expected, a1);
      const ModelOperator got = transition_R0(space, x);
      add_record(report, "power/n=" + std::to_string(n) + "/eps=" + std::to_string(eps),
                 "transition-operator", got == expected, op_brief(got),
                 op_brief(expected));
    }
  return report;
}

using SuiteRunner = VerificationReport (*)(const ExperimentConfig&);

const std::map<std::string, SuiteRunner>& registry() {
  static const std::map<std::string, SuiteRunner> suites = {
      {"multiplicativity", suite_multiplicativity},
      {"generalized-multiplicativity", suite_generalized},
      {"definetti", suite_definetti},
      {"limit-cycles", suite_limit_cycles},
      {"spectral", suite_spectral},
      {"commuting-squares", suite_commuting_squares},
      {"markov", suite_markov},
      {"stirling", suite_stirling},
      {"antisymmetrizer", suite_antisymmetrizer},
      {"transition", suite_transition},
  };
  return suites;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig config;
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  if (j.contains("params")) config.params = params_from_json(j["params"]);
  auto read_int = [&](const char* key, int low, int high, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ConfigError(std::string(key) + ": expected integer");
    const long v = j[key].get<long>();
    if (v < low || v > high)
      throw ConfigError(std::string(key) + ": out of documented range [" +
                        std::to_string(low) + "," + std::to_string(high) + "]");
    return static_cast<int>(v);
  };
  config.slot_count = read_int("slot_count", 1, 24, config.slot_count);
  config.zero_labels = read_int("zero_labels", 1, 64, config.zero_labels);
  config.enumeration_bound = read_int("enumeration_bound", 1, 9, config.enumeration_bound);
  config.group_degree = read_int("group_degree", 1, 8, config.group_degree);
  config.max_dense_dim = read_int("max_dense_dim", 1, 100000,
                                  static_cast<int>(config.max_dense_dim));
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("ell_sequence")) {
    config.ell_sequence.clear();
    for (const auto& e : j["ell_sequence"]) {
      const long v = e.get<long>();
      if (v < 1 || v > 4096) throw ConfigError("ell_sequence: entries must be in [1,4096]");
      config.ell_sequence.push_back(static_cast<int>(v));
    }
    if (config.ell_sequence.empty()) throw ConfigError("ell_sequence: must be nonempty");
  }
  if (j.contains("suites")) {
    config.suites_selected = true;
    for (const auto& s : j["suites"]) {
      const std::string name = s.get<std::string>();
      if (!is_suite_name(name)) throw ConfigError("unknown suite: " + name);
      config.suites.push_back(name);
    }
  }
  if (j.contains("square_fixtures")) {
    if (!j["square_fixtures"].is_array())
      throw ConfigError("square_fixtures: expected an array");
    config.square_fixtures = j["square_fixtures"];
  }
  return config;
}

Json config_to_json(const ExperimentConfig& config) {
  Json j;
  j["params"] = params_to_json(config.params);
  j["slot_count"] = config.slot_count;
  j["zero_labels"] = config.zero_labels;
  j["ell_sequence"] = config.ell_sequence;
  j["enumeration_bound"] = config.enumeration_bound;
  j["group_degree"] = config.group_degree;
  j["max_dense_dim"] = config.max_dense_dim;
  j["seed"] = config.seed;
  if (config.suites_selected) j["suites"] = config.suites;
  j["square_fixtures"] = config.square_fixtures;
  return j;
}

bool VerificationReport::passed() const { return failures() == 0; }

int VerificationReport::failures() const {
  int n = 0;
  for (const auto& r : records) n += r.pass ? 0 : 1;
  return n;
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["passed"] = report.passed();
  j["checks"] = Json::array();
  for (const auto& r : report.records)
    j["checks"].push_back(Json{{"label", r.label},
                               {"anchor", r.anchor},
                               {"status", r.pass ? "pass" : "fail"},
                               {"lhs", r.lhs},
                               {"rhs", r.rhs}});
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

bool is_suite_name(const std::string& name) { return registry().contains(name); }

VerificationReport run_suite(const std::string& name, const ExperimentConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown suite: " + name);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report = it->second(config);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<CharacterRow> character_table(const ExperimentConfig& config) {
  const ThomaParams& params = config.params;
  const ModelSpace space = params.c == 0
                               ? ModelSpace::from_params(params, config.group_degree)
                               : ModelSpace::from_params_limit(params, config.group_degree);
  std::vector<CharacterRow> rows;
  for (const auto& [type, perms] : group_by_type(config.group_degree)) {
    CharacterRow row;
    row.type = type;
    row.formula = character_of_type(params, type);
    row.model_trace = trace(space, represent(space, perms.front()));
    row.equal = row.formula == row.model_trace;
    // The formula sees only the type; confirm the model does too.
    for (const auto& p : perms)
      row.equal &= trace(space, represent(space, p)) == row.model_trace;
    rows.push_back(std::move(row));
  }
  return rows;
}

Json character_table_to_json(const ExperimentConfig& config,
                             const std::vector<CharacterRow>& rows) {
  Json j;
  j["params"] = params_to_json(config.params);
  j["degree"] = config.group_degree;
  j["rows"] = Json::array();
  for (const auto& row : rows)
    j["rows"].push_back(Json{{"cycle_type", cycle_type_string(row.type)},
                             {"character", rat_to_string(row.formula)},
                             {"model_trace", rat_to_string(row.model_trace)},
                             {"status", row.equal ? "pass" : "fail"}});
  return j;
}

std::string character_table_to_csv(const std::vector<CharacterRow>& rows) {
  std::string csv = "cycle_type,character,model_trace,status\n";
  for (const auto& row : rows) {
    csv += cycle_type_string(row.type) + "," + rat_to_string(row.formula) + "," +
           rat_to_string(row.model_trace) + "," + (row.equal ? "pass" : "fail") + "\n";
  }
  return csv;
}

VerificationReport run_oracle_equivalence(const ExperimentConfig& config, int words) {
  VerificationReport report;
  report.suite = "oracle-equivalence";
  report.seed = config.seed;

  const DenseOracleConfig cfg{config.max_dense_dim};
  struct NamedSpace {
    std::string name;
    ModelSpace space;
  };
  const std::vector<NamedSpace> spaces = {
      {"sign-pair", ModelSpace::from_params(make_params({"1/2"}, {"1/2"}), 5)},
      {"mixed", ModelSpace::from_params(make_params({"1/2", "1/4"}, {"1/4"}), 5)},
      {"finite-zero", ModelSpace::from_params(make_params({"1/2"}, {"1/4"}), 5, 1)},
      {"two-plus", ModelSpace::from_params(make_params({"2/3", "1/3"}, {}), 4)},
  };
  std::mt19937_64 rng(config.seed);
  const int per_space = (words + static_cast<int>(spaces.size()) - 1) /
                        static_cast<int>(spaces.size());
  for (const auto& [name, space] : spaces) {
    long ok_trace = 0, ok_mult = 0, ok_cond = 0;
    for (int trial = 0; trial < per_space; ++trial) {
      auto random_word = [&](int length) {
        ModelOperator x = ModelOperator::identity();
        for (int i = 0; i < length; ++i) {
          const int kind = static_cast<int>(rng() % 3);
          const int s = static_cast<int>(rng() % space.slot_count());
          if (kind == 0) {
            const int t = static_cast<int>(rng() % space.slot_count());
            if (s != t)
              x = multiply(space, x, represent(space, Permutation::transposition(s, t)));
          } else if (kind == 1) {
            x = multiply(space, x, limit_cycle_A(space, s));
          } else {
            const int l = static_cast<int>(rng() % space.label_count());
            x = multiply(space, x,
                         spectral_indicator(space, s, space.cycle_eigenvalue(l)));
          }
        }
        return x;
      };
      const ModelOperator x = random_word(4);
      const ModelOperator y = random_word(3);
      const RatMatrix mx = dense_oracle(space, x, cfg);
      const RatMatrix my = dense_oracle(space, y, cfg);
      if (trace(space, x) == dense_trace(space, mx)) ++ok_trace;
      if (dense_oracle(space, multiply(space, x, y), cfg) == dense_multiply(mx, my))
        ++ok_mult;
      const int n = static_cast<int>(rng() % space.slot_count()) - 1;
      const ModelOperator ex = conditional_E(space, x, n);
      const RatMatrix low = dense_conditional(space, mx, n);
      bool cond_ok;
      if (n >= 0) {
        cond_ok = dense_oracle(space.with_slot_count(n + 1), ex, cfg) == low;
      } else {
        Rat value;
        cond_ok = ex.is_scalar(&value) && low.size() == 1 && low[0][0] == value;
      }
      if (cond_ok) ++ok_cond;
    }
    const std::string expected = std::to_string(per_space) + "/" + std::to_string(per_space);
    add_record(report, name + "/trace", "oracle-equivalence", ok_trace == per_space,
               std::to_string(ok_trace) + "/" + std::to_string(per_space), expected);
    add_record(report, name + "/product", "oracle-equivalence", ok_mult == per_space,
               std::to_string(ok_mult) + "/" + std::to_string(per_space), expected);
    add_record(report, name + "/expectation", "oracle-equivalence", ok_cond == per_space,
               std::to_string(ok_cond) + "/" + std::to_string(per_space), expected);
  }
  return report;
}

}  // namespace thomalab
