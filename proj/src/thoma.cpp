#include "thomalab/thoma.hpp"

#include <algorithm>

#include "thomalab/errors.hpp"

namespace thomalab {

ThomaParams ThomaParams::make(std::vector<Rat> a, std::vector<Rat> b) {
  for (const auto* seq : {&a, &b}) {
    for (std::size_t i = 0; i < seq->size(); ++i) {
      if ((*seq)[i] <= 0) throw ContractError("parameter values must be positive");
      if (i > 0 && (*seq)[i] > (*seq)[i - 1])
        throw ContractError("parameter sequences must be descending");
    }
  }
  Rat sum = 0;
  for (const auto& x : a) sum += x;
  for (const auto& x : b) sum += x;
  if (sum > 1) throw ContractError("sum a + sum b exceeds 1");
  ThomaParams p;
  p.a = std::move(a);
  p.b = std::move(b);
  p.c = Rat(1) - sum;
  return p;
}

Rat ThomaMeasure::total_mass() const {
  Rat s = zero_mass;
  for (const auto& [t, m] : atoms) {
    (void)t;
    s += m;
  }
  return s;
}

Rat character_of_type(const ThomaParams& params, const CycleType& type) {
  Rat chi = 1;
  for (const auto& [k, mk] : type) {
    Rat base = 0;
    for (const auto& ai : params.a) base += rat_pow(ai, k);
    Rat bsum = 0;
    for (const auto& bj : params.b) bsum += rat_pow(bj, k);
    base += (k % 2 == 0) ? -bsum : bsum;
    chi *= rat_pow(base, mk);  // 0^0 = 1 convention lives in rat_pow
  }
  return chi;
}

Rat character(const ThomaParams& params, const Permutation& p) {
  return character_of_type(params, cycle_type(p));
}

ThomaMeasure spectral_measure(const ThomaParams& params) {
  ThomaMeasure m;
  for (const auto& ai : params.a) m.atoms[ai] += ai;
  for (const auto& bj : params.b) m.atoms[-bj] += bj;
  m.zero_mass = params.c;
  return m;
}

Rat moment(const ThomaMeasure& m, int k) {
  if (k < 0) throw ContractError("negative moment order");
  if (k == 0) return m.total_mass();
  Rat s = 0;
  for (const auto& [t, mass] : m.atoms) s += rat_pow(t, k) * mass;
  return s;
}

Rat atom_multiplicity(const ThomaMeasure& m, const Rat& t) {
  const auto it = m.atoms.find(t);
  if (it == m.atoms.end()) return 0;
  return it->second / rat_abs(t);
}

EnNormalForm symbolic_En(const Permutation& p, int n) {
  if (n < -1) throw ContractError("level must be >= -1");
  EnNormalForm form;
  form.derivative = n_derivative(p, n);
  for (const auto& c : cycle_decompose(p)) {
    if (c.min_point() > n) {
      ++form.c_exponents[c.length()];
    } else {
      for (int k : c.points()) {
        if (k > n) continue;
        const int e = excursion_length(p, n, k);
        if (e > 0) form.a_factors[k] += e;
      }
    }
  }
  return form;
}

Rat evaluate_En_trace(const ThomaParams& params, const EnNormalForm& form, int n) {
  if (form.derivative.max_support() > n)
    throw ContractError("derivative support exceeds level");
  for (const auto& [k, e] : form.a_factors) {
    (void)e;
    if (k > n) throw ContractError("limit 2-cycle slot exceeds level");
  }
  const ThomaMeasure mu = spectral_measure(params);
  Rat value = 1;
  for (const auto& [k, e] : form.c_exponents)
    value *= rat_pow(moment(mu, k - 1), e);
  // Contract the derivative against the product state: each orbit V of the
  // derivative picks up integral of t^{|V|-1+sum of exponents over V}.
  const int window = std::max(form.derivative.max_support(),
                              form.a_factors.empty() ? -1 : form.a_factors.rbegin()->first) +
                     1;
  auto exponent_at = [&](int k) {
    const auto it = form.a_factors.find(k);
    return it == form.a_factors.end() ? 0 : it->second;
  };
  for (const auto& block : orbits(form.derivative, window)) {
    int total = static_cast<int>(block.size()) - 1;
    for (int k : block) total += exponent_at(k);
    if (total == 0) continue;  // untouched fixed point integrates to 1
    value *= moment(mu, total);
  }
  return value;
}

MarkovWitness is_markov_params(const ThomaParams& params) {
  MarkovWitness w;
  const auto uniform = [](const std::vector<Rat>& v) {
    const Rat share = Rat(1) / static_cast<int>(v.size());
    return std::all_of(v.begin(), v.end(), [&](const Rat& x) { return x == share; });
  };
  if (params.a.empty() && params.b.empty()) {
    w.is_markov = true;
    w.which = MarkovCase::Regular;
    w.t = 0;
  } else if (params.b.empty() && params.c == 0 && uniform(params.a)) {
    w.is_markov = true;
    w.which = MarkovCase::UniformA;
    w.t = params.a.front();
  } else if (params.a.empty() && params.c == 0 && uniform(params.b)) {
    w.is_markov = true;
    w.which = MarkovCase::UniformB;
    w.t = -params.b.front();
  }
  return w;
}

ThomaMeasureReport check_thoma_measure(const ThomaMeasure& m) {
  ThomaMeasureReport report;
  for (const auto& [t, mass] : m.atoms) {
    ThomaMeasureReport::AtomCheck check;
    check.t = t;
    check.mass = mass;
    check.multiplicity = mass / rat_abs(t);
    check.integer_ratio = rat_is_natural(check.multiplicity) && check.multiplicity > 0;
    check.discreteness_bound = mass >= t * t;
    if (!check.integer_ratio && report.ok) {
      report.ok = false;
      report.detail = "atom at " + rat_to_string(t) + " has non-integer multiplicity " +
                      rat_to_string(check.multiplicity);
    }
    if (!check.discreteness_bound && report.ok) {
      report.ok = false;
      report.detail = "atom at " + rat_to_string(t) + " violates mass >= t^2";
    }
    report.atom_checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace thomalab
