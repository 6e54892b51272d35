#include "thomalab/tensor_model.hpp"

#include <algorithm>

#include "thomalab/errors.hpp"

namespace thomalab {

namespace {

bool all_ones(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 1; });
}

bool all_zero(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

void require_slot(const ModelSpace& space, int slot, const char* what) {
  if (slot < 0 || slot >= space.slot_count())
    throw ContractError(std::string(what) + ": slot out of range");
}

void require_fits(const ModelSpace& space, const ModelOperator& x, const char* what) {
  if (x.max_slot() >= space.slot_count())
    throw ContractError(std::string(what) + ": operator does not fit the slot window");
  for (const auto& [key, coeff] : x.terms()) {
    (void)coeff;
    for (const auto& [slot, values] : key.second) {
      (void)slot;
      if (static_cast<int>(values.size()) != space.label_count())
        throw ContractError(std::string(what) + ": diagonal length does not match the labels");
    }
  }
}

}  // namespace

ModelSpace ModelSpace::from_params(const ThomaParams& params, int slot_count,
                                   int zero_labels) {
  if (slot_count < 1) throw ContractError("slot_count must be positive");
  ModelSpace s;
  s.slot_count_ = slot_count;
  for (const auto& ai : params.a) s.labels_.push_back({LabelKind::Plus, ai});
  for (const auto& bj : params.b) s.labels_.push_back({LabelKind::Minus, bj});
  s.zero_total_ = params.c;
  if (params.c > 0) {
    if (zero_labels < 1) throw ContractError("c > 0 needs at least one zero label");
    s.zero_part_ = ZeroPart::Finite;
    const Rat share = params.c / zero_labels;
    for (int i = 0; i < zero_labels; ++i) s.labels_.push_back({LabelKind::Zero, share});
  }
  if (s.labels_.empty()) throw ContractError("space needs at least one label");
  return s;
}

ModelSpace ModelSpace::from_params_limit(const ThomaParams& params, int slot_count) {
  if (params.c == 0) return from_params(params, slot_count);
  if (slot_count < 1) throw ContractError("slot_count must be positive");
  ModelSpace s;
  s.slot_count_ = slot_count;
  for (const auto& ai : params.a) s.labels_.push_back({LabelKind::Plus, ai});
  for (const auto& bj : params.b) s.labels_.push_back({LabelKind::Minus, bj});
  // The singular limit of the c/ell sector: one label of mass c whose
  // contraction value is exactly zero.
  s.labels_.push_back({LabelKind::Zero, Rat(0)});
  s.zero_part_ = ZeroPart::Limit;
  s.zero_total_ = params.c;
  return s;
}

ModelSpace ModelSpace::with_slot_count(int slot_count) const {
  if (slot_count < 1) throw ContractError("slot_count must be positive");
  ModelSpace s = *this;
  s.slot_count_ = slot_count;
  return s;
}

Rat ModelSpace::mass(int label) const {
  const ModelLabel& l = labels_.at(label);
  if (l.kind == LabelKind::Zero && zero_part_ == ZeroPart::Limit) return zero_total_;
  return l.weight;
}

Rat ModelSpace::step_value(int label) const {
  const ModelLabel& l = labels_.at(label);
  return l.kind == LabelKind::Minus ? Rat(-l.weight) : l.weight;
}

Rat ModelSpace::cycle_eigenvalue(int label) const {
  const ModelLabel& l = labels_.at(label);
  switch (l.kind) {
    case LabelKind::Plus: return l.weight;
    case LabelKind::Minus: return -l.weight;
    case LabelKind::Zero: return 0;
  }
  return 0;
}

std::vector<Rat> ModelSpace::cycle_diagonal() const {
  std::vector<Rat> v(labels_.size());
  for (int i = 0; i < label_count(); ++i) v[i] = cycle_eigenvalue(i);
  return v;
}

std::vector<Rat> ModelSpace::indicator_diagonal(const Rat& t) const {
  std::vector<Rat> v(labels_.size(), 0);
  for (int i = 0; i < label_count(); ++i)
    if (cycle_eigenvalue(i) == t) v[i] = 1;
  return v;
}

void ModelOperator::add_term(const Permutation& perm, Diag diag, const Rat& coeff) {
  if (coeff == 0) return;
  for (auto it = diag.begin(); it != diag.end();) {
    if (it->first < 0) throw ContractError("diagonal slot out of range");
    if (all_zero(it->second)) return;  // the whole monomial annihilates
    if (all_ones(it->second))
      it = diag.erase(it);
    else
      ++it;
  }
  const Key key{perm, std::move(diag)};
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

ModelOperator ModelOperator::identity() { return scalar(1); }

ModelOperator ModelOperator::scalar(const Rat& value) {
  ModelOperator x;
  x.add_term(Permutation(), {}, value);
  return x;
}

ModelOperator ModelOperator::monomial(const Rat& coeff, const Permutation& perm,
                                      Diag diag) {
  ModelOperator x;
  x.add_term(perm, std::move(diag), coeff);
  return x;
}

bool ModelOperator::is_scalar(Rat* value) const {
  if (terms_.empty()) {
    if (value) *value = 0;
    return true;
  }
  if (terms_.size() != 1) return false;
  const auto& [key, coeff] = *terms_.begin();
  if (!key.first.is_identity() || !key.second.empty()) return false;
  if (value) *value = coeff;
  return true;
}

int ModelOperator::max_slot() const {
  int top = -1;
  for (const auto& [key, coeff] : terms_) {
    (void)coeff;
    top = std::max(top, key.first.max_support());
    if (!key.second.empty()) top = std::max(top, key.second.rbegin()->first);
  }
  return top;
}

ModelOperator& ModelOperator::operator+=(const ModelOperator& other) {
  for (const auto& [key, coeff] : other.terms_) add_term(key.first, key.second, coeff);
  return *this;
}

ModelOperator& ModelOperator::operator-=(const ModelOperator& other) {
  for (const auto& [key, coeff] : other.terms_) add_term(key.first, key.second, -coeff);
  return *this;
}

ModelOperator& ModelOperator::operator*=(const Rat& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= scalar;
  return *this;
}

ModelOperator represent(const ModelSpace& space, const Permutation& p) {
  if (p.max_support() >= space.slot_count())
    throw ContractError("represent: permutation support exceeds the slot window");
  return ModelOperator::monomial(1, p, {});
}

ModelOperator multiply(const ModelSpace& space, const ModelOperator& x,
                       const ModelOperator& y) {
  require_fits(space, x, "multiply");
  require_fits(space, y, "multiply");
  ModelOperator out;
  for (const auto& [kx, cx] : x.terms()) {
    const auto& [sigma, dx] = kx;
    for (const auto& [ky, cy] : y.terms()) {
      const auto& [tau, dy] = ky;
      // U_sigma Dx U_tau Dy = U_{sigma tau} (Dx pulled through tau) Dy;
      // a diagonal at slot s moves to slot tau(s) when pulled through U_tau.
      ModelOperator::Diag diag = dy;
      for (const auto& [slot, values] : dx) {
        const int moved = tau(slot);
        auto [it, inserted] = diag.try_emplace(moved, values);
        if (!inserted)
          for (int l = 0; l < static_cast<int>(values.size()); ++l)
            it->second[l] *= values[l];
      }
      out += ModelOperator::monomial(cx * cy, sigma * tau, std::move(diag));
    }
  }
  return out;
}

ModelOperator adjoint(const ModelSpace& space, const ModelOperator& x) {
  require_fits(space, x, "adjoint");
  ModelOperator out;
  for (const auto& [key, coeff] : x.terms()) {
    const auto& [sigma, diag] = key;
    const Permutation inv = sigma.inverse();
    ModelOperator::Diag moved;
    for (const auto& [slot, values] : diag) moved[inv(slot)] = values;
    out += ModelOperator::monomial(coeff, inv, std::move(moved));
  }
  return out;
}

Rat trace(const ModelSpace& space, const ModelOperator& x) {
  require_fits(space, x, "trace");
  Rat total = 0;
  for (const auto& [key, coeff] : x.terms()) {
    const auto& [sigma, diag] = key;
    // Every slot touched by the permutation or a diagonal contributes
    // through its orbit; untouched slots integrate to one.
    const int window = std::max(sigma.max_support(),
                                diag.empty() ? -1 : diag.rbegin()->first) +
                       1;
    Rat factor = coeff;
    for (const auto& block : orbits(sigma, window)) {
      if (block.size() == 1 && !diag.contains(block.front())) continue;
      Rat sum = 0;
      for (int l = 0; l < space.label_count(); ++l) {
        Rat term = space.mass(l) * rat_pow(space.step_value(l),
                                           static_cast<unsigned long>(block.size() - 1));
        if (term == 0) continue;
        for (int s : block) {
          const auto it = diag.find(s);
          if (it != diag.end()) term *= it->second[l];
        }
        sum += term;
      }
      factor *= sum;
      if (factor == 0) break;
    }
    total += factor;
  }
  return total;
}

namespace {

// Contracts the top slot of one monomial against the state; sigma must not
// move any slot above top.
void peel_slot(const ModelSpace& space, int top, Rat& coeff, Permutation& sigma,
               ModelOperator::Diag& diag) {
  const auto dit = diag.find(top);
  if (sigma(top) == top) {
    if (dit == diag.end()) return;
    Rat sum = 0;
    for (int l = 0; l < space.label_count(); ++l) sum += space.mass(l) * dit->second[l];
    coeff *= sum;
    diag.erase(dit);
    return;
  }
  const int a = sigma.preimage(top);
  const int b = sigma(top);
  // Splice top out of its cycle. The label passing through the top slot is
  // the one sitting at b = sigma(top); it pays one contraction step (and the
  // top slot's diagonal) there, and the shortened cycle sends a directly
  // to b.
  std::map<int, int> m = sigma.mapping();
  m.erase(top);
  if (a == b)
    m.erase(a);
  else
    m[a] = b;
  sigma = Permutation::from_mapping(m);
  std::vector<Rat> fold(space.label_count());
  for (int l = 0; l < space.label_count(); ++l) {
    fold[l] = space.step_value(l);
    if (dit != diag.end()) fold[l] *= dit->second[l];
  }
  if (dit != diag.end()) diag.erase(dit);
  auto [bit, inserted] = diag.try_emplace(b, fold);
  if (!inserted)
    for (int l = 0; l < space.label_count(); ++l) bit->second[l] *= fold[l];
}

}  // namespace

ModelOperator conditional_E(const ModelSpace& space, const ModelOperator& x, int n) {
  if (n < -1) throw ContractError("conditional_E: level must be >= -1");
  require_fits(space, x, "conditional_E");
  ModelOperator out;
  for (const auto& [key, c] : x.terms()) {
    Rat coeff = c;
    Permutation sigma = key.first;
    ModelOperator::Diag diag = key.second;
    int top = std::max(sigma.max_support(), diag.empty() ? -1 : diag.rbegin()->first);
    for (; top > n && coeff != 0; --top) peel_slot(space, top, coeff, sigma, diag);
    out += ModelOperator::monomial(coeff, sigma, std::move(diag));
  }
  return out;
}

ModelOperator limit_cycle_A(const ModelSpace& space, int slot) {
  require_slot(space, slot, "limit_cycle_A");
  return ModelOperator::monomial(1, Permutation(), {{slot, space.cycle_diagonal()}});
}

ModelOperator spectral_indicator(const ModelSpace& space, int slot, const Rat& t) {
  require_slot(space, slot, "spectral_indicator");
  return ModelOperator::monomial(1, Permutation(), {{slot, space.indicator_diagonal(t)}});
}

ModelOperator cesaro_A(const ModelSpace& space, int slot, int N) {
  require_slot(space, slot, "cesaro_A");
  if (N < 1) throw ContractError("cesaro_A: N must be positive");
  if (slot + N >= space.slot_count())
    throw ContractError("cesaro_A: window too small for N transpositions");
  ModelOperator sum;
  int count = 0;
  for (int j = 1; j <= N; ++j) {
    if (j == slot) continue;
    sum += represent(space, Permutation::transposition(slot, j));
    ++count;
  }
  return Rat(1, count) * sum;
}

Rat l2_norm_squared(const ModelSpace& space, const ModelOperator& x) {
  return trace(space, multiply(space, adjoint(space, x), x));
}

ModelOperator shift_endo(const ModelSpace& space, const ModelOperator& x, int n) {
  if (n < 0) throw ContractError("shift_endo: level must be nonnegative");
  if (x.max_slot() + 1 >= space.slot_count())
    throw ResourceCapError("shift_endo: shifted operator does not fit the slot window");
  ModelOperator shifted;
  for (const auto& [key, coeff] : x.terms()) {
    std::map<int, int> m;
    for (const auto& [k, v] : key.first.mapping()) m[k + 1] = v + 1;
    ModelOperator::Diag diag;
    for (const auto& [slot, values] : key.second) diag[slot + 1] = values;
    shifted += ModelOperator::monomial(coeff, Permutation::from_mapping(m), std::move(diag));
  }
  if (n == 0) return shifted;
  Permutation conj;
  for (int i = n; i >= 1; --i) conj = conj * Permutation::transposition(i - 1, i);
  const ModelOperator u = represent(space, conj);
  const ModelOperator u_inv = represent(space, conj.inverse());
  return multiply(space, u, multiply(space, shifted, u_inv));
}

ModelOperator transition_R0(const ModelSpace& space, const ModelOperator& x) {
  if (x.max_slot() > 1)
    throw ContractError("transition_R0: operator must live on slots {0,1}");
  return shift_endo(space, conditional_E(space, x, 0), 0);
}

std::pair<Rat, Rat> antisymmetrizer_check(const ModelSpace& space,
                                          const ThomaParams& params, const Rat& t,
                                          int n, int enumeration_bound) {
  if (t == 0) throw ContractError("antisymmetrizer_check: t must be nonzero");
  if (n < 1) throw ContractError("antisymmetrizer_check: n must be positive");
  if (n > enumeration_bound)
    throw ResourceCapError("antisymmetrizer_check: n exceeds enumeration bound");
  if (n > space.slot_count())
    throw ContractError("antisymmetrizer_check: window too small");

  ModelOperator projections = ModelOperator::identity();
  for (int i = 0; i < n; ++i)
    projections = multiply(space, projections, spectral_indicator(space, i, t));

  const bool antisymmetric = t > 0;
  Rat acc = 0;
  for_each_permutation(n, [&](const Permutation& p) {
    const Rat s = antisymmetric ? Rat(sgn(p)) : Rat(1);
    acc += s * trace(space, multiply(space, represent(space, p), projections));
  });
  Int fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  const Rat lhs = acc / Rat(fact);

  const Rat nu = atom_multiplicity(spectral_measure(params), t);
  Rat falling = 1;
  for (int i = 0; i < n; ++i) falling *= nu - i;
  const Rat rhs = rat_pow(rat_abs(t), n) / Rat(fact) * falling;
  return {lhs, rhs};
}

ModelOperator realize_En(const ModelSpace& space, const ThomaParams& params,
                         const EnNormalForm& form) {
  const ThomaMeasure mu = spectral_measure(params);
  Rat scalar = 1;
  for (const auto& [k, e] : form.c_exponents) scalar *= rat_pow(moment(mu, k - 1), e);
  ModelOperator out = represent(space, form.derivative);
  for (const auto& [slot, e] : form.a_factors) {
    std::vector<Rat> values = space.cycle_diagonal();
    for (auto& v : values) v = rat_pow(v, e);
    out = multiply(space, out,
                   ModelOperator::monomial(1, Permutation(), {{slot, std::move(values)}}));
  }
  return scalar * out;
}

}  // namespace thomalab
