#pragma once

#include <map>
#include <utility>
#include <vector>

#include "thomalab/permutation.hpp"
#include "thomalab/rational.hpp"
#include "thomalab/thoma.hpp"

namespace thomalab {

enum class LabelKind { Plus, Minus, Zero };

struct ModelLabel {
  LabelKind kind;
  Rat weight;  // per-label density weight; 0 for the limit-mode zero label
};

// How the zero-weight sector is materialized. Finite uses ell explicit
// labels of weight c/ell; Limit uses a single label carrying mass c whose
// contraction value is 0, the exact limit of the finite construction.
enum class ZeroPart { None, Finite, Limit };

/// Finite truncation of the infinite tensor product substrate: an ordered
/// label list with density weights and a fixed number of tensor slots.
class ModelSpace {
 public:
  static ModelSpace from_params(const ThomaParams& params, int slot_count,
                                int zero_labels = 1);
  static ModelSpace from_params_limit(const ThomaParams& params, int slot_count);

  int label_count() const { return static_cast<int>(labels_.size()); }
  int slot_count() const { return slot_count_; }
  const std::vector<ModelLabel>& labels() const { return labels_; }
  ZeroPart zero_part() const { return zero_part_; }

  // State mass carried by the label (the weight, or c in limit mode).
  Rat mass(int label) const;
  // Signed weight picked up per contraction step: +w on Plus, -w on Minus,
  // c/ell on a finite zero label and 0 on the limit zero label.
  Rat step_value(int label) const;
  // Eigenvalue of the limit 2-cycle on the label: +w, -w, or 0 on Zero.
  Rat cycle_eigenvalue(int label) const;

  bool dense_realizable() const { return zero_part_ != ZeroPart::Limit; }

  // Same labels and state on a different number of tensor slots.
  ModelSpace with_slot_count(int slot_count) const;

  std::vector<Rat> cycle_diagonal() const;           // values of A on the labels
  std::vector<Rat> indicator_diagonal(const Rat& t) const;  // chi_{t}(A) values

  bool operator==(const ModelSpace&) const = default;

 private:
  std::vector<ModelLabel> labels_;
  ZeroPart zero_part_ = ZeroPart::None;
  Rat zero_total_ = 0;  // c
  int slot_count_ = 0;
};

/// Finite sum of monomials coeff * (signed flip of a slot permutation) *
/// (per-slot diagonals applied to the incoming basis vector). Closed under
/// products, adjoints and slot contractions; kept in canonical merged form.
class ModelOperator {
 public:
  using Diag = std::map<int, std::vector<Rat>>;  // slot -> value per label
  using Key = std::pair<Permutation, Diag>;

  ModelOperator() = default;  // zero operator

  static ModelOperator identity();
  static ModelOperator scalar(const Rat& value);
  static ModelOperator monomial(const Rat& coeff, const Permutation& perm, Diag diag);

  const std::map<Key, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Scalar multiple of the identity? Fills *value when non-null.
  bool is_scalar(Rat* value = nullptr) const;
  int max_slot() const;

  ModelOperator& operator+=(const ModelOperator& other);
  ModelOperator& operator-=(const ModelOperator& other);
  ModelOperator& operator*=(const Rat& scalar);

  friend ModelOperator operator+(ModelOperator a, const ModelOperator& b) { return a += b; }
  friend ModelOperator operator-(ModelOperator a, const ModelOperator& b) { return a -= b; }
  friend ModelOperator operator*(const Rat& s, ModelOperator a) { return a *= s; }

  bool operator==(const ModelOperator&) const = default;

 private:
  void add_term(const Permutation& perm, Diag diag, const Rat& coeff);

  std::map<Key, Rat> terms_;
};

// The signed flip representation of a permutation of the slots.
ModelOperator represent(const ModelSpace& space, const Permutation& p);

ModelOperator multiply(const ModelSpace& space, const ModelOperator& x,
                       const ModelOperator& y);

ModelOperator adjoint(const ModelSpace& space, const ModelOperator& x);

// Product-state trace, computed orbit by orbit without dense enumeration.
Rat trace(const ModelSpace& space, const ModelOperator& x);

// Evaluates the product state on all slots > n; the result lives on slots
// {0..n}. n = -1 contracts everything to a scalar.
ModelOperator conditional_E(const ModelSpace& space, const ModelOperator& x, int n);

// Limit 2-cycle: diagonal at the slot with the cycle eigenvalues.
ModelOperator limit_cycle_A(const ModelSpace& space, int slot);

// Spectral projection of the limit 2-cycle onto eigenvalue t, as the exact
// label-class indicator diagonal at the slot.
ModelOperator spectral_indicator(const ModelSpace& space, int slot, const Rat& t);

// (1/N) * sum of represented transpositions (slot, j), j = 1..N, j != slot.
ModelOperator cesaro_A(const ModelSpace& space, int slot, int N);

// trace(x* x); exact squared L2 norm in the trace inner product.
Rat l2_norm_squared(const ModelSpace& space, const ModelOperator& x);

// Tensor shift endomorphisms: n = 0 shifts every slot by one; n >= 1 is
// the conjugated partial shift fixing the first n star generators.
ModelOperator shift_endo(const ModelSpace& space, const ModelOperator& x, int n);

// Transition operator of the Markov shift on the two-slot generator
// algebra: shift after contracting to slot 0.
ModelOperator transition_R0(const ModelSpace& space, const ModelOperator& x);

// lhs: trace of (anti)symmetrizer times the product of eigenvalue-t
// indicators at slots 0..n-1, by enumeration of the slot permutations
// (antisymmetrizer for t > 0, symmetrizer for t < 0);
// rhs: (|t|^n / n!) * nu (nu-1) ... (nu-n+1) with nu the atom multiplicity.
std::pair<Rat, Rat> antisymmetrizer_check(const ModelSpace& space,
                                          const ThomaParams& params, const Rat& t,
                                          int n, int enumeration_bound = 8);

// Realization of a symbolic normal form: represented derivative times
// central scalars times limit 2-cycle powers.
ModelOperator realize_En(const ModelSpace& space, const ThomaParams& params,
                         const EnNormalForm& form);

}  // namespace thomalab
