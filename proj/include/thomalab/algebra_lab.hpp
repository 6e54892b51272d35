#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thomalab/permutation.hpp"
#include "thomalab/rational.hpp"
#include "thomalab/thoma.hpp"

namespace thomalab {

/// Rational-complex scalar. Real fixtures keep im = 0.
struct CRat {
  Rat re = 0;
  Rat im = 0;

  CRat() = default;
  CRat(int v) : re(v) {}  // NOLINT: implicit by design, mirrors Rat
  CRat(Rat r) : re(std::move(r)) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  CRat conj() const { return {re, -im}; }
  Rat abs2() const { return re * re + im * im; }

  CRat& operator+=(const CRat& o);
  CRat& operator-=(const CRat& o);
  CRat& operator*=(const CRat& o);
  CRat& operator/=(const CRat& o);

  friend CRat operator+(CRat a, const CRat& b) { return a += b; }
  friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
  friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
  friend CRat operator/(CRat a, const CRat& b) { return a /= b; }
  friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
  bool operator==(const CRat&) const = default;
};

std::string crat_to_string(const CRat& z);

// Square root in Q(i) when it exists.
std::optional<CRat> crat_sqrt(const CRat& z);

using CMatrix = std::vector<std::vector<CRat>>;

CMatrix cmat_zero(int n);
CMatrix cmat_identity(int n);
CMatrix cmat_add(const CMatrix& a, const CMatrix& b);
CMatrix cmat_sub(const CMatrix& a, const CMatrix& b);
CMatrix cmat_mul(const CMatrix& a, const CMatrix& b);
CMatrix cmat_scale(const CRat& s, const CMatrix& a);
CMatrix cmat_adjoint(const CMatrix& a);
CMatrix cmat_kron(const CMatrix& a, const CMatrix& b);
CMatrix cmat_unit(int n, int i, int j);  // matrix unit e_ij
bool cmat_is_zero(const CMatrix& a);
bool cmat_is_diagonal(const CMatrix& a);
// Largest entry magnitude, measured as max(|re|, |im|); exact.
Rat cmat_defect(const CMatrix& a);

// PSD test for a hermitian matrix by exact pivoted elimination.
bool cmat_is_psd(const CMatrix& a);

/// Row-echelon span of flattened matrices; membership and insertion are
/// exact Gaussian reductions. Rows are stored sparsely with unit leading
/// coefficients.
class MatrixSpan {
 public:
  explicit MatrixSpan(int dim) : dim_(dim) {}

  bool insert(const CMatrix& m);          // true if m enlarged the span
  bool contains(const CMatrix& m) const;
  // Residual of m after reduction against the span.
  std::vector<CRat> residual(const CMatrix& m) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }

 private:
  using SparseRow = std::vector<std::pair<int, CRat>>;  // sorted by index
  void reduce_inplace(std::vector<CRat>& v) const;

  int dim_;
  std::vector<SparseRow> rows_;  // leading entry first, scaled to 1
};

/// Finite-dimensional *-subalgebra of matrices together with the state it
/// lives under. The basis is linearly independent and spans a unital
/// algebra closed under adjoints.
struct TracialAlgebra {
  int dim = 0;                  // ambient matrix size
  std::vector<CMatrix> basis;
  CMatrix density;              // hermitian, trace one

  MatrixSpan span() const;
};

// State of the algebra's density: psi(x) = Tr(density x).
CRat state_value(const TracialAlgebra& alg, const CMatrix& x);

// Generates the unital *-algebra spanned by the generators, closing the
// span under right multiplication; throws if it fails to stabilize within
// max_rounds growth sweeps.
TracialAlgebra close_algebra(int dim, const std::vector<CMatrix>& generators,
                             const CMatrix& density, int max_rounds = 64);

TracialAlgebra scalar_algebra(int dim, const CMatrix& density);

// Conjugated algebra u A u^*.
TracialAlgebra conjugate_algebra(const TracialAlgebra& alg, const CMatrix& u);

/// State-preserving conditional expectation onto a subalgebra, computed as
/// the orthogonal projection in the inner product <a,b> = psi(a* b).
class ConditionalExpectation {
 public:
  ConditionalExpectation(const TracialAlgebra& ambient, const TracialAlgebra& sub);
  CMatrix operator()(const CMatrix& x) const;

 private:
  std::vector<CMatrix> sub_basis_;
  std::vector<CMatrix> pairing_;              // density * basis^* per element
  std::vector<std::vector<CRat>> gram_inv_;
  int dim_;
};

CMatrix conditional_expectation(const TracialAlgebra& alg, const TracialAlgebra& sub,
                                const CMatrix& x);

struct CommutingSquareReport {
  bool holds = false;
  std::map<std::string, bool> checked_conditions;  // "ii", "iii", "iv", "v"
  Rat max_defect = 0;
};

// Checks E_{B1} E_{B2} = E_N on a spanning set of M, cross-validated by the
// interchange, intersection and sandwich characterizations.
CommutingSquareReport is_commuting_square(const TracialAlgebra& N,
                                          const TracialAlgebra& B1,
                                          const TracialAlgebra& B2,
                                          const TracialAlgebra& M,
                                          unsigned long sample_seed = 1);

struct DiscretenessReport {
  bool ok = false;
  bool preconditions_hold = false;
  bool normal = false;
  std::string detail;

  struct Atom {
    CRat value;
    Rat mass;                     // psi of the spectral projection
    bool lower_estimate;          // |value| * mass <= |psi(chi u)|
    bool upper_estimate;          // |psi(chi u)|^2 <= mass^3
    bool mass_bound;              // mass >= |value|^2
    std::optional<Rat> multiplicity;  // mass/|value| when |value| is rational
    bool integer_multiplicity;    // multiplicity in N (false when n/a)
  };
  std::vector<Atom> atoms;
  Rat zero_mass = 0;
};

// Verifies the hypotheses (unitary in the centralizer implementing a
// commuting square over the scalars), the normality of E_{M0}(u), and the
// spectral estimates for every nonzero eigen-atom.
DiscretenessReport discreteness_check(const TracialAlgebra& M,
                                      const TracialAlgebra& M0, const CMatrix& u);

enum class IndependenceMode { Full, Order };

// Factorization test E_N(xy) = E_N(x) E_N(y) over the subalgebras
// generated by N together with disjoint (resp. ordered) index sets.
bool independence_check(const TracialAlgebra& alg, const TracialAlgebra& N,
                        const std::vector<TracialAlgebra>& families,
                        IndependenceMode mode);

struct MarkovTraceReport {
  bool is_markov = false;
  // First violating pair when not Markov.
  std::optional<std::pair<CycleType, int>> witness;
};

// Def of a Markov trace checked literally: chi(g s_n) = chi(g) chi(s_n)
// for all g in S_n, n <= nmax, with chi the character of the parameters.
MarkovTraceReport markov_trace_check(const ThomaParams& params, int nmax,
                                     int enumeration_bound = 6);

// Minimal polynomial of a matrix (monic coefficient list, low degree
// first).
std::vector<CRat> minimal_polynomial(const CMatrix& m);

}  // namespace thomalab
