#include "thomalab/algebra_lab.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "thomalab/errors.hpp"

namespace thomalab {

CRat& CRat::operator+=(const CRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CRat& CRat::operator-=(const CRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

CRat& CRat::operator*=(const CRat& o) {
  const Rat r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = r;
  return *this;
}

CRat& CRat::operator/=(const CRat& o) {
  const Rat n = o.abs2();
  if (n == 0) throw ContractError("division by zero");
  const Rat r = (re * o.re + im * o.im) / n;
  im = (im * o.re - re * o.im) / n;
  re = r;
  return *this;
}

std::string crat_to_string(const CRat& z) {
  if (z.im == 0) return rat_to_string(z.re);
  return rat_to_string(z.re) + (z.im > 0 ? "+" : "") + rat_to_string(z.im) + "i";
}

namespace {

// Exact square root of a nonnegative rational, when it is one.
std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  const Int n = numerator(r), d = denominator(r);
  const Int sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rat(sn, sd);
}

}  // namespace

std::optional<CRat> crat_sqrt(const CRat& z) {
  if (z.is_zero()) return CRat();
  const auto norm = rat_sqrt(z.abs2());
  if (!norm) return std::nullopt;
  // (x+yi)^2 = z with x^2 = (re+|z|)/2 and y carrying the sign of im.
  const auto x2 = rat_sqrt((z.re + *norm) / 2);
  if (!x2) return std::nullopt;
  if (*x2 == 0) {
    const auto y2 = rat_sqrt(-z.re);
    if (!y2) return std::nullopt;
    return CRat(Rat(0), *y2);
  }
  const Rat y = z.im / (2 * *x2);
  CRat root(*x2, y);
  if (root * root == z) return root;
  return std::nullopt;
}

CMatrix cmat_zero(int n) { return CMatrix(n, std::vector<CRat>(n)); }

CMatrix cmat_identity(int n) {
  CMatrix m = cmat_zero(n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

CMatrix cmat_add(const CMatrix& a, const CMatrix& b) {
  CMatrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
  return r;
}

CMatrix cmat_sub(const CMatrix& a, const CMatrix& b) {
  CMatrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r[i][j] -= b[i][j];
  return r;
}

CMatrix cmat_mul(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.size();
  CMatrix r = cmat_zero(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        r[i][j] += a[i][k] * b[k][j];
      }
    }
  return r;
}

CMatrix cmat_scale(const CRat& s, const CMatrix& a) {
  CMatrix r = a;
  for (auto& row : r)
    for (auto& x : row) x *= s;
  return r;
}

CMatrix cmat_adjoint(const CMatrix& a) {
  const std::size_t n = a.size();
  CMatrix r = cmat_zero(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = a[j][i].conj();
  return r;
}

CMatrix cmat_kron(const CMatrix& a, const CMatrix& b) {
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  CMatrix r = cmat_zero(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      if (a[i][j].is_zero()) continue;
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) r[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
    }
  return r;
}

CMatrix cmat_unit(int n, int i, int j) {
  CMatrix m = cmat_zero(n);
  m[i][j] = 1;
  return m;
}

bool cmat_is_zero(const CMatrix& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

bool cmat_is_diagonal(const CMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j && !a[i][j].is_zero()) return false;
  return true;
}

Rat cmat_defect(const CMatrix& a) {
  Rat d = 0;
  for (const auto& row : a)
    for (const auto& x : row) d = std::max({d, rat_abs(x.re), rat_abs(x.im)});
  return d;
}

bool cmat_is_psd(const CMatrix& input) {
  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (input[i][j] != input[j][i].conj()) return false;
  CMatrix m = input;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = step;
    for (std::size_t i = step; i < n; ++i)
      if (m[i][i].re > m[pivot][pivot].re) pivot = i;
    if (m[pivot][pivot].re < 0) return false;
    if (m[pivot][pivot].re == 0) {
      for (std::size_t i = step; i < n; ++i)
        for (std::size_t j = step; j < n; ++j)
          if (!m[i][j].is_zero()) return false;
      return true;
    }
    std::swap(m[pivot], m[step]);
    for (auto& row : m) std::swap(row[pivot], row[step]);
    for (std::size_t i = step + 1; i < n; ++i) {
      if (m[i][step].is_zero()) continue;
      const CRat f = m[i][step] / m[step][step];
      for (std::size_t j = step; j < n; ++j) m[i][j] -= f * m[step][j];
    }
  }
  return true;
}

namespace {

std::vector<CRat> flatten(const CMatrix& m) {
  std::vector<CRat> v;
  v.reserve(m.size() * m.size());
  for (const auto& row : m)
    for (const auto& x : row) v.push_back(x);
  return v;
}

int leading_index(const std::vector<CRat>& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) return static_cast<int>(j);
  return -1;
}

}  // namespace

void MatrixSpan::reduce_inplace(std::vector<CRat>& v) const {
  for (const auto& row : rows_) {
    const CRat f = v[row.front().first];  // leading coefficient is 1
    if (f.is_zero()) continue;
    for (const auto& [j, value] : row) v[j] -= f * value;
  }
}

bool MatrixSpan::insert(const CMatrix& m) {
  std::vector<CRat> v = flatten(m);
  reduce_inplace(v);
  const int lead = leading_index(v);
  if (lead < 0) return false;
  SparseRow row;
  const CRat inv = CRat(1) / v[lead];
  for (std::size_t j = lead; j < v.size(); ++j)
    if (!v[j].is_zero()) row.emplace_back(static_cast<int>(j), v[j] * inv);
  rows_.push_back(std::move(row));
  return true;
}

bool MatrixSpan::contains(const CMatrix& m) const {
  std::vector<CRat> v = flatten(m);
  reduce_inplace(v);
  return leading_index(v) < 0;
}

std::vector<CRat> MatrixSpan::residual(const CMatrix& m) const {
  std::vector<CRat> v = flatten(m);
  reduce_inplace(v);
  return v;
}

MatrixSpan TracialAlgebra::span() const {
  MatrixSpan s(dim);
  for (const auto& b : basis) s.insert(b);
  return s;
}

CRat state_value(const TracialAlgebra& alg, const CMatrix& x) {
  CRat v;
  const CMatrix dx = cmat_mul(alg.density, x);
  for (std::size_t i = 0; i < dx.size(); ++i) v += dx[i][i];
  return v;
}

TracialAlgebra close_algebra(int dim, const std::vector<CMatrix>& generators,
                             const CMatrix& density, int max_rounds) {
  TracialAlgebra alg;
  alg.dim = dim;
  alg.density = density;
  MatrixSpan span(dim);

  std::vector<CMatrix> gens;
  for (const auto& g : generators) {
    gens.push_back(g);
    const CMatrix adj = cmat_adjoint(g);
    if (adj != g) gens.push_back(adj);
  }

  std::vector<CMatrix> worklist;
  const CMatrix one = cmat_identity(dim);
  if (span.insert(one)) {
    alg.basis.push_back(one);
    worklist.push_back(one);
  }
  int rounds = 0;
  while (!worklist.empty()) {
    if (++rounds > max_rounds * (dim * dim + 1))
      throw ResourceCapError("close_algebra: span did not stabilize");
    const CMatrix w = std::move(worklist.back());
    worklist.pop_back();
    for (const auto& g : gens) {
      CMatrix prod = cmat_mul(w, g);
      if (span.insert(prod)) {
        alg.basis.push_back(prod);
        worklist.push_back(std::move(prod));
      }
    }
  }
  // The span of right-multiplied words is automatically an algebra; keep
  // the adjoint closure honest by an explicit membership pass.
  for (const auto& b : alg.basis)
    if (!span.contains(cmat_adjoint(b)))
      throw ContractError("close_algebra: span is not adjoint-closed");
  return alg;
}

TracialAlgebra scalar_algebra(int dim, const CMatrix& density) {
  TracialAlgebra alg;
  alg.dim = dim;
  alg.density = density;
  alg.basis.push_back(cmat_identity(dim));
  return alg;
}

TracialAlgebra conjugate_algebra(const TracialAlgebra& alg, const CMatrix& u) {
  const CMatrix u_adj = cmat_adjoint(u);
  std::vector<CMatrix> gens;
  gens.reserve(alg.basis.size());
  for (const auto& b : alg.basis) gens.push_back(cmat_mul(u, cmat_mul(b, u_adj)));
  return close_algebra(alg.dim, gens, alg.density);
}

ConditionalExpectation::ConditionalExpectation(const TracialAlgebra& ambient,
                                               const TracialAlgebra& sub)
    : dim_(ambient.dim) {
  if (sub.dim != ambient.dim || sub.density != ambient.density)
    throw ContractError("conditional expectation: subalgebra lives under a different state");
  {
    MatrixSpan ambient_span = ambient.span();
    for (const auto& b : sub.basis)
      if (!ambient_span.contains(b))
        throw ContractError("conditional expectation: subalgebra is not contained");
  }
  sub_basis_ = sub.basis;
  for (const auto& b : sub_basis_)
    pairing_.push_back(cmat_mul(ambient.density, cmat_adjoint(b)));

  const int s = static_cast<int>(sub_basis_.size());
  // Gram matrix G_ij = psi(b_i^* b_j), inverted once by Gauss-Jordan.
  std::vector<std::vector<CRat>> g(s, std::vector<CRat>(2 * s));
  auto pair_with = [&](int i, const CMatrix& x) {
    CRat v;
    for (int p = 0; p < dim_; ++p)
      for (int q = 0; q < dim_; ++q) {
        if (pairing_[i][p][q].is_zero()) continue;
        v += pairing_[i][p][q] * x[q][p];
      }
    return v;
  };
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) g[i][j] = pair_with(i, sub_basis_[j]);
    g[i][s + i] = 1;
  }
  for (int col = 0; col < s; ++col) {
    int pivot = -1;
    for (int i = col; i < s; ++i)
      if (!g[i][col].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0)
      throw ContractError("conditional expectation: state is not faithful on the subalgebra");
    std::swap(g[col], g[pivot]);
    const CRat inv = CRat(1) / g[col][col];
    for (auto& x : g[col]) x *= inv;
    for (int i = 0; i < s; ++i) {
      if (i == col || g[i][col].is_zero()) continue;
      const CRat f = g[i][col];
      for (int j = 0; j < 2 * s; ++j) g[i][j] -= f * g[col][j];
    }
  }
  gram_inv_.assign(s, std::vector<CRat>(s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) gram_inv_[i][j] = g[i][s + j];
}

CMatrix ConditionalExpectation::operator()(const CMatrix& x) const {
  const int s = static_cast<int>(sub_basis_.size());
  std::vector<CRat> rhs(s);
  for (int i = 0; i < s; ++i) {
    CRat v;
    for (int p = 0; p < dim_; ++p)
      for (int q = 0; q < dim_; ++q) {
        if (pairing_[i][p][q].is_zero()) continue;
        v += pairing_[i][p][q] * x[q][p];
      }
    rhs[i] = v;
  }
  CMatrix out = cmat_zero(dim_);
  for (int i = 0; i < s; ++i) {
    CRat c;
    for (int j = 0; j < s; ++j) c += gram_inv_[i][j] * rhs[j];
    if (c.is_zero()) continue;
    for (int p = 0; p < dim_; ++p)
      for (int q = 0; q < dim_; ++q) out[p][q] += c * sub_basis_[i][p][q];
  }
  return out;
}

CMatrix conditional_expectation(const TracialAlgebra& alg, const TracialAlgebra& sub,
                                const CMatrix& x) {
  return ConditionalExpectation(alg, sub)(x);
}

CommutingSquareReport is_commuting_square(const TracialAlgebra& N,
                                          const TracialAlgebra& B1,
                                          const TracialAlgebra& B2,
                                          const TracialAlgebra& M,
                                          unsigned long sample_seed) {
  // Inclusion preconditions.
  MatrixSpan span_m = M.span();
  MatrixSpan span_b1 = B1.span();
  MatrixSpan span_b2 = B2.span();
  MatrixSpan span_n = N.span();
  for (const auto& b : N.basis)
    if (!span_b1.contains(b) || !span_b2.contains(b))
      throw ContractError("commuting square: N is not contained in B1 and B2");
  for (const auto* alg : {&B1, &B2})
    for (const auto& b : alg->basis)
      if (!span_m.contains(b))
        throw ContractError("commuting square: B1, B2 are not contained in M");

  const ConditionalExpectation e_n(M, N);
  const ConditionalExpectation e_b1(M, B1);
  const ConditionalExpectation e_b2(M, B2);

  CommutingSquareReport report;
  Rat defect = 0;
  auto record = [&](const CMatrix& residual) {
    defect = std::max(defect, cmat_defect(residual));
    return cmat_is_zero(residual);
  };

  // (ii) E_{B1}(B2) lands in N.
  bool ok_ii = true;
  for (const auto& y : B2.basis) {
    const auto res = span_n.residual(e_b1(y));
    for (const auto& c : res) {
      if (c.is_zero()) continue;
      ok_ii = false;
      defect = std::max({defect, rat_abs(c.re), rat_abs(c.im)});
    }
  }
  report.checked_conditions["ii"] = ok_ii;

  // (iii) E_{B1} E_{B2} = E_N on a spanning set of M.
  bool ok_iii = true;
  for (const auto& m : M.basis)
    ok_iii &= record(cmat_sub(e_b1(e_b2(m)), e_n(m)));
  report.checked_conditions["iii"] = ok_iii;

  // (iv) the two expectations commute and B1 meet B2 equals N.
  bool ok_iv = true;
  for (const auto& m : M.basis)
    ok_iv &= record(cmat_sub(e_b1(e_b2(m)), e_b2(e_b1(m))));
  {
    MatrixSpan sum(B1.dim);
    int rank_union = 0;
    for (const auto& b : B1.basis)
      if (sum.insert(b)) ++rank_union;
    for (const auto& b : B2.basis)
      if (sum.insert(b)) ++rank_union;
    const int intersection_dim =
        static_cast<int>(B1.basis.size() + B2.basis.size()) - rank_union;
    ok_iv &= intersection_dim == static_cast<int>(N.basis.size());
  }
  report.checked_conditions["iv"] = ok_iv;

  // (v) E_N(x y z) = E_N(x E_N(y) z) on sampled triples.
  bool ok_v = true;
  std::mt19937_64 rng(sample_seed);
  const int samples = 40;
  for (int trial = 0; trial < samples; ++trial) {
    const CMatrix& x = B1.basis[rng() % B1.basis.size()];
    const CMatrix& y = B2.basis[rng() % B2.basis.size()];
    const CMatrix& z = B1.basis[rng() % B1.basis.size()];
    const CMatrix lhs = e_n(cmat_mul(x, cmat_mul(y, z)));
    const CMatrix rhs = e_n(cmat_mul(x, cmat_mul(e_n(y), z)));
    ok_v &= record(cmat_sub(lhs, rhs));
  }
  report.checked_conditions["v"] = ok_v;

  report.max_defect = defect;
  report.holds = ok_ii && ok_iii && ok_iv && ok_v && defect == 0;
  return report;
}

std::vector<CRat> minimal_polynomial(const CMatrix& m) {
  const int d = static_cast<int>(m.size());
  std::vector<std::vector<CRat>> powers;   // flattened powers of m
  std::vector<std::vector<CRat>> echelon;  // reduced copies
  std::vector<std::vector<CRat>> combos;   // combination tracking
  std::vector<int> leads;

  CMatrix p = cmat_identity(d);
  for (int k = 0;; ++k) {
    if (k > d * d + 1) throw ContractError("minimal_polynomial: no dependence found");
    std::vector<CRat> v = flatten(p);
    std::vector<CRat> combo(k + 1);
    combo[k] = 1;
    // Reduce against the echelon rows, tracking the combination.
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      const CRat& c = v[leads[r]];
      if (c.is_zero()) continue;
      const CRat f = c / echelon[r][leads[r]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon[r][j];
      for (std::size_t j = 0; j < combos[r].size(); ++j) combo[j] -= f * combos[r][j];
    }
    const int lead = leading_index(v);
    if (lead < 0) {
      // combo gives the monic dependence: sum combo[j] m^j = 0.
      const CRat scale = CRat(1) / combo[k];
      std::vector<CRat> poly(k + 1);
      for (int j = 0; j <= k; ++j) poly[j] = combo[j] * scale;
      return poly;
    }
    echelon.push_back(std::move(v));
    combos.push_back(std::move(combo));
    leads.push_back(lead);
    powers.push_back(flatten(p));
    p = cmat_mul(p, m);
  }
}

namespace {

std::optional<std::vector<CRat>> polynomial_roots(std::vector<CRat> poly) {
  // poly is monic, lowest degree first. Returns all roots when they can be
  // extracted exactly over Q(i); fails otherwise.
  std::vector<CRat> roots;
  while (poly.size() > 1) {
    const std::size_t deg = poly.size() - 1;
    if (deg == 1) {
      roots.push_back(-poly[0]);
      break;
    }
    if (deg == 2) {
      const CRat b = poly[1], c = poly[0];
      const auto s = crat_sqrt(b * b - CRat(4) * c);
      if (!s) return std::nullopt;
      roots.push_back((-b + *s) / CRat(2));
      roots.push_back((-b - *s) / CRat(2));
      break;
    }
    // Peel a rational root of a real polynomial by divisor search.
    bool real = true;
    for (const auto& c : poly) real &= c.is_real();
    if (!real) return std::nullopt;
    if (poly[0].is_zero()) {
      roots.push_back(CRat());
    } else {
      Int common_den = 1;
      for (const auto& c : poly) {
        const Int den = denominator(c.re);
        common_den = common_den / boost::multiprecision::gcd(common_den, den) * den;
      }
      const Int a0 = boost::multiprecision::abs(numerator(Rat(poly[0].re * common_den)));
      const Int an = boost::multiprecision::abs(numerator(Rat(poly.back().re * common_den)));
      auto divisors = [](Int x) -> std::optional<std::vector<Int>> {
        std::vector<Int> out;
        Int i = 1;
        int steps = 0;
        for (; i * i <= x; ++i) {
          if (++steps > 2000000) return std::nullopt;
          if (x % i == 0) {
            out.push_back(i);
            out.push_back(x / i);
          }
        }
        return out;
      };
      const auto dp = divisors(a0), dq = divisors(an);
      if (!dp || !dq) return std::nullopt;
      std::optional<Rat> found;
      for (const Int& p : *dp) {
        for (const Int& q : *dq) {
          for (int sign : {1, -1}) {
            const Rat cand(sign * p, q);
            Rat value = 0;
            for (std::size_t j = poly.size(); j-- > 0;) value = value * cand + poly[j].re;
            if (value == 0) {
              found = cand;
              break;
            }
          }
          if (found) break;
        }
        if (found) break;
      }
      if (!found) return std::nullopt;
      roots.emplace_back(*found);
    }
    // Synthetic division by (x - root).
    const CRat r = roots.back();
    std::vector<CRat> quotient(poly.size() - 1);
    CRat carry = poly.back();
    for (std::size_t j = poly.size() - 1; j-- > 0;) {
      quotient[j] = carry;
      carry = poly[j] + carry * r;
    }
    if (!carry.is_zero()) return std::nullopt;
    poly = std::move(quotient);
  }
  return roots;
}

}  // namespace

DiscretenessReport discreteness_check(const TracialAlgebra& M,
                                      const TracialAlgebra& M0, const CMatrix& u) {
  DiscretenessReport report;

  // Hypotheses: unitary, centralizer, commuting square over the scalars.
  if (cmat_mul(cmat_adjoint(u), u) != cmat_identity(M.dim)) {
    report.detail = "u is not unitary";
    return report;
  }
  for (const auto& b : M.basis)
    if (state_value(M, cmat_mul(u, b)) != state_value(M, cmat_mul(b, u))) {
      report.detail = "u is not in the centralizer of the state";
      return report;
    }
  const TracialAlgebra scalars = scalar_algebra(M.dim, M.density);
  const TracialAlgebra conj = conjugate_algebra(M0, u);
  const CommutingSquareReport cs = is_commuting_square(scalars, M0, conj, M);
  if (!cs.holds) {
    report.detail = "M0 and u M0 u* do not form a commuting square over the scalars";
    return report;
  }
  report.preconditions_hold = true;

  const CMatrix e = conditional_expectation(M, M0, u);
  report.normal =
      cmat_mul(e, cmat_adjoint(e)) == cmat_mul(cmat_adjoint(e), e);
  if (!report.normal) {
    report.detail = "E_{M0}(u) is not normal";
    return report;
  }

  // Eigen-atoms: read a diagonal compression directly, otherwise factor the
  // minimal polynomial exactly.
  std::vector<std::pair<CRat, CMatrix>> spectral;  // value -> projection
  if (cmat_is_diagonal(e)) {
    std::map<std::pair<Rat, Rat>, CMatrix> groups;
    for (int i = 0; i < M.dim; ++i) {
      const CRat& v = e[i][i];
      auto [it, fresh] = groups.try_emplace({v.re, v.im}, cmat_zero(M.dim));
      it->second[i][i] = 1;
    }
    for (auto& [key, proj] : groups)
      spectral.emplace_back(CRat(key.first, key.second), std::move(proj));
  } else {
    const auto poly = minimal_polynomial(e);
    const auto roots = polynomial_roots(poly);
    if (!roots) {
      report.detail = "spectrum extraction failed: minimal polynomial does not split over Q(i)";
      return report;
    }
    std::set<std::pair<Rat, Rat>> distinct;
    for (const auto& r : *roots)
      if (!distinct.insert({r.re, r.im}).second) {
        report.detail = "minimal polynomial of a normal contraction must be squarefree";
        return report;
      }
    for (const auto& r : *roots) {
      CMatrix proj = cmat_identity(M.dim);
      for (const auto& s : *roots) {
        if (s == r) continue;
        proj = cmat_mul(proj, cmat_scale(CRat(1) / (r - s),
                                         cmat_sub(e, cmat_scale(s, cmat_identity(M.dim)))));
      }
      spectral.emplace_back(r, std::move(proj));
    }
  }

  report.ok = true;
  for (const auto& [value, proj] : spectral) {
    const CRat mass_c = state_value(M, proj);
    if (!mass_c.is_real()) {
      report.ok = false;
      report.detail = "spectral projection has non-real mass";
      return report;
    }
    const Rat mass = mass_c.re;
    if (value.is_zero()) {
      report.zero_mass += mass;
      continue;
    }
    DiscretenessReport::Atom atom;
    atom.value = value;
    atom.mass = mass;
    const CRat mixed = state_value(M, cmat_mul(proj, u));
    const Rat mixed2 = mixed.abs2();
    atom.lower_estimate = value.abs2() * mass * mass <= mixed2;
    atom.upper_estimate = mixed2 <= mass * mass * mass;
    atom.mass_bound = mass >= value.abs2();
    if (value.is_real() || rat_sqrt(value.abs2())) {
      const Rat abs_value = value.is_real() ? rat_abs(value.re) : *rat_sqrt(value.abs2());
      atom.multiplicity = mass / abs_value;
      atom.integer_multiplicity = rat_is_natural(*atom.multiplicity);
    } else {
      atom.integer_multiplicity = false;
    }
    report.ok &= atom.lower_estimate && atom.upper_estimate && atom.mass_bound;
    report.atoms.push_back(std::move(atom));
  }
  if (!report.ok) report.detail = "a spectral estimate failed";
  return report;
}

bool independence_check(const TracialAlgebra& alg, const TracialAlgebra& N,
                        const std::vector<TracialAlgebra>& families,
                        IndependenceMode mode) {
  const int m = static_cast<int>(families.size());
  if (m <= 1) return true;
  const ConditionalExpectation e_n(alg, N);

  std::map<unsigned, TracialAlgebra> generated;
  auto algebra_of = [&](unsigned mask) -> const TracialAlgebra& {
    auto it = generated.find(mask);
    if (it != generated.end()) return it->second;
    std::vector<CMatrix> gens = N.basis;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i))
        gens.insert(gens.end(), families[i].basis.begin(), families[i].basis.end());
    return generated.emplace(mask, close_algebra(alg.dim, gens, alg.density))
        .first->second;
  };

  for (unsigned j = 1; j < (1u << m); ++j)
    for (unsigned k = 1; k < (1u << m); ++k) {
      if (j & k) continue;
      if (mode == IndependenceMode::Order) {
        // Require max(J) < min(K).
        int max_j = -1, min_k = m;
        for (int i = 0; i < m; ++i) {
          if (j & (1u << i)) max_j = i;
          if (k & (1u << i)) min_k = std::min(min_k, i);
        }
        if (max_j >= min_k) continue;
      }
      const TracialAlgebra& aj = algebra_of(j);
      const TracialAlgebra& ak = algebra_of(k);
      for (const auto& x : aj.basis)
        for (const auto& y : ak.basis) {
          const CMatrix lhs = e_n(cmat_mul(x, y));
          const CMatrix rhs = cmat_mul(e_n(x), e_n(y));
          if (lhs != rhs) return false;
        }
    }
  return true;
}

MarkovTraceReport markov_trace_check(const ThomaParams& params, int nmax,
                                     int enumeration_bound) {
  if (nmax > enumeration_bound)
    throw ResourceCapError("markov_trace_check: nmax exceeds enumeration bound");
  MarkovTraceReport report;
  report.is_markov = true;
  for (int n = 1; n <= nmax && report.is_markov; ++n) {
    const Permutation sn = Permutation::transposition(n - 1, n);
    const Rat chi_sn = character(params, sn);
    for_each_permutation(n, [&](const Permutation& g) {
      if (!report.is_markov) return;
      if (character(params, g * sn) != character(params, g) * chi_sn) {
        report.is_markov = false;
        report.witness = {cycle_type(g), n};
      }
    });
  }
  return report;
}

}  // namespace thomalab
