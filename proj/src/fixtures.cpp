#include "thomalab/fixtures.hpp"

#include "thomalab/errors.hpp"

namespace thomalab {

CMatrix cmat_from_rat(const RatMatrix& m) {
  CMatrix out(m.size(), std::vector<CRat>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = CRat(m[i][j]);
  return out;
}

CMatrix product_density(const ModelSpace& space, const DenseOracleConfig& cfg) {
  const long dim = dense_dimension(space, cfg);
  CMatrix d = cmat_zero(static_cast<int>(dim));
  for (long i = 0; i < dim; ++i) {
    Rat w = 1;
    long index = i;
    for (int s = 0; s < space.slot_count(); ++s) {
      w *= space.mass(static_cast<int>(index % space.label_count()));
      index /= space.label_count();
    }
    d[i][i] = CRat(w);
  }
  return d;
}

TracialAlgebra model_algebra(const ModelSpace& space,
                             const std::vector<ModelOperator>& generators,
                             const DenseOracleConfig& cfg) {
  std::vector<CMatrix> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back(cmat_from_rat(dense_oracle(space, g, cfg)));
  return close_algebra(static_cast<int>(dense_dimension(space, cfg)), gens,
                       product_density(space, cfg));
}

FlipFixture flip_fixture(const std::vector<Rat>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 1) throw ContractError("flip_fixture: needs at least one weight");
  Rat sum = 0;
  for (const auto& w : weights) sum += w;
  if (sum != 1) throw ContractError("flip_fixture: weights must sum to one");

  CMatrix d = cmat_zero(n);
  for (int i = 0; i < n; ++i) d[i][i] = CRat(weights[i]);
  const CMatrix density = cmat_kron(d, d);
  const CMatrix one = cmat_identity(n);

  FlipFixture f;
  f.ambient.dim = f.left.dim = f.right.dim = n * n;
  f.ambient.density = f.left.density = f.right.density = density;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      f.left.basis.push_back(cmat_kron(cmat_unit(n, i, j), one));
      f.right.basis.push_back(cmat_kron(one, cmat_unit(n, i, j)));
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          f.ambient.basis.push_back(cmat_kron(cmat_unit(n, i, j), cmat_unit(n, k, l)));
    }

  f.flip = cmat_zero(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CMatrix term = cmat_kron(cmat_unit(n, i, j), cmat_unit(n, j, i));
      f.flip = cmat_add(f.flip, term);
    }
  return f;
}

TowerCell tower_cell(const ModelSpace& space, int k, const DenseOracleConfig& cfg) {
  if (k < 0 || k + 2 > space.slot_count())
    throw ContractError("tower_cell: level does not fit the slot window");
  auto coxeter = [&](int i) {
    return represent(space, Permutation::transposition(i - 1, i));
  };
  std::vector<ModelOperator> n_gens, b1_gens, b2_gens, m_gens;
  b1_gens.push_back(limit_cycle_A(space, 0));
  b2_gens.push_back(limit_cycle_A(space, 1));
  m_gens.push_back(limit_cycle_A(space, 0));
  for (int i = 1; i <= k; ++i) {
    b1_gens.push_back(coxeter(i));
    b2_gens.push_back(coxeter(i + 1));
    m_gens.push_back(coxeter(i));
  }
  m_gens.push_back(coxeter(k + 1));
  if (k >= 1) n_gens.push_back(limit_cycle_A(space, 1));
  for (int i = 2; i <= k; ++i) n_gens.push_back(coxeter(i));

  TowerCell cell;
  cell.B1 = model_algebra(space, b1_gens, cfg);
  cell.B2 = model_algebra(space, b2_gens, cfg);
  cell.M = model_algebra(space, m_gens, cfg);
  cell.N = n_gens.empty() ? scalar_algebra(cell.M.dim, cell.M.density)
                          : model_algebra(space, n_gens, cfg);
  return cell;
}

}  // namespace thomalab
