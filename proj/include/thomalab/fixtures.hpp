#pragma once

#include <vector>

#include "thomalab/algebra_lab.hpp"
#include "thomalab/dense_oracle.hpp"
#include "thomalab/tensor_model.hpp"

namespace thomalab {

CMatrix cmat_from_rat(const RatMatrix& m);

// Diagonal density of the product state on the dense basis.
CMatrix product_density(const ModelSpace& space, const DenseOracleConfig& cfg = {});

// Matrix algebra generated by model operators inside the dense realization.
TracialAlgebra model_algebra(const ModelSpace& space,
                             const std::vector<ModelOperator>& generators,
                             const DenseOracleConfig& cfg = {});

/// The two-factor flip fixture: full matrices tensor full matrices with a
/// diagonal product state; the flip unitary conditioned onto the left
/// factor compresses to the diagonal of the weights.
struct FlipFixture {
  TracialAlgebra ambient;  // both factors
  TracialAlgebra left;     // left factor
  TracialAlgebra right;    // flip conjugate of the left factor
  CMatrix flip;
};

FlipFixture flip_fixture(const std::vector<Rat>& weights);

/// One cell of the triangular tower realized in the dense model at level k:
/// N sits under B1 and its shift B2 inside M, and the cell must form a
/// commuting square.
struct TowerCell {
  TracialAlgebra N, B1, B2, M;
};

// Requires slot_count >= k + 2 and a dense-realizable space.
TowerCell tower_cell(const ModelSpace& space, int k, const DenseOracleConfig& cfg = {});

}  // namespace thomalab
