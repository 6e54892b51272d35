#pragma once

#include <vector>

#include "thomalab/rational.hpp"
#include "thomalab/tensor_model.hpp"

namespace thomalab {

// Brute-force matrix realization used to validate every combinatorial path.
// Basis: multi-indices over the labels, slot 0 the least significant digit.

struct DenseOracleConfig {
  long max_dim = 243;  // refuse label_count^slot_count above this
};

using RatMatrix = std::vector<std::vector<Rat>>;  // [row][col]

long dense_dimension(const ModelSpace& space, const DenseOracleConfig& cfg = {});

RatMatrix dense_oracle(const ModelSpace& space, const ModelOperator& x,
                       const DenseOracleConfig& cfg = {});

RatMatrix dense_identity(long dim);
RatMatrix dense_multiply(const RatMatrix& x, const RatMatrix& y);

// Trace against the explicit product density matrix.
Rat dense_trace(const ModelSpace& space, const RatMatrix& m);

// Evaluates the state on all slots > n; returns the matrix on the first
// n+1 slots.
RatMatrix dense_conditional(const ModelSpace& space, const RatMatrix& m, int n);

}  // namespace thomalab
