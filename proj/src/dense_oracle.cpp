#include "thomalab/dense_oracle.hpp"

#include <algorithm>

#include "thomalab/errors.hpp"

namespace thomalab {

namespace {

std::vector<int> decode(long index, int base, int digits) {
  std::vector<int> out(digits);
  for (int s = 0; s < digits; ++s) {
    out[s] = static_cast<int>(index % base);
    index /= base;
  }
  return out;
}

long encode(const std::vector<int>& digits, int base) {
  long index = 0;
  for (int s = static_cast<int>(digits.size()) - 1; s >= 0; --s)
    index = index * base + digits[s];
  return index;
}

// Sign of the permutation induced on the Minus-labeled slots of the
// multi-index, by explicit inversion counting: slot s's label moves to
// slot inv(s), and the sign is the parity of the rearrangement of the
// Minus-carrying slots.
int flip_sign(const ModelSpace& space, const Permutation& inv, const std::vector<int>& labels) {
  std::vector<int> targets;
  for (int s = 0; s < static_cast<int>(labels.size()); ++s)
    if (space.labels()[labels[s]].kind == LabelKind::Minus) targets.push_back(inv(s));
  int inversions = 0;
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] > targets[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

long dense_dimension(const ModelSpace& space, const DenseOracleConfig& cfg) {
  if (!space.dense_realizable())
    throw ContractError("dense oracle: limit-mode zero part has no matrix model");
  long dim = 1;
  for (int s = 0; s < space.slot_count(); ++s) {
    dim *= space.label_count();
    if (dim > cfg.max_dim) throw ResourceCapError("dense oracle: dimension cap exceeded");
  }
  return dim;
}

RatMatrix dense_oracle(const ModelSpace& space, const ModelOperator& x,
                       const DenseOracleConfig& cfg) {
  const long dim = dense_dimension(space, cfg);
  const int base = space.label_count();
  const int slots = space.slot_count();
  RatMatrix m(dim, std::vector<Rat>(dim, 0));
  for (const auto& [key, coeff] : x.terms()) {
    const auto& [sigma, diag] = key;
    const Permutation inv = sigma.inverse();
    for (long col = 0; col < dim; ++col) {
      const std::vector<int> labels = decode(col, base, slots);
      Rat entry = coeff;
      for (const auto& [slot, values] : diag) {
        entry *= values[labels[slot]];
        if (entry == 0) break;
      }
      if (entry == 0) continue;
      entry *= flip_sign(space, inv, labels);
      // The flip drags the label at slot s to slot inv(s), so the image
      // multi-index reads the source at sigma(s).
      std::vector<int> moved(slots);
      for (int s = 0; s < slots; ++s) moved[s] = labels[sigma(s)];
      m[encode(moved, base)][col] += entry;
    }
  }
  return m;
}

RatMatrix dense_identity(long dim) {
  RatMatrix m(dim, std::vector<Rat>(dim, 0));
  for (long i = 0; i < dim; ++i) m[i][i] = 1;
  return m;
}

RatMatrix dense_multiply(const RatMatrix& x, const RatMatrix& y) {
  const long rows = static_cast<long>(x.size());
  const long inner = static_cast<long>(y.size());
  if (rows == 0 || inner == 0 || static_cast<long>(x[0].size()) != inner)
    throw ContractError("dense_multiply: shape mismatch");
  const long cols = static_cast<long>(y[0].size());
  RatMatrix out(rows, std::vector<Rat>(cols, 0));
  for (long k = 0; k < inner; ++k)
    for (long j = 0; j < cols; ++j) {
      const Rat& ykj = y[k][j];
      if (ykj == 0) continue;
      for (long i = 0; i < rows; ++i) {
        if (x[i][k] == 0) continue;
        out[i][j] += x[i][k] * ykj;
      }
    }
  return out;
}

Rat dense_trace(const ModelSpace& space, const RatMatrix& m) {
  const int base = space.label_count();
  const int slots = space.slot_count();
  Rat total = 0;
  for (long i = 0; i < static_cast<long>(m.size()); ++i) {
    if (m[i][i] == 0) continue;
    Rat w = 1;
    for (int label : decode(i, base, slots)) w *= space.mass(label);
    total += w * m[i][i];
  }
  return total;
}

RatMatrix dense_conditional(const ModelSpace& space, const RatMatrix& m, int n) {
  if (n < -1 || n >= space.slot_count())
    throw ContractError("dense_conditional: level out of range");
  const int base = space.label_count();
  const long low_dim = [&] {
    long d = 1;
    for (int s = 0; s <= n; ++s) d *= base;
    return d;
  }();
  const long high_dim = static_cast<long>(m.size()) / low_dim;
  RatMatrix out(low_dim, std::vector<Rat>(low_dim, 0));
  for (long r = 0; r < high_dim; ++r) {
    Rat w = 1;
    for (int label : decode(r, base, space.slot_count() - n - 1)) w *= space.mass(label);
    for (long p = 0; p < low_dim; ++p)
      for (long q = 0; q < low_dim; ++q) {
        const Rat& entry = m[p + r * low_dim][q + r * low_dim];
        if (entry != 0) out[p][q] += w * entry;
      }
  }
  return out;
}

}  // namespace thomalab
