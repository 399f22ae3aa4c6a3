#pragma once

#include <vector>

#include "mqinv/matrix.hpp"

namespace mqinv {

/// Pfaffian of a skew-symmetric matrix by first-row expansion, memoized on
/// the set of remaining indices. pf of the 0x0 matrix is 1 (over Q).
/// Throws std::invalid_argument for odd or non-skew input.
Scalar pf(const ScalarMatrix& m);
Polynomial pf(const PolyMatrix& m);

/// P(X) = pf(X - X^t).
Scalar gen_pf(const ScalarMatrix& x);
Polynomial gen_pf(const PolyMatrix& x);

/// Coefficient of u_1^{k_1}...u_s^{k_s} in P(u_1 X_1 + ... + u_s X_s).
/// Requires k_i >= 1 and sum k_i = n/2.
Polynomial partial_linearization(const std::vector<PolyMatrix>& xs, const std::vector<int>& ks);
Polynomial partial_linearization(const std::vector<ScalarMatrix>& xs, const std::vector<int>& ks);

/// Block structure n = (n_1, ..., n_m) of an n x n matrix.
struct BlockLayout {
  std::vector<int> dims;

  int size() const;
  /// 0-based offset of block i (1-based).
  int offset(int block) const;
};

/// A matrix placed as the only nonzero block, at block position (p, q), 1-based.
template <class M>
struct PlacedBlock {
  M block;
  int p = 1;
  int q = 1;
};

/// The n x n matrix with `b.block` in position (p,q) and zeros elsewhere.
PolyMatrix embed_block(const BlockLayout& layout, const PlacedBlock<PolyMatrix>& b);
ScalarMatrix embed_block(const BlockLayout& layout, const PlacedBlock<ScalarMatrix>& b);

/// Block partial linearization of the pfaffian.
Polynomial bplp(const BlockLayout& layout, const std::vector<PlacedBlock<PolyMatrix>>& blocks,
                const std::vector<int>& ks);
Polynomial bplp(const BlockLayout& layout, const std::vector<PlacedBlock<ScalarMatrix>>& blocks,
                const std::vector<int>& ks);

}  // namespace mqinv
