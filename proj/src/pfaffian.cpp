#include "mqinv/pfaffian.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace mqinv {

namespace {

Field field_of(const ScalarMatrix& m) { return m.rows() ? m(0, 0).field() : Field::rationals(); }
Field field_of(const PolyMatrix& m) { return m.rows() ? m(0, 0).field() : Field::rationals(); }

Scalar one_of(Field f, const Scalar*) { return f.one(); }
Polynomial one_of(Field f, const Polynomial*) { return Polynomial::constant(f, 1); }
Scalar zero_of(Field f, const Scalar*) { return f.zero(); }
Polynomial zero_of(Field f, const Polynomial*) { return Polynomial(f); }

bool is_zero(const Scalar& x) { return x.is_zero(); }
bool is_zero(const Polynomial& x) { return x.is_zero(); }

template <class T>
void require_skew(const Matrix<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("pfaffian needs a square matrix, got " + m.shape());
  if (m.rows() % 2 != 0) throw std::invalid_argument("pfaffian needs even size, got " + m.shape());
  if (m.rows() > 40) throw std::invalid_argument("pfaffian limited to 40x40");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!is_zero(m(i, i))) throw std::invalid_argument("pfaffian input has a nonzero diagonal entry");
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (!(m(i, j) == -m(j, i))) throw std::invalid_argument("pfaffian input is not skew-symmetric");
    }
  }
}

template <class T>
class PfaffianExpansion {
 public:
  PfaffianExpansion(const Matrix<T>& m, std::function<void(T&)> prune) : m_(m), prune_(std::move(prune)) {
    const Field f = field_of(m);
    one_ = one_of(f, static_cast<const T*>(nullptr));
    zero_ = zero_of(f, static_cast<const T*>(nullptr));
  }

  T run() {
    const std::size_t n = m_.rows();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return solve(all);
  }

 private:
  const T& solve(std::uint64_t mask) {
    if (mask == 0) return one_;
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    const int i = std::countr_zero(mask);
    const std::uint64_t rest = mask & ~(std::uint64_t{1} << i);
    T acc = zero_;
    bool positive = true;
    for (std::uint64_t r = rest; r; r &= r - 1) {
      const int j = std::countr_zero(r);
      const T& entry = m_(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!is_zero(entry)) {
        const T& sub = solve(rest & ~(std::uint64_t{1} << j));
        if (!is_zero(sub)) {
          if (positive) acc += entry * sub;
          else acc -= entry * sub;
        }
      }
      positive = !positive;
    }
    if (prune_) prune_(acc);
    return memo_.emplace(mask, std::move(acc)).first->second;
  }

  const Matrix<T>& m_;
  std::function<void(T&)> prune_;
  std::unordered_map<std::uint64_t, T> memo_;
  T one_;
  T zero_;
};

template <class T>
T pf_impl(const Matrix<T>& m, std::function<void(T&)> prune = nullptr) {
  require_skew(m);
  return PfaffianExpansion<T>(m, std::move(prune)).run();
}

template <class T>
Matrix<T> skew_part(const Matrix<T>& x) {
  if (!x.is_square()) throw std::invalid_argument("generalized pfaffian needs a square matrix, got " + x.shape());
  if (x.rows() % 2 != 0) throw std::invalid_argument("generalized pfaffian needs even size, got " + x.shape());
  return x - x.transpose();
}

void check_linearization_args(std::size_t count, std::size_t n, const std::vector<int>& ks) {
  if (count == 0) throw std::invalid_argument("partial linearization needs at least one matrix");
  if (count != ks.size()) throw std::invalid_argument("partial linearization: matrix and exponent counts differ");
  if (n % 2 != 0) throw std::invalid_argument("partial linearization needs even size");
  long total = 0;
  for (int k : ks) {
    if (k < 1) throw std::invalid_argument("partial linearization exponents must be positive");
    total += k;
  }
  if (static_cast<std::size_t>(2 * total) != n) {
    throw std::invalid_argument("partial linearization needs sum k_i = n/2 (n=" + std::to_string(n) +
                                ", sum=" + std::to_string(total) + ")");
  }
}

// Drop terms whose exponent of some u_i exceeds k_i: they cannot contribute
// to the target coefficient.
void prune_aux(Polynomial& p, const std::vector<int>& ks) {
  bool drop = false;
  for (const auto& [mono, c] : p.terms()) {
    for (const auto& [v, e] : mono.factors()) {
      if (v.is_aux() && e > ks[static_cast<std::size_t>(v.aux - 1)]) drop = true;
    }
    if (drop) break;
  }
  if (!drop) return;
  Polynomial kept(p.field());
  for (const auto& [mono, c] : p.terms()) {
    bool ok = true;
    for (const auto& [v, e] : mono.factors()) {
      if (v.is_aux() && e > ks[static_cast<std::size_t>(v.aux - 1)]) ok = false;
    }
    if (ok) kept.add_term(mono, c);
  }
  p = std::move(kept);
}

Polynomial linearize(const std::vector<PolyMatrix>& xs, const std::vector<int>& ks) {
  const std::size_t n = xs.front().rows();
  for (const auto& x : xs) {
    if (x.rows() != n || x.cols() != n) throw std::invalid_argument("partial linearization needs equal square matrices");
  }
  const Field f = field_of(xs.front());
  PolyMatrix sum(n, n, Polynomial(f));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Polynomial u = Polynomial::variable(f, Variable::auxiliary(static_cast<int>(i) + 1));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!xs[i](r, c).is_zero()) sum(r, c) += u * xs[i](r, c);
      }
    }
  }
  const Polynomial full = pf_impl<Polynomial>(sum - sum.transpose(), [&ks](Polynomial& p) { prune_aux(p, ks); });
  std::vector<std::pair<Variable, int>> factors;
  for (std::size_t i = 0; i < ks.size(); ++i) factors.emplace_back(Variable::auxiliary(static_cast<int>(i) + 1), ks[i]);
  return full.aux_coefficient(Monomial::from_factors(std::move(factors)));
}

}  // namespace

Scalar pf(const ScalarMatrix& m) { return pf_impl(m); }
Polynomial pf(const PolyMatrix& m) { return pf_impl(m); }

Scalar gen_pf(const ScalarMatrix& x) { return pf_impl(skew_part(x)); }
Polynomial gen_pf(const PolyMatrix& x) { return pf_impl(skew_part(x)); }

Polynomial partial_linearization(const std::vector<PolyMatrix>& xs, const std::vector<int>& ks) {
  check_linearization_args(xs.size(), xs.empty() ? 0 : xs.front().rows(), ks);
  return linearize(xs, ks);
}

Polynomial partial_linearization(const std::vector<ScalarMatrix>& xs, const std::vector<int>& ks) {
  check_linearization_args(xs.size(), xs.empty() ? 0 : xs.front().rows(), ks);
  std::vector<PolyMatrix> polys;
  polys.reserve(xs.size());
  for (const auto& x : xs) polys.push_back(to_poly(x));
  return linearize(polys, ks);
}

int BlockLayout::size() const { return std::accumulate(dims.begin(), dims.end(), 0); }

int BlockLayout::offset(int block) const {
  if (block < 1 || static_cast<std::size_t>(block) > dims.size()) {
    throw std::invalid_argument("block index " + std::to_string(block) + " out of range");
  }
  return std::accumulate(dims.begin(), dims.begin() + (block - 1), 0);
}

namespace {

template <class M, class Zero>
M embed(const BlockLayout& layout, const PlacedBlock<M>& b, Zero zero) {
  for (int d : layout.dims) {
    if (d < 0) throw std::invalid_argument("block dimensions must be nonnegative");
  }
  const int n = layout.size();
  const int rp = layout.offset(b.p);
  const int cq = layout.offset(b.q);
  const auto rows = static_cast<std::size_t>(layout.dims[static_cast<std::size_t>(b.p - 1)]);
  const auto cols = static_cast<std::size_t>(layout.dims[static_cast<std::size_t>(b.q - 1)]);
  if (b.block.rows() != rows || b.block.cols() != cols) {
    throw std::invalid_argument("block (" + std::to_string(b.p) + "," + std::to_string(b.q) + ") should be " +
                                std::to_string(rows) + "x" + std::to_string(cols) + ", got " + b.block.shape());
  }
  M out(static_cast<std::size_t>(n), static_cast<std::size_t>(n), zero);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(static_cast<std::size_t>(rp) + i, static_cast<std::size_t>(cq) + j) = b.block(i, j);
  }
  return out;
}

}  // namespace

PolyMatrix embed_block(const BlockLayout& layout, const PlacedBlock<PolyMatrix>& b) {
  return embed(layout, b, Polynomial(field_of(b.block)));
}

ScalarMatrix embed_block(const BlockLayout& layout, const PlacedBlock<ScalarMatrix>& b) {
  return embed(layout, b, field_of(b.block).zero());
}

Polynomial bplp(const BlockLayout& layout, const std::vector<PlacedBlock<PolyMatrix>>& blocks,
                const std::vector<int>& ks) {
  std::vector<PolyMatrix> zs;
  for (const auto& b : blocks) zs.push_back(embed_block(layout, b));
  return partial_linearization(zs, ks);
}

Polynomial bplp(const BlockLayout& layout, const std::vector<PlacedBlock<ScalarMatrix>>& blocks,
                const std::vector<int>& ks) {
  std::vector<ScalarMatrix> zs;
  for (const auto& b : blocks) zs.push_back(embed_block(layout, b));
  return partial_linearization(zs, ks);
}

}  // namespace mqinv
