#include "mqinv/matrix.hpp"

#include <bit>
#include <sstream>

#include "mqinv/kernels.hpp"

namespace mqinv {

ScalarMatrix identity_matrix(Field field, std::size_t n) {
  ScalarMatrix m(n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

ScalarMatrix symplectic_form(Field field, std::size_t n) {
  if (n % 2 != 0) throw std::invalid_argument("J(n) needs even n, got " + std::to_string(n));
  ScalarMatrix m(n, n, field.zero());
  const std::size_t h = n / 2;
  for (std::size_t i = 0; i < h; ++i) {
    m(i, h + i) = field.one();
    m(h + i, i) = -field.one();
  }
  return m;
}

ScalarMatrix zero_matrix(Field field, std::size_t rows, std::size_t cols) {
  return ScalarMatrix(rows, cols, field.zero());
}

ScalarMatrix diagonal_matrix(const std::vector<Scalar>& diagonal) {
  if (diagonal.empty()) return ScalarMatrix();
  ScalarMatrix m(diagonal.size(), diagonal.size(), diagonal.front().field().zero());
  for (std::size_t i = 0; i < diagonal.size(); ++i) m(i, i) = diagonal[i];
  return m;
}

ScalarMatrix random_matrix(Field field, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  ScalarMatrix m(rows, cols, field.zero());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.random(rng);
  }
  return m;
}

PolyMatrix to_poly(const ScalarMatrix& m) {
  PolyMatrix out(m.rows(), m.cols(), Polynomial());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Polynomial::constant(m(i, j));
  }
  return out;
}

ScalarMatrix evaluate(const PolyMatrix& m, const Assignment& values) {
  ScalarMatrix out(m.rows(), m.cols(), Scalar());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(values);
  }
  return out;
}

bool is_constant(const PolyMatrix& m) {
  for (const auto& x : m.data()) {
    if (!x.is_constant()) return false;
  }
  return true;
}

ScalarMatrix constant_values(const PolyMatrix& m) {
  ScalarMatrix out(m.rows(), m.cols(), Scalar());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_constant()) throw std::invalid_argument("matrix entry is not constant");
      out(i, j) = m(i, j).constant_term();
    }
  }
  return out;
}

ScalarMatrix to_field(const ScalarMatrix& m, Field target) {
  ScalarMatrix out(m.rows(), m.cols(), target.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar& x = m(i, j);
      out(i, j) = x.is_rational() ? target.from_rational(x.rational()) : target.from_integer(x.lift());
    }
  }
  return out;
}

PolyMatrix to_field(const PolyMatrix& m, Field target) {
  PolyMatrix out(m.rows(), m.cols(), Polynomial(target));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_field(target);
  }
  return out;
}

namespace {

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) {
    throw std::invalid_argument(std::string(what) + " needs a square matrix, got " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

}  // namespace

Scalar det(const ScalarMatrix& m) {
  require_square(m.rows(), m.cols(), "det");
  const std::size_t n = m.rows();
  if (n == 0) return Field::rationals().one();
  ScalarMatrix a = m;
  const Field field = a(0, 0).field();
  Scalar previous = field.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && a(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return field.zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

Polynomial det(const PolyMatrix& m) {
  require_square(m.rows(), m.cols(), "det");
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(Field::rationals(), 1);
  if (n > 20) throw std::invalid_argument("symbolic det limited to 20x20");
  const Field field = m(0, 0).field();
  // minors[mask] = det of the bottom popcount(mask) rows restricted to columns in mask.
  std::vector<Polynomial> minors(std::size_t{1} << n, Polynomial(field));
  minors[0] = Polynomial::constant(field, 1);
  for (std::size_t r = 1; r <= n; ++r) {
    const std::size_t row = n - r;
    for (std::size_t mask = 1; mask < minors.size(); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != r) continue;
      Polynomial acc(field);
      int position = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(mask & (std::size_t{1} << j))) continue;
        const Polynomial& entry = m(row, j);
        const Polynomial& sub = minors[mask & ~(std::size_t{1} << j)];
        if (!entry.is_zero() && !sub.is_zero()) {
          if (position % 2 == 0) acc += entry * sub;
          else acc -= entry * sub;
        }
        ++position;
      }
      minors[mask] = std::move(acc);
    }
  }
  return minors.back();
}

Scalar sigma_k(const ScalarMatrix& m, int k) {
  require_square(m.rows(), m.cols(), "sigma_k");
  if (k < 1 || static_cast<std::size_t>(k) > m.rows()) {
    throw std::invalid_argument("sigma_k needs 1 <= k <= n, got k=" + std::to_string(k));
  }
  const Scalar zero = m(0, 0).field().zero();
  return kernels::principal_minor_sum_parallel(m, k, zero, [](const ScalarMatrix& s) { return det(s); });
}

Polynomial sigma_k(const PolyMatrix& m, int k) {
  require_square(m.rows(), m.cols(), "sigma_k");
  if (k < 1 || static_cast<std::size_t>(k) > m.rows()) {
    throw std::invalid_argument("sigma_k needs 1 <= k <= n, got k=" + std::to_string(k));
  }
  const Polynomial zero(m(0, 0).field());
  return kernels::principal_minor_sum_parallel(m, k, zero, [](const PolyMatrix& s) { return det(s); });
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  require_square(m.rows(), m.cols(), "inverse");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  const Field field = m(0, 0).field();
  ScalarMatrix a = m;
  ScalarMatrix inv = identity_matrix(field, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k).is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("matrix is singular");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pivot, j));
        std::swap(inv(k, j), inv(pivot, j));
      }
    }
    const Scalar scale = a(k, k).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= scale;
      inv(k, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const Scalar f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::string to_string(const ScalarMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace mqinv
