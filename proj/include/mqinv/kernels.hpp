#pragma once

// Data-parallel kernels behind the tableau and characteristic-coefficient
// code. Each kernel has a plain serial version, kept as the reference the
// tests compare against, and an OpenMP version. Both return identical values:
// partial sums are combined in index order after the parallel region.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numeric>
#include <vector>

#include "mqinv/matrix.hpp"

namespace mqinv::kernels {

inline bool is_zero_value(const Scalar& x) { return x.is_zero(); }
inline bool is_zero_value(const Polynomial& x) { return x.is_zero(); }
inline bool is_zero_value(const mpz_class& x) { return sgn(x) == 0; }

/// All permutations of [0,n) in lexicographic order, with signs.
struct PermutationTable {
  std::size_t n = 0;
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
};

PermutationTable all_permutations(std::size_t n);

/// All k-subsets of [0,n) in lexicographic order.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

/// An arrow of a tableau with 0-based column/row/label indices.
struct CellArrow {
  int tail_col;
  int tail_row;
  int head_col;
  int head_row;
  int label;
};

/// Number of terms of the signed permutation sum: prod n_i!, saturating.
double permutation_count(const std::vector<int>& columns);

namespace detail {

template <class T>
bool accumulate_term(const std::vector<CellArrow>& arrows, const std::vector<Matrix<T>>& values,
                     const std::vector<const std::vector<int>*>& perm_of_column, T& product) {
  bool first = true;
  for (const auto& a : arrows) {
    const T& entry = values[a.label]((*perm_of_column[a.tail_col])[a.tail_row],
                                     (*perm_of_column[a.head_col])[a.head_row]);
    if (is_zero_value(entry)) return false;
    if (first) {
      product = entry;
      first = false;
    } else {
      product *= entry;
    }
  }
  return true;
}

/// Sum over the terms with linear index in [begin, end); column 0 varies fastest.
template <class T>
T odometer_range(const std::vector<PermutationTable>& tables, const std::vector<CellArrow>& arrows,
                 const std::vector<Matrix<T>>& values, const T& zero, std::uint64_t begin, std::uint64_t end) {
  const std::size_t m = tables.size();
  std::vector<std::size_t> idx(m, 0);
  std::uint64_t rest = begin;
  for (std::size_t c = 0; c < m; ++c) {
    idx[c] = static_cast<std::size_t>(rest % tables[c].perms.size());
    rest /= tables[c].perms.size();
  }
  std::vector<const std::vector<int>*> perm_of_column(m);
  T acc = zero;
  T product = zero;
  for (std::uint64_t term = begin; term < end; ++term) {
    int sign = 1;
    for (std::size_t c = 0; c < m; ++c) {
      perm_of_column[c] = &tables[c].perms[idx[c]];
      sign *= tables[c].signs[idx[c]];
    }
    // An empty tableau (no arrows) is handled by the caller.
    if (!arrows.empty() && accumulate_term(arrows, values, perm_of_column, product)) {
      if (sign > 0) acc += product;
      else acc -= product;
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (++idx[c] < tables[c].perms.size()) break;
      idx[c] = 0;
    }
  }
  return acc;
}

inline std::uint64_t term_count(const std::vector<PermutationTable>& tables) {
  std::uint64_t total = 1;
  for (const auto& t : tables) total *= t.perms.size();
  return total;
}

}  // namespace detail

/// Reference implementation of
///   sum over (pi_1..pi_m) of sgn(pi_1)..sgn(pi_m) * prod_a values[label(a)](pi_tail(row), pi_head(row)).
template <class T>
T signed_permutation_sum_serial(const std::vector<int>& columns, const std::vector<CellArrow>& arrows,
                                const std::vector<Matrix<T>>& values, const T& zero) {
  std::vector<PermutationTable> tables;
  tables.reserve(columns.size());
  for (int n : columns) tables.push_back(all_permutations(static_cast<std::size_t>(n)));
  return detail::odometer_range(tables, arrows, values, zero, 0, detail::term_count(tables));
}

/// Same sum, split into contiguous ranges of terms; partial sums are added in range order.
template <class T>
T signed_permutation_sum_parallel(const std::vector<int>& columns, const std::vector<CellArrow>& arrows,
                                  const std::vector<Matrix<T>>& values, const T& zero) {
  std::vector<PermutationTable> tables;
  tables.reserve(columns.size());
  for (int n : columns) tables.push_back(all_permutations(static_cast<std::size_t>(n)));
  const std::uint64_t total = detail::term_count(tables);
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
  std::vector<T> partial(static_cast<std::size_t>(chunks), zero);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(chunks); ++k) {
    try {
      const std::uint64_t begin = total * static_cast<std::uint64_t>(k) / chunks;
      const std::uint64_t end = total * static_cast<std::uint64_t>(k + 1) / chunks;
      partial[static_cast<std::size_t>(k)] = detail::odometer_range(tables, arrows, values, zero, begin, end);
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  T acc = zero;
  for (const auto& x : partial) acc += x;
  return acc;
}

/// Reference implementation: sum of det(m[S,S]) over k-subsets S.
template <class T, class Det>
T principal_minor_sum_serial(const Matrix<T>& m, int k, const T& zero, Det det) {
  T acc = zero;
  for (const auto& s : k_subsets(m.rows(), static_cast<std::size_t>(k))) acc += det(m.select(s, s));
  return acc;
}

template <class T, class Det>
T principal_minor_sum_parallel(const Matrix<T>& m, int k, const T& zero, Det det) {
  const auto subsets = k_subsets(m.rows(), static_cast<std::size_t>(k));
  const long count = static_cast<long>(subsets.size());
  std::vector<T> partial(subsets.size(), zero);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      partial[i] = det(m.select(subsets[i], subsets[i]));
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  T acc = zero;
  for (const auto& x : partial) acc += x;
  return acc;
}

/// Run `body(trial)` for trial in [0,count) in parallel; exceptions are rethrown.
template <class Body>
void parallel_for(long count, Body body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace mqinv::kernels
