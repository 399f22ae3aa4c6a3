#include "mqinv/kernels.hpp"

#include <limits>

namespace mqinv::kernels {

PermutationTable all_permutations(std::size_t n) {
  PermutationTable table;
  table.n = n;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    }
    table.perms.push_back(p);
    table.signs.push_back(inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(p.begin(), p.end()));
  return table;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> s(k);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

double permutation_count(const std::vector<int>& columns) {
  double total = 1.0;
  for (int n : columns) {
    for (int k = 2; k <= n; ++k) total *= k;
    if (total > 1e300) return std::numeric_limits<double>::infinity();
  }
  return total;
}

}  // namespace mqinv::kernels
