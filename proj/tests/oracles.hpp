#pragma once

// Test-only oracles. Nothing here calls into the code paths they check.

#include "toricmirror/exact.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace oracle {

using toricmirror::Integer;
using toricmirror::IntMatrix;
using toricmirror::Rational;

/// Determinant by cofactor expansion (small matrices only).
inline Integer det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = a(i, k);
    Integer term = a(0, j) * det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

/// Smith diagonal via determinantal divisors: s_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
inline std::vector<Integer> smith_diagonal_by_minors(const IntMatrix& a) {
  std::vector<Integer> result;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    Integer g = 0;
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        Integer m = det(a.select_rows(rows).select_columns(cols));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
      });
    });
    if (g == 0) {
      result.push_back(0);
      prev = 0;
      continue;
    }
    result.push_back(prev == 0 ? Integer(0) : Integer(g / prev));
    prev = g;
  }
  return result;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

/// All points of ([0,1) ∩ (1/den) Z)^k.
inline std::vector<toricmirror::RatVector> rational_grid(std::size_t k, int den) {
  std::vector<toricmirror::RatVector> pts{toricmirror::RatVector()};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<toricmirror::RatVector> next;
    for (const auto& p : pts)
      for (int a = 0; a < den; ++a) {
        auto q = p;
        q.push_back(Rational(a, den));
        q.back().canonicalize();
        next.push_back(q);
      }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace oracle
