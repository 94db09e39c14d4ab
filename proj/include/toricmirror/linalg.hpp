#pragma once

// Linear algebra over the rationals: ranks, null spaces, linear solves, and
// a sparse rank routine for the large cochain differentials of the sheaf engine.

#include "toricmirror/exact.hpp"

#include <map>
#include <optional>

namespace toricmirror {

std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);

/// Basis (as columns) of {x : A x = 0} over Q.
RatMatrix nullspace(const RatMatrix& a);

/// Some solution of A x = b, if one exists.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

/// Sparse matrix over Q; rows stored as ordered maps column -> value.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add(std::size_t i, std::size_t j, const Rational& v) {
    if (v == 0) return;
    auto& slot = data_[i][j];
    slot += v;
    if (slot == 0) data_[i].erase(j);
  }

  const std::map<std::size_t, Rational>& row(std::size_t i) const { return data_[i]; }

  /// Rank by Markowitz-style sparse elimination. Destroys nothing; works on a copy.
  std::size_t rank() const;

  RatMatrix to_dense() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::map<std::size_t, Rational>> data_;
};

/// Exact feasibility of {x >= 0 : A x = b}. Returns a witness when feasible.
std::optional<RatVector> nonnegative_solution(const RatMatrix& a, const RatVector& b);

/// Is `v` in the closed cone generated by the given vectors?
bool in_cone(const std::vector<RatVector>& generators, const RatVector& v);

}  // namespace toricmirror
