#include "toricmirror/linalg.hpp"

#include <algorithm>
#include <set>

namespace toricmirror {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return rref(m).size();
}

std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

RatMatrix nullspace(const RatMatrix& a) {
  RatMatrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(a.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return RatMatrix::from_columns(a.cols(), basis);
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: rhs length");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, a.cols());
  return x;
}

std::size_t SparseMatrix::rank() const {
  // Work row-wise: repeatedly pick the sparsest remaining row, pivot on its
  // sparsest column, eliminate that column from the other rows.
  std::vector<std::map<std::size_t, Rational>> rows;
  rows.reserve(rows_);
  for (const auto& r : data_)
    if (!r.empty()) rows.push_back(r);

  std::vector<std::set<std::size_t>> col_rows(cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) col_rows[c].insert(i);

  std::vector<bool> alive(rows.size(), true);
  std::set<std::pair<std::size_t, std::size_t>> by_size;
  for (std::size_t i = 0; i < rows.size(); ++i) by_size.insert({rows[i].size(), i});

  std::size_t result = 0;
  while (!by_size.empty()) {
    auto [sz, r] = *by_size.begin();
    by_size.erase(by_size.begin());
    if (rows[r].empty()) {
      alive[r] = false;
      continue;
    }
    // pivot column: the one touching the fewest other rows
    std::size_t pc = rows[r].begin()->first;
    std::size_t best = col_rows[pc].size();
    for (const auto& [c, v] : rows[r])
      if (col_rows[c].size() < best) {
        best = col_rows[c].size();
        pc = c;
      }
    ++result;
    alive[r] = false;
    const auto pivot_row = rows[r];
    const Rational pv = pivot_row.at(pc);
    for (const auto& [c, v] : pivot_row) col_rows[c].erase(r);
    std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (std::size_t t : targets) {
      by_size.erase({rows[t].size(), t});
      Rational f = rows[t].at(pc) / pv;
      for (const auto& [c, v] : pivot_row) {
        auto it = rows[t].find(c);
        if (it == rows[t].end()) {
          rows[t].emplace(c, -f * v);
          col_rows[c].insert(t);
        } else {
          it->second -= f * v;
          if (it->second == 0) {
            rows[t].erase(it);
            col_rows[c].erase(t);
          }
        }
      }
      by_size.insert({rows[t].size(), t});
    }
  }
  return result;
}

RatMatrix SparseMatrix::to_dense() const {
  RatMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [c, v] : data_[i]) m(i, c) = v;
  return m;
}

std::optional<RatVector> nonnegative_solution(const RatMatrix& a, const RatVector& b) {
  // Phase-one simplex with Bland's rule on the tableau
  //   [A | I | b], artificials basic, minimize the sum of artificials.
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionMismatch("lp: rhs length");
  if (m == 0) return RatVector(n);

  RatMatrix t(m, n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, n + i) = 1;
    t(i, n + m) = flip ? Rational(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // reduced costs of the phase-one objective sum(artificials)
  auto reduced_cost = [&](std::size_t j) {
    Rational c = j >= n && j < n + m ? Rational(1) : Rational(0);
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= n) c -= t(i, j);
    return c;
  };

  for (;;) {
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (reduced_cost(j) < 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, n + m) / t(i, enter);
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    Rational pv = t(leave, enter);
    for (std::size_t j = 0; j <= n + m; ++j) t(leave, j) /= pv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      Rational f = t(i, enter);
      for (std::size_t j = 0; j <= n + m; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n && t(i, n + m) != 0) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t(i, n + m);
  return x;
}

bool in_cone(const std::vector<RatVector>& generators, const RatVector& v) {
  if (generators.empty()) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
  }
  RatMatrix a = RatMatrix::from_columns(v.size(), generators);
  return nonnegative_solution(a, v).has_value();
}

}  // namespace toricmirror
