#include "toricmirror/lattice.hpp"

#include "toricmirror/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace toricmirror {

namespace {

// Smith reduction engine. Maintains L * A0 * R = A together with inverses.
class SmithEngine {
 public:
  explicit SmithEngine(const IntMatrix& a)
      : a_(a),
        l_(IntMatrix::identity(a.rows())),
        l_inv_(IntMatrix::identity(a.rows())),
        r_(IntMatrix::identity(a.cols())),
        r_inv_(IntMatrix::identity(a.cols())) {}

  SmithDecomposition run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!move_smallest_to(t, t, m, n)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          move_smallest_in_cross(t);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a_(i, j) % a_(t, t) != 0) {
              add_row(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    SmithDecomposition d;
    d.rank = t;
    d.S = a_;
    d.U = l_inv_;
    d.U_inv = l_;
    d.V = r_inv_;
    d.V_inv = r_;
    return d;
  }

 private:
  bool move_smallest_to(std::size_t t, std::size_t, std::size_t m, std::size_t n) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a_(i, j) != 0 && (bi == m || abs(a_(i, j)) < abs(a_(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == m) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void move_smallest_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    Integer best = abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && abs(a_(i, t)) < best) {
        best = abs(a_(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && abs(a_(t, j)) < best) {
        best = abs(a_(t, j));
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.cols(); ++k) std::swap(a_(i, k), a_(j, k));
    for (std::size_t k = 0; k < l_.cols(); ++k) std::swap(l_(i, k), l_(j, k));
    for (std::size_t k = 0; k < l_inv_.rows(); ++k) std::swap(l_inv_(k, i), l_inv_(k, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.rows(); ++k) std::swap(a_(k, i), a_(k, j));
    for (std::size_t k = 0; k < r_.rows(); ++k) std::swap(r_(k, i), r_(k, j));
    for (std::size_t k = 0; k < r_inv_.cols(); ++k) std::swap(r_inv_(i, k), r_inv_(j, k));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < a_.cols(); ++k) a_(i, k) += c * a_(j, k);
    for (std::size_t k = 0; k < l_.cols(); ++k) l_(i, k) += c * l_(j, k);
    for (std::size_t k = 0; k < l_inv_.rows(); ++k) l_inv_(k, j) -= c * l_inv_(k, i);
  }
  // col_j += c * col_i
  void add_col(std::size_t j, std::size_t i, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < a_.rows(); ++k) a_(k, j) += c * a_(k, i);
    for (std::size_t k = 0; k < r_.rows(); ++k) r_(k, j) += c * r_(k, i);
    for (std::size_t k = 0; k < r_inv_.cols(); ++k) r_inv_(i, k) -= c * r_inv_(j, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < a_.cols(); ++k) a_(i, k) = -a_(i, k);
    for (std::size_t k = 0; k < l_.cols(); ++k) l_(i, k) = -l_(i, k);
    for (std::size_t k = 0; k < l_inv_.rows(); ++k) l_inv_(k, i) = -l_inv_(k, i);
  }

  IntMatrix a_, l_, l_inv_, r_, r_inv_;
};

}  // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) { return SmithEngine(a).run(); }

IntMatrix kernel_basis(const IntMatrix& a) {
  // A x = 0  <=>  S (V x) = 0  <=>  (V x)_i = 0 for i < rank; x = V^{-1} y.
  auto snf = smith_normal_form(a);
  std::vector<IntVector> cols;
  for (std::size_t j = snf.rank; j < a.cols(); ++j) cols.push_back(snf.V_inv.column(j));
  return IntMatrix::from_columns(a.cols(), cols);
}

std::string FinAbPresentation::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << '^' << rank;
    first = false;
  }
  for (const auto& f : invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << f;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FinAbPresentation cokernel(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  FinAbPresentation p;
  p.rank = a.rows() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.S(i, i) > 1) p.invariant_factors.push_back(snf.S(i, i));
  return p;
}

namespace {

bool in_lattice_snf(const SmithDecomposition& snf, const IntVector& x) {
  // B z = x  <=>  S (V z) = U^{-1} x
  IntVector y = snf.U_inv * x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < snf.rank) {
      if (y[i] % snf.S(i, i) != 0) return false;
    } else if (y[i] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool in_lattice(const IntMatrix& basis, const IntVector& x) {
  if (basis.cols() == 0) return std::all_of(x.begin(), x.end(), [](const Integer& v) { return v == 0; });
  return in_lattice_snf(smith_normal_form(basis), x);
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!in_lattice(b, a.column(j))) return false;
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!in_lattice(a, b.column(j))) return false;
  return true;
}

CharacterSequence::CharacterSequence(const IntMatrix& f) {
  if (rank(f) != f.rows())
    throw RankDeficient("ray matrix has rank " + std::to_string(rank(f)) + " < d = " +
                        std::to_string(f.rows()));
  m_inclusion_ = f.transpose();
  snf_ = smith_normal_form(m_inclusion_);
  quotient_ = cokernel(m_inclusion_);
}

QuotientClass CharacterSequence::classify(const IntVector& lift) const {
  if (lift.size() != n()) throw DimensionMismatch("class lift length");
  IntVector y = snf_.U_inv * lift;
  QuotientClass c;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < snf_.rank) {
      if (snf_.S(i, i) > 1) c.torsion_part.push_back(mod_floor(y[i], snf_.S(i, i)));
    } else {
      c.free_part.push_back(y[i]);
    }
  }
  return c;
}

IntVector CharacterSequence::lift(const QuotientClass& c) const {
  IntVector y(n());
  std::size_t t = 0;
  for (std::size_t i = 0; i < snf_.rank; ++i)
    if (snf_.S(i, i) > 1) y[i] = c.torsion_part.at(t++);
  for (std::size_t i = snf_.rank; i < n(); ++i) y[i] = c.free_part.at(i - snf_.rank);
  return snf_.U * y;
}

CharacterSequence character_sequence(const IntMatrix& f) { return CharacterSequence(f); }

CosetFamily::CosetFamily(IntMatrix direction, std::vector<RatVector> points)
    : direction_(std::move(direction)), points_(std::move(points)) {
  dir_snf_ = smith_normal_form(direction_);
}

bool CosetFamily::equivalent(const RatVector& p, const RatVector& q) const {
  // p - q in span_R(D) + Z^k  <=>  coordinates past rank of U^{-1}(p - q) are integral
  // (D is saturated, so its Smith diagonal is all ones).
  const std::size_t k = ambient_dim();
  RatVector diff(k);
  for (std::size_t i = 0; i < k; ++i) diff[i] = p[i] - q[i];
  for (std::size_t i = dir_snf_.rank; i < k; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < k; ++j) s += Rational(dir_snf_.U_inv(i, j)) * diff[j];
    if (!is_integral(s)) return false;
  }
  return true;
}

bool CosetFamily::contains(const RatVector& p) const {
  return std::any_of(points_.begin(), points_.end(),
                     [&](const RatVector& q) { return equivalent(p, q); });
}

CosetFamily solve_congruences(const IntMatrix& g, const RatVector& target) {
  if (target.size() != g.rows()) throw DimensionMismatch("congruence target length");
  const std::size_t k = g.cols();
  auto snf = smith_normal_form(g);
  // G m = c (mod Z^r)  <=>  S y = U^{-1} c (mod Z^r) with y = V m.
  RatVector c(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.rows(); ++j) c[i] += Rational(snf.U_inv(i, j)) * target[j];

  std::vector<IntVector> dir_cols;
  for (std::size_t j = snf.rank; j < k; ++j) dir_cols.push_back(snf.V_inv.column(j));
  IntMatrix direction = IntMatrix::from_columns(k, dir_cols);

  for (std::size_t i = snf.rank; i < g.rows(); ++i)
    if (!is_integral(c[i])) return CosetFamily(direction, {});

  // y_i = (c_i + j) / s_i for j = 0..s_i-1, i < rank; free coordinates zero.
  std::vector<RatVector> ys{RatVector(k)};
  for (std::size_t i = 0; i < snf.rank; ++i) {
    const Integer& s = snf.S(i, i);
    std::vector<RatVector> next;
    for (const auto& y : ys)
      for (Integer j = 0; j < s; ++j) {
        RatVector z = y;
        z[i] = frac_of((c[i] + Rational(j)) / Rational(s));
        next.push_back(std::move(z));
      }
    ys = std::move(next);
  }
  std::vector<RatVector> points;
  points.reserve(ys.size());
  for (const auto& y : ys) {
    RatVector m(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m[i] += Rational(snf.V_inv(i, j)) * y[j];
      m[i] = frac_of(m[i]);
    }
    points.push_back(std::move(m));
  }
  std::sort(points.begin(), points.end());
  return CosetFamily(direction, std::move(points));
}

LatticeReducer::LatticeReducer(std::size_t dim, const IntMatrix& basis) : dim_(dim) {
  snf_ = basis.cols() == 0 ? SmithDecomposition{} : smith_normal_form(basis);
}

IntVector LatticeReducer::reduce(const IntVector& v) const {
  if (snf_.rank == 0) return v;
  // coordinates y = U^{-1} v; the lattice is spanned by s_i * U e_i.
  IntVector y = snf_.U_inv * v;
  for (std::size_t i = 0; i < snf_.rank; ++i) y[i] = mod_floor(y[i], snf_.S(i, i));
  (void)dim_;
  return snf_.U * y;
}

}  // namespace toricmirror
