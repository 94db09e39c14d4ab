#pragma once

// Exact integer lattice algorithms: Smith normal form, saturated kernels,
// cokernels with torsion, congruence solving on tori, and the character
// sequence 0 -> M -> Z^n -> Cl -> 0 of a ray matrix.

#include "toricmirror/exact.hpp"

#include <optional>
#include <string>

namespace toricmirror {

/// A = U * S * V with U, V unimodular and S diagonal with s_0 | s_1 | ... (all >= 0).
/// The inverses of U and V are kept alongside since almost every client needs them.
struct SmithDecomposition {
  IntMatrix U, S, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Columns form a basis of the saturated lattice {x in Z^cols : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

/// Z^rank (+) Z/f_1 (+) ... (+) Z/f_k with every f_i > 1 and f_i | f_{i+1}.
struct FinAbPresentation {
  std::size_t rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_free() const { return invariant_factors.empty(); }
  std::string to_string() const;  // e.g. "Z", "Z^2 + Z/2", "0"
  friend bool operator==(const FinAbPresentation&, const FinAbPresentation&) = default;
};

/// Presentation of Z^rows / image(A).
FinAbPresentation cokernel(const IntMatrix& a);

/// Is x in the lattice spanned by the columns of basis?
bool in_lattice(const IntMatrix& basis, const IntVector& x);
/// Equality of column-spanned lattices by mutual membership.
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

/// Canonical element of Z^n / image(B): coordinates in the Smith basis.
struct QuotientClass {
  IntVector free_part;
  IntVector torsion_part;  // residues modulo the invariant factors, in order
  friend bool operator==(const QuotientClass&, const QuotientClass&) = default;
  friend auto operator<=>(const QuotientClass&, const QuotientClass&) = default;
};

/// 0 -> M -> Z^n -> quotient -> 0 built from a d x n ray matrix f (column i = f(e_i)).
/// M = Hom(N, Z) embeds by m -> (<m, f(e_i)>)_i, so M_inclusion = f^T.
class CharacterSequence {
 public:
  explicit CharacterSequence(const IntMatrix& f);

  const IntMatrix& M_inclusion() const { return m_inclusion_; }
  const FinAbPresentation& quotient() const { return quotient_; }
  std::size_t n() const { return m_inclusion_.rows(); }
  std::size_t d() const { return m_inclusion_.cols(); }

  QuotientClass classify(const IntVector& lift) const;
  /// A lift in Z^n of a canonical class.
  IntVector lift(const QuotientClass& c) const;

 private:
  IntMatrix m_inclusion_;
  FinAbPresentation quotient_;
  SmithDecomposition snf_;
};

CharacterSequence character_sequence(const IntMatrix& f);

/// The solution set of G m = target (mod Z^rows) for m in the torus R^k / Z^k:
/// finitely many cosets of the connected subtorus ker(G)_R / ker(G).
class CosetFamily {
 public:
  CosetFamily(IntMatrix direction, std::vector<RatVector> points);

  std::size_t ambient_dim() const { return direction_.rows(); }
  /// Columns: saturated basis of the tangent lattice of each coset.
  const IntMatrix& direction() const { return direction_; }
  std::size_t dim() const { return direction_.cols(); }
  /// One base point per coset, pairwise inequivalent modulo direction + Z^k.
  const std::vector<RatVector>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

  bool contains(const RatVector& p) const;
  /// Are p and q in the same coset?
  bool equivalent(const RatVector& p, const RatVector& q) const;

 private:
  IntMatrix direction_;
  std::vector<RatVector> points_;
  SmithDecomposition dir_snf_;
};

CosetFamily solve_congruences(const IntMatrix& g, const RatVector& target);

/// Reduce a vector modulo the lattice spanned by `basis` to a canonical representative.
class LatticeReducer {
 public:
  LatticeReducer(std::size_t dim, const IntMatrix& basis);
  IntVector reduce(const IntVector& v) const;

 private:
  std::size_t dim_;
  SmithDecomposition snf_;
};

}  // namespace toricmirror
