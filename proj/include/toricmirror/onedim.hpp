#pragma once

// The one-variable dictionary: finite-dimensional k[t]-modules and sheaves on
// the circle marked at 0, and its products for two commuting variables.
//
// On the marked circle the two arrows out of the vertex are ρ₊ (to the arc on
// the positive side) and ρ₋ (negative side). mirror_1d sets ρ₋ = id, ρ₊ = t.

#include "toricmirror/cellsheaf.hpp"

#include <random>

namespace toricmirror {

TORICMIRROR_DEFINE_ERROR(NotInvertible);
TORICMIRROR_DEFINE_ERROR(NonCommuting);

struct TorsionModule {
  RatMatrix t;

  std::size_t dim() const { return t.rows(); }

  static TorsionModule zero() { return {RatMatrix(0, 0)}; }
  /// k[t]/(t - λ)^n.
  static TorsionModule jordan(const Rational& lambda, std::size_t n);
  TorsionModule operator+(const TorsionModule& other) const;  // direct sum
  /// t -> χ t.
  TorsionModule scaled(const Rational& chi) const;
};

/// Random module of dimension ≤ max_dim: a sum of Jordan blocks with small
/// eigenvalues, conjugated by a random unimodular matrix.
TorsionModule random_torsion_module(std::mt19937_64& rng, std::size_t max_dim);

/// (dim Hom, dim Ext¹) over k[t]: kernel and cokernel of φ -> φ t₁ - t₂ φ.
std::vector<std::size_t> ext_dims_kt(const TorsionModule& m, const TorsionModule& n);
/// Same over k[t, t⁻¹]; both actions must be invertible.
std::vector<std::size_t> ext_dims_laurent(const TorsionModule& m, const TorsionModule& n);
/// Ext over k[t₁, ..., t_r] (r ≤ 2) from the Koszul complex; modules given by commuting actions.
std::vector<std::size_t> ext_dims_poly(const std::vector<RatMatrix>& m, const std::vector<RatMatrix>& n);

/// The circle with one vertex at 0 and one arc, shared by all 1-d mirrors.
const ComplexPtr& marked_circle();
/// The product of two marked circles: one vertex, two edges, one square.
const ComplexPtr& marked_torus();
/// ⊖ = zero section ∪ negative conormal at 0, as skeleton components.
std::vector<SkeletonComponent> theta_skeleton();

/// Arrow ids of ρ₊ and ρ₋ on the marked circle.
std::size_t rho_plus();
std::size_t rho_minus();

CellSheaf mirror_1d(const TorsionModule& m);
/// Local system with monodromy t; throws NotInvertible.
CellSheaf mirror_1d_gm(const TorsionModule& m);
/// t = ρ₋⁻¹ ρ₊; throws NotInvertible when ρ₋ is not.
TorsionModule inverse_mirror_1d(const CellSheaf& f);
/// Change of basis on the arc making ρ₋ the identity.
CellSheaf normalize_1d(const CellSheaf& f);

/// Derived fiber at 0, (dim ker t, dim coker t) in degrees (-1, 0).
std::vector<std::size_t> pullback_at_zero(const TorsionModule& m);
/// fib(F(v) -> F(a)) along ρ₊, as (dim ker, dim coker).
std::vector<std::size_t> microstalk_1d(const CellSheaf& f);

/// Mirror of a module over k[t₁, ..., t_r] given by commuting actions on one space (r = 1, 2).
/// Arrows into a cell on the positive side of coordinate i act by t_i.
CellSheaf product_mirror(const std::vector<RatMatrix>& actions);

}  // namespace toricmirror
