#pragma once

// Conic Lagrangians of fan data as unions of (subtorus base) x (polyhedral cone):
//
//   Λ_Z          on T*(R^n/Z^n):  ⋃_S  {p : p_i ∈ Z, i ∈ S} × cone(-e_i : i ∈ S)
//   Λ_{Z,M}      on T*(R^n/M):    same formula on the cover
//   Λ_{Z,M,γ}    on T*(M_R/M):    ⋃_S  {u : <u, f(e_i)> ≡ -x_γ,i, i ∈ S} × cone(-f(e_i) : i ∈ S)
//
// Cotangent fibers of M_R/M are identified with N_R, so the reduced cone of S
// is spanned by the negated rays. γ is given by a rational lift x_γ ∈ Q^n.

#include "toricmirror/fan.hpp"
#include "toricmirror/lattice.hpp"

#include <string>
#include <vector>

namespace toricmirror {

TORICMIRROR_DEFINE_ERROR(DimensionTooLarge);

struct SkeletonComponent {
  Subset stratum = 0;
  CosetFamily base;
  std::vector<IntVector> cone;  // generators

  std::size_t base_dim() const { return base.dim(); }
  std::size_t cone_dim() const;
};

/// Component over the noncompact cover R^n/M: the cosets of span{e_j : j ∉ S}
/// meeting {p_S ∈ Z^S} are indexed by Z^S / proj_S(M).
struct CoverComponent {
  Subset stratum = 0;
  std::size_t ambient_dim = 0;
  std::vector<std::size_t> direction;      // coordinates j ∉ S spanning each coset
  FinAbPresentation coset_group;           // Z^S / proj_S(M)
  std::vector<IntVector> torsion_cosets;   // representatives p_S of the finite part
  std::size_t periodic_rank = 0;           // free rank: cosets repeat along this many translations
  std::vector<IntVector> cone;
};

std::vector<SkeletonComponent> lambda_Z(const FanData& fd);
std::vector<CoverComponent> lambda_ZM(const FanData& fd);

struct ReducedSkeleton {
  RatVector gamma;
  std::vector<SkeletonComponent> components;  // nonempty bases only, ordered by stratum
  std::vector<Subset> empty_strata;           // strata whose base is empty at this γ
};

ReducedSkeleton reduce(const FanData& fd, const RatVector& gamma);

/// (stratum, base dim, number of cosets, cone dim): the γ-comparable shape of a component.
struct ComponentShape {
  Subset stratum;
  std::size_t base_dim, cosets, cone_dim;
  friend bool operator==(const ComponentShape&, const ComponentShape&) = default;
};
std::vector<ComponentShape> shapes(const ReducedSkeleton& sk);

/// No nonzero conormal covector of any component is pulled back from R^n/M_R,
/// i.e. span{e_i : i ∈ S} ∩ ker f_R = 0 for every stratum (exact LP per S).
bool is_noncharacteristic(const FanData& fd);
/// Every linear part {p : p_S = 0} surjects onto R^n/M_R (rank test).
bool is_submersive(const FanData& fd);

struct EquivalenceReport {
  bool simplicial = false;
  bool noncharacteristic = false;
  bool submersive = false;
  bool agree() const { return simplicial == noncharacteristic && noncharacteristic == submersive; }
  std::string to_string() const;
};

EquivalenceReport check_equivalence(const FanData& fd);

/// Drawing of the reduced skeleton on the 1- or 2-torus.
std::string emit_svg(const FanData& fd, const RatVector& gamma);

/// {"gamma", "components":[{stratum, base:{direction, cosets}, cone:{generators}}], "empty_strata"}.
std::string skeleton_to_json(const ReducedSkeleton& sk, int indent = 2);

/// Exact rational as a string, "p" or "p/q".
std::string rational_string(const Rational& q);

}  // namespace toricmirror
