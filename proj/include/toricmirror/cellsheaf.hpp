#pragma once

// Constructible sheaves on a cell complex of the 1- or 2-torus as
// representations of its entrance-path category, over Q.

#include "toricmirror/complex.hpp"

#include <memory>

namespace toricmirror {

TORICMIRROR_DEFINE_ERROR(MismatchedComplex);
TORICMIRROR_DEFINE_ERROR(NotFunctorial);
TORICMIRROR_DEFINE_ERROR(NonAdaptedComplex);
TORICMIRROR_DEFINE_ERROR(CodimTwoObstruction);

using ComplexPtr = std::shared_ptr<const CellComplex>;

/// F(τ) = Q^dims[τ]; F(arrow a) = maps[a] : F(from) -> F(to).
struct CellSheaf {
  ComplexPtr complex;
  std::vector<std::size_t> dims;
  std::vector<RatMatrix> maps;

  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  /// Throws NotFunctorial with the offending pair unless F(b) F(a) = F(b∘a).
  void check_functorial() const;
};

CellSheaf zero_sheaf(const ComplexPtr& cx);
/// The constant sheaf k (rank r).
CellSheaf constant_sheaf(const ComplexPtr& cx, std::size_t rank = 1);

/// dim Ext^i(F, G), i = 0..dim of the complex.
std::vector<std::size_t> rhom(const CellSheaf& f, const CellSheaf& g);

/// A chamber of covectors at a cell: the zero covector, a ray, or an open sector.
struct Chamber {
  enum class Kind { Zero, Ray, Sector };
  Kind kind = Kind::Zero;
  RatVector covector;                 // representative (ray direction or interior point of the sector)
  std::vector<RatVector> boundary;    // sector walls
  bool present = false;
  std::vector<std::size_t> test_dims;  // cohomology of the Kashiwara-Schapira test complex
};

struct CellMicroSupport {
  std::size_t cell;
  std::vector<Chamber> chambers;
};

struct MicroSupportReport {
  std::vector<CellMicroSupport> cells;
  bool empty() const;
  std::string to_string(const CellComplex& cx) const;
};

MicroSupportReport microsupport(const CellSheaf& f);

/// Is every present chamber inside some component (base contains the cell, cone contains the chamber)?
bool in_subcategory(const CellSheaf& f, const std::vector<SkeletonComponent>& components);
/// Same, against a precomputed report; `witness` receives the first violation.
bool in_subcategory(const MicroSupportReport& ms, const CellComplex& cx,
                    const std::vector<SkeletonComponent>& components, std::string* witness = nullptr);

struct GeneratorSet {
  ComplexPtr complex;
  std::vector<std::size_t> inverted;            // arrows required to act invertibly
  std::vector<std::vector<std::size_t>> classes;  // cells merged into each generator's region
  std::vector<CellSheaf> objects;
};

/// Corepresentatives of Sh_Λ: projectives of the entrance-path category with
/// the arrows excluded by Λ inverted. Each is checked against Λ afterwards.
GeneratorSet generators(const ComplexPtr& cx, const std::vector<SkeletonComponent>& components);

/// Pairwise rhom.
std::vector<std::vector<std::vector<std::size_t>>> rhom_matrix(const std::vector<CellSheaf>& objects);

/// Pushforward along the torus translation u -> u + c.
CellSheaf translate(const CellSheaf& f, const RatVector& c);
/// Tensor with the rank-one local system of monodromy chi_i around the i-th loop.
CellSheaf twist(const CellSheaf& f, const std::vector<Rational>& chi);

}  // namespace toricmirror
