#pragma once

// Polyhedral cell decompositions of the torus R^d / Z^d (d = 1, 2) adapted to
// a reduced skeleton, and their entrance-path categories.
//
// Every cell has a canonical lift whose interior point lies in [0,1)^d. An
// arrow (τ, c, t) records that the lift of τ lies in the closure of the lift
// of c translated by t. Arrows compose by adding translations; in the universal
// cover the complex is regular, so this is the whole category.

#include "toricmirror/skeleton.hpp"

#include <map>
#include <memory>
#include <optional>
#include <tuple>

namespace toricmirror {

TORICMIRROR_DEFINE_ERROR(UnsupportedDimension);
TORICMIRROR_DEFINE_ERROR(NonSymmetricComplex);

struct Cell {
  std::size_t dim = 0;
  RatVector point;                  // interior point of the canonical lift, in [0,1)^d
  std::vector<RatVector> vertices;  // closure vertices of the canonical lift (cyclic for 2-cells)
  std::string label;
};

struct Arrow {
  std::size_t from = 0, to = 0;
  IntVector shift;
  bool identity() const { return from == to; }
};

class CellComplex {
 public:
  /// Builds cells from 2-cell polygons (d = 2) or sorted vertex positions (d = 1).
  static CellComplex circle(const std::vector<Rational>& vertices);
  static CellComplex torus(const std::vector<std::vector<RatVector>>& polygons);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return cells_.size(); }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  const std::vector<Cell>& cells() const { return cells_; }

  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_[a]; }
  std::size_t identity(std::size_t cell) const { return identity_[cell]; }
  /// Non-identity arrows out of / into a cell.
  const std::vector<std::size_t>& out(std::size_t cell) const { return out_[cell]; }
  const std::vector<std::size_t>& in(std::size_t cell) const { return in_[cell]; }

  std::optional<std::size_t> find_arrow(std::size_t from, std::size_t to, const IntVector& shift) const;
  /// b after a.
  std::size_t compose(std::size_t a, std::size_t b) const;

  /// The dim-cell whose lift, translated by the returned vector, has interior
  /// point p (interior points are vertex centroids).
  std::optional<std::pair<std::size_t, IntVector>> locate(const RatVector& p, std::size_t dim) const;

  /// Euler characteristic V - E + F.
  long euler_characteristic() const;

  /// Lifted vertices of cell c translated by t.
  std::vector<RatVector> lifted_vertices(std::size_t c, const IntVector& t) const;

 private:
  void add_arrow(std::size_t from, std::size_t to, IntVector shift);
  void finish();

  std::size_t dim_ = 0;
  std::vector<Cell> cells_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identity_;
  std::vector<std::vector<std::size_t>> out_, in_;
  std::map<std::tuple<std::size_t, std::size_t, IntVector>, std::size_t> index_;
  std::map<std::pair<std::size_t, RatVector>, std::size_t> by_point_;

  std::size_t intern(std::size_t dim, std::vector<RatVector> lifted, IntVector& shift);
};

/// The coarsest decomposition containing every base locus: vertices at all
/// 0-dimensional bases and all circle-circle intersections, coordinate circles
/// through them (and through 0), and all skeleton circles.
CellComplex build_adapted_complex(std::size_t d, const std::vector<SkeletonComponent>& components);

/// Translation by a rational vector, as a relabeling of cells (throws if the
/// complex is not invariant). Returns (cell map, translation of lifts).
struct CellTranslation {
  std::vector<std::size_t> cell;
  std::vector<IntVector> shift;  // lift(τ) + c = lift(cell[τ]) + shift[τ]
};
CellTranslation translation_map(const CellComplex& cx, const RatVector& c);

}  // namespace toricmirror
