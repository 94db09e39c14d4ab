#pragma once

// Line bundles O(D) on the toric stack of a simplicial fan and their sheaf
// cohomology, by the chamber method:
//
//   h^i(O(a)) = sum over m in M of  h~^{i-1}(Delta_m),
//   Delta_m   = { S in strata : <m, f(e_r)> < -a_r for all r in S },
//
// with h~^{-1} of the empty complex {∅} equal to 1.

#include "toricmirror/fan.hpp"
#include "toricmirror/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toricmirror {

TORICMIRROR_DEFINE_ERROR(NotSimplicial);
TORICMIRROR_DEFINE_ERROR(NotComplete);

/// A toric divisor sum a_r D_r together with its class in Cl = Z^n / M.
struct DivisorClass {
  IntVector lift;
  QuotientClass cls;
};

DivisorClass divisor_class(const FanData& fd, const IntVector& lift);

/// Closed box lo <= m <= hi in M = Z^d.
struct DegreeBox {
  IntVector lo, hi;
};

struct CohomologyTable {
  std::vector<std::size_t> dims;  // h^0 .. h^d
  bool truncated = false;         // computed inside a caller-supplied box on a non-complete fan
  std::map<IntVector, std::vector<std::size_t>> per_degree;  // only nonzero degrees, when requested

  std::size_t operator[](std::size_t i) const { return i < dims.size() ? dims[i] : 0; }
  long euler_characteristic() const;
  std::string to_string() const;  // "(1,0,0)"
};

/// Box hull of the vertices <m, f(e_r)> = -a_r (r in an independent d-set), padded.
DegreeBox search_box(const FanData& fd, const IntVector& lift, long padding = 1);

struct CohomologyOptions {
  std::optional<DegreeBox> box;  // required for non-complete fans
  bool keep_per_degree = false;
};

CohomologyTable cohomology_dims(const FanData& fd, const IntVector& lift, const CohomologyOptions& opts = {});

/// Ext^i(O(D1), O(D2)) = h^i(O(D2 - D1)).
CohomologyTable hom_dims(const FanData& fd, const IntVector& d1, const IntVector& d2,
                         const CohomologyOptions& opts = {});

/// Entry (i, j) is hom_dims(classes[i], classes[j]).
std::vector<std::vector<CohomologyTable>> hom_matrix(const FanData& fd, const std::vector<IntVector>& classes,
                                                     const CohomologyOptions& opts = {});

/// The canonical lift (-1, ..., -1); K = -sum D_r.
IntVector canonical_lift(const FanData& fd);

}  // namespace toricmirror
