#pragma once

// Fan data (N = Z^d, ray matrix f, coordinate strata), validation, and the Cox
// irrelevant locus.
//
// A stratum is stored by its support S ⊆ {0..n-1}: the closed coordinate face
// {x in R^n_{>=0} : x_i = 0 for i not in S}. Files use 1-based indices.

#include "toricmirror/exact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toricmirror {

TORICMIRROR_DEFINE_ERROR(InvalidFan);
TORICMIRROR_DEFINE_ERROR(UnknownName);
TORICMIRROR_DEFINE_ERROR(ParseError);

using Subset = std::uint32_t;

inline std::size_t subset_size(Subset s) { return static_cast<std::size_t>(__builtin_popcount(s)); }
inline bool subset_contains(Subset s, std::size_t i) { return (s >> i) & 1U; }
std::vector<std::size_t> subset_indices(Subset s);
Subset subset_of(const std::vector<std::size_t>& indices);
/// "{1,3}" in 1-based notation.
std::string subset_label(Subset s);

struct FanData {
  std::string name;
  std::size_t n = 0;
  std::size_t d = 0;
  IntMatrix f;                  // d x n, column i = f(e_i)
  std::vector<Subset> strata;   // sorted ascending
  bool closure_completed = false;  // the loader added implied sub-strata

  bool has_stratum(Subset s) const;
  IntVector ray(std::size_t i) const { return f.column(i); }
  /// Restriction of f to the columns in S.
  IntMatrix columns(Subset s) const { return f.select_columns(subset_indices(s)); }
};

/// Adds every subset of every listed stratum. Returns true if anything was added.
bool complete_downward_closure(FanData& fd);

struct Violation {
  enum class Kind { Shape, RankDeficient, NotDownwardClosed, MissingRay, CollapsedRay, RelintOverlap };
  Kind kind;
  std::string message;
  std::vector<Subset> witness_strata;
  RatVector witness_point;  // common relative-interior point for overlaps
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  /// Valid apart from relative-interior overlaps (non-simplicial strata).
  bool structurally_valid() const;
  std::string to_string() const;
};

ValidationReport validate(const FanData& fd);

/// Throws InvalidFan unless validate() passes.
void require_valid(const FanData& fd);
/// Throws InvalidFan unless the data is structurally valid (see ValidationReport).
void require_structural(const FanData& fd);

/// relint f(σ_S) ∩ relint f(σ_T) = ∅, decided by exact LP feasibility of
/// f(λ) = f(μ), λ_i >= 1 on S, μ_j >= 1 on T.
bool relint_disjoint(const FanData& fd, Subset s, Subset t);
/// Witness point when the relative interiors meet.
std::optional<RatVector> relint_common_point(const FanData& fd, Subset s, Subset t);

bool is_simplicial(const FanData& fd);

/// Whether the union of the cones is all of N_R (simplicial fans only).
bool is_complete(const FanData& fd);

/// Z = ∪ V(S) over S not in strata, listed by the ⊆-minimal non-faces S.
struct IrrelevantLocus {
  std::vector<Subset> components;
  bool empty() const { return components.empty(); }
  std::string to_string() const;  // e.g. "V(x1,x2,x3)", "∅"
};

IrrelevantLocus irrelevant_locus(const FanData& fd);

/// Named fans: "affine:N", "projective:N", "weighted_projective:w0,w1,...",
/// "hirzebruch:A", "p2_minus_vertex", "cone_over_square", "product:<a>*<b>".
FanData standard_fan(const std::string& spec);

FanData product(const FanData& a, const FanData& b);

/// JSON {"n","d","rays":[[..] per ray],"strata":[[1-based]]}; completes the closure.
FanData fan_from_json_text(const std::string& text, const std::string& name = "");
FanData load_fan(const std::string& path);
std::string fan_to_json_text(const FanData& fd);

}  // namespace toricmirror
