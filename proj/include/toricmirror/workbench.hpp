#pragma once

// Verification drivers: the one-variable dictionary, the quotient comparison
// of generator Hom matrices with line-bundle Ext, and γ-independence.

#include "toricmirror/cellsheaf.hpp"
#include "toricmirror/cox_coh.hpp"
#include "toricmirror/onedim.hpp"

#include "json.hpp"

#include <functional>
#include <random>

namespace toricmirror {

using Json = nlohmann::ordered_json;

/// Graded dims per ordered pair (i, j).
using DimsMatrix = std::vector<std::vector<std::vector<std::size_t>>>;

struct VerificationReport {
  std::string test;
  std::string fan;
  Json inputs = Json::object();
  Json matrices = Json::object();
  bool pass = false;
  Json witness = nullptr;
  std::vector<std::string> notes;

  std::string verdict() const { return pass ? "pass" : "fail"; }
  Json to_json() const;
};

/// How A-side objects are matched with B-side objects.
struct MatrixMatch {
  std::vector<std::size_t> permutation;  // A index i <-> B index permutation[i]
  bool transpose = false;
  std::vector<long> shifts;  // A_ij[k] = B_{π i, π j}[k + s_j - s_i]
  Json to_json() const;
};

struct MatchOptions {
  bool allow_transpose = true;
  bool allow_shifts = true;
  long max_shift = 2;
};

/// Search over permutation x transpose x per-object shift.
std::optional<MatrixMatch> match_matrices(const DimsMatrix& a, const DimsMatrix& b, const MatchOptions& opts = {});
/// Does the match carry a onto b exactly?
bool check_match(const DimsMatrix& a, const DimsMatrix& b, const MatrixMatch& m);

enum class Orientation { Standard, Flipped };

/// The mirror with the roles of ρ₊ and ρ₋ exchanged when flipped.
CellSheaf oriented_mirror(const TorsionModule& m, Orientation o);

struct Dim1Options {
  std::uint64_t seed = 1;
  std::size_t count = 50;
  std::size_t max_dim = 4;
  Orientation orientation = Orientation::Standard;
  std::vector<Rational> characters{Rational(2), Rational(-1), Rational(1, 3), Rational(-5, 2), Rational(7)};
  std::size_t jobs = 1;
};
VerificationReport verify_dim1(const Dim1Options& opts);

struct QuotientOptions {
  std::optional<RatVector> gamma;  // defaults to 0
  MatchOptions match;
};
/// B side: hom_matrix of the classes; A side: generators of Sh_Λ and their rhom matrix.
VerificationReport verify_quotient(const FanData& fd, const std::vector<IntVector>& classes,
                                   const QuotientOptions& opts = {});
/// Re-derives the verdict of a passing quotient report from its stored matrices and witness.
bool recheck_quotient(const VerificationReport& r);

/// A-side generators of Sh_Λ at γ and their pairwise rhom.
DimsMatrix aside_matrix(const FanData& fd, const RatVector& gamma);
DimsMatrix bside_matrix(const FanData& fd, const std::vector<IntVector>& classes);

struct GammaOptions {
  bool categorical = true;  // compare A-side Hom matrices (d ≤ 2, complete fans)
  std::size_t jobs = 1;
};
VerificationReport verify_gamma(const FanData& fd, const std::vector<RatVector>& gammas, const GammaOptions& opts = {});

/// Seeded rational γ in [0, 1)^n with small denominators.
RatVector random_gamma(std::mt19937_64& rng, std::size_t n);

/// Runs fn(0..count-1) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

Json dims_to_json(const DimsMatrix& m);
DimsMatrix dims_from_json(const Json& j);
Json rational_vector_json(const RatVector& v);

}  // namespace toricmirror
