#include "doctest.h"
#include "oracles.hpp"

#include "toricmirror/cox_coh.hpp"

using namespace toricmirror;

namespace {

using Dims = std::vector<std::size_t>;

/// Two-chart Cech complex of O(d) on P^1, degree by degree:
/// U0 = Spec k[x] carries x^m for m >= 0, U1 = Spec k[x^-1] twisted by d carries x^m for m <= d.
Dims cech_p1(long d) {
  std::size_t h0 = 0, h1 = 0;
  for (long m = -std::abs(d) - 3; m <= std::abs(d) + 3; ++m) {
    const std::size_t c0 = (m >= 0 ? 1 : 0) + (m <= d ? 1 : 0);
    const std::size_t c1 = 1;
    const std::size_t r = std::min<std::size_t>(c0, 1);
    h0 += c0 - r;
    h1 += c1 - r;
  }
  return {h0, h1};
}

long binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Bott's formula for line bundles on P^n.
Dims bott_pn(long n, long k) {
  Dims h(n + 1, 0);
  if (k >= 0) h[0] = binom(k + n, n);
  if (k <= -n - 1) h[n] = binom(-k - 1, n);
  return h;
}

IntVector lift_of(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntVector add_character(const FanData& fd, IntVector lift, const IntVector& m) {
  for (std::size_t i = 0; i < fd.n; ++i)
    for (std::size_t r = 0; r < fd.d; ++r) lift[i] += m[r] * fd.f(r, i);
  return lift;
}

const std::vector<std::string> kGolden{"projective:1", "projective:2", "product:projective:1*projective:1",
                                       "hirzebruch:1"};

}  // namespace

TEST_CASE("P1 agrees with the two-chart Cech oracle") {
  auto p1 = standard_fan("projective:1");
  for (long d = -6; d <= 6; ++d) CHECK(cohomology_dims(p1, lift_of({d, 0})).dims == cech_p1(d));
  // frozen from the oracle
  CHECK(cech_p1(3) == Dims{4, 0});
  CHECK(cech_p1(-2) == Dims{0, 1});
}

TEST_CASE("P2 agrees with the lattice-point count and Bott's formula") {
  auto p2 = standard_fan("projective:2");
  for (long k = -7; k <= 5; ++k) CHECK(cohomology_dims(p2, lift_of({0, 0, k})).dims == bott_pn(2, k));
  CHECK(cohomology_dims(p2, lift_of({-3, 0, 0})).dims == Dims{0, 0, 1});
  CHECK(hom_dims(p2, lift_of({0, 0, 0}), lift_of({1, 0, 0})).dims[0] == 3);
  CHECK(hom_dims(p2, lift_of({0, 0, 0}), lift_of({2, 0, 0})).dims[0] == 6);
}

TEST_CASE("P1 x P1 follows Kunneth over the P1 oracle") {
  auto q = standard_fan("product:projective:1*projective:1");
  for (long a = -4; a <= 3; ++a)
    for (long b = -4; b <= 3; ++b) {
      auto x = cech_p1(a), y = cech_p1(b);
      Dims expect{x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1]};
      CHECK(cohomology_dims(q, lift_of({a, 0, b, 0})).dims == expect);
    }
  CHECK(cohomology_dims(q, lift_of({-1, 0, -1, 0})).dims == Dims{0, 0, 0});
}

TEST_CASE("structure sheaf and endomorphisms") {
  for (const auto& name : kGolden) {
    auto fd = standard_fan(name);
    auto h = cohomology_dims(fd, IntVector(fd.n));
    CHECK(h[0] == 1);
    for (std::size_t i = 1; i <= fd.d; ++i) CHECK(h[i] == 0);
    auto lift = IntVector(fd.n);
    lift[0] = 3;
    CHECK(hom_dims(fd, lift, lift)[0] == 1);
  }
}

TEST_CASE("Serre duality on the golden corpus") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& name : kGolden) {
    auto fd = standard_fan(name);
    auto k = canonical_lift(fd);
    for (int trial = 0; trial < 12; ++trial) {
      IntVector a(fd.n), dual(fd.n);
      for (std::size_t i = 0; i < fd.n; ++i) {
        a[i] = coef(rng);
        dual[i] = k[i] - a[i];
      }
      auto h = cohomology_dims(fd, a);
      auto hd = cohomology_dims(fd, dual);
      for (std::size_t i = 0; i <= fd.d; ++i) CHECK(h[i] == hd[fd.d - i]);
    }
  }
}

TEST_CASE("tables depend only on the class, and the box is large enough") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& name : kGolden) {
    auto fd = standard_fan(name);
    for (int trial = 0; trial < 4; ++trial) {
      IntVector a(fd.n);
      for (auto& x : a) x = coef(rng);
      auto base = cohomology_dims(fd, a);
      for (int l = 0; l < 10; ++l) {
        IntVector m(fd.d);
        for (auto& x : m) x = coef(rng);
        auto other = add_character(fd, a, m);
        CHECK(divisor_class(fd, other).cls == divisor_class(fd, a).cls);
        CHECK(cohomology_dims(fd, other).dims == base.dims);
      }
      CohomologyOptions wide;
      wide.box = search_box(fd, a, 2 + 2);
      CHECK(cohomology_dims(fd, a, wide).dims == base.dims);
    }
  }
}

TEST_CASE("hom matrices") {
  auto p1 = standard_fan("projective:1");
  auto m1 = hom_matrix(p1, {lift_of({0, 0}), lift_of({1, 0})});
  CHECK(m1[0][0].dims == Dims{1, 0});
  CHECK(m1[0][1].dims == Dims{2, 0});
  CHECK(m1[1][0].dims == Dims{0, 0});
  CHECK(m1[1][1].dims == Dims{1, 0});

  auto p2 = standard_fan("projective:2");
  auto m2 = hom_matrix(p2, {lift_of({0, 0, 0}), lift_of({1, 0, 0}), lift_of({2, 0, 0})});
  CHECK(m2[0][1][0] == 3);
  CHECK(m2[0][2][0] == 6);
  CHECK(m2[1][2][0] == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(m2[i][j].dims == Dims{0, 0, 0});

  auto single = hom_matrix(p2, {lift_of({0, 0, 0})});
  CHECK(single[0][0].dims == Dims{1, 0, 0});
}

TEST_CASE("weighted and stacky examples") {
  auto w = standard_fan("weighted_projective:1,1,2");
  // weighted-degree-2 monomials x1^2, x1 x2, x2^2, x3
  CHECK(cohomology_dims(w, lift_of({0, 0, 1})).dims == Dims{4, 0, 0});
  CHECK(cohomology_dims(w, lift_of({1, 0, 0})).dims == Dims{2, 0, 0});
}

TEST_CASE("per-degree contributions and error paths") {
  auto p1 = standard_fan("projective:1");
  CohomologyOptions opts;
  opts.keep_per_degree = true;
  auto t = cohomology_dims(p1, lift_of({2, 0}), opts);
  CHECK(t.per_degree.size() == 3);

  auto a2 = standard_fan("affine:2");
  CHECK_THROWS_AS(cohomology_dims(a2, lift_of({0, 0})), NotComplete);
  CohomologyOptions boxed;
  boxed.box = DegreeBox{lift_of({-2, -2}), lift_of({2, 2})};
  auto tr = cohomology_dims(a2, lift_of({0, 0}), boxed);
  CHECK(tr.truncated);
  CHECK(tr.dims == Dims{9, 0, 0});

  CHECK_THROWS_AS(cohomology_dims(standard_fan("cone_over_square"), lift_of({0, 0, 0, 0})), NotSimplicial);
  CHECK_THROWS_AS(cohomology_dims(p1, lift_of({0})), DimensionMismatch);
}
