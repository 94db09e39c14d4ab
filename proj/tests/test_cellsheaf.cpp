#include "doctest.h"

#include "toricmirror/cellsheaf.hpp"
#include "toricmirror/fan.hpp"
#include "toricmirror/linalg.hpp"

#include <random>

using namespace toricmirror;

namespace {

ComplexPtr adapted(const std::string& fan, const RatVector& gamma) {
  FanData fd = standard_fan(fan);
  auto sk = reduce(fd, gamma);
  return std::make_shared<CellComplex>(build_adapted_complex(fd.d, sk.components));
}

std::vector<SkeletonComponent> components(const std::string& fan, const RatVector& gamma) {
  return reduce(standard_fan(fan), gamma).components;
}

std::size_t count_arrows(const CellComplex& cx, std::size_t from_dim, std::size_t to_dim) {
  std::size_t n = 0;
  for (const auto& a : cx.arrows())
    if (!a.identity() && cx.cell(a.from).dim == from_dim && cx.cell(a.to).dim == to_dim) ++n;
  return n;
}

// Oracle: Ext by a projective resolution with representables P_x(y) = k[Hom(x, y)].
// Hom(P_x, G) = G(x), so Ext^k is the cohomology of ⊕_{generators} G(x_g).

struct Generator {
  std::size_t at;
  RatVector vec;  // element of the resolved module at `at`
};

std::vector<std::vector<std::size_t>> hom_sets(const CellComplex& cx, std::size_t x) {
  std::vector<std::vector<std::size_t>> out(cx.size());
  for (std::size_t a = 0; a < cx.arrows().size(); ++a)
    if (cx.arrow(a).from == x) out[cx.arrow(a).to].push_back(a);
  return out;
}

RatVector act(const RatMatrix& m, const RatVector& v) { return m * v; }

/// Generators of M: complements of the radical at each cell.
std::vector<Generator> top_of(const CellSheaf& m) {
  const auto& cx = *m.complex;
  std::vector<Generator> gens;
  for (std::size_t x = 0; x < cx.size(); ++x) {
    std::vector<RatVector> span;
    for (std::size_t a : cx.in(x)) {
      const auto& fm = m.maps[a];
      for (std::size_t s = 0; s < fm.cols(); ++s) span.push_back(fm.column(s));
    }
    std::size_t r = span.empty() ? 0 : rank(RatMatrix::from_columns(m.dims[x], span));
    for (std::size_t i = 0; i < m.dims[x]; ++i) {
      RatVector e(m.dims[x]);
      e[i] = 1;
      span.push_back(e);
      std::size_t r2 = rank(RatMatrix::from_columns(m.dims[x], span));
      if (r2 > r) {
        gens.push_back({x, e});
        r = r2;
      } else {
        span.pop_back();
      }
    }
  }
  return gens;
}

struct CoverStep {
  std::vector<Generator> gens;
  // basis of P(y): (generator index, arrow)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> basis;
  CellSheaf kernel;
  std::vector<RatMatrix> kernel_basis;  // columns in P(y) coordinates
};

CoverStep cover(const CellSheaf& m) {
  const auto& cx = *m.complex;
  CoverStep st;
  st.gens = top_of(m);
  st.basis.resize(cx.size());
  for (std::size_t g = 0; g < st.gens.size(); ++g) {
    auto hs = hom_sets(cx, st.gens[g].at);
    for (std::size_t y = 0; y < cx.size(); ++y)
      for (std::size_t a : hs[y]) st.basis[y].push_back({g, a});
  }
  st.kernel.complex = m.complex;
  for (std::size_t y = 0; y < cx.size(); ++y) {
    std::vector<RatVector> cols;
    for (auto [g, a] : st.basis[y]) cols.push_back(act(m.maps[a], st.gens[g].vec));
    RatMatrix pi = cols.empty() ? RatMatrix(m.dims[y], 0) : RatMatrix::from_columns(m.dims[y], cols);
    RatMatrix k = cols.empty() ? RatMatrix(0, 0) : nullspace(pi);
    st.kernel_basis.push_back(k);
    st.kernel.dims.push_back(k.cols());
  }
  for (const auto& ar : cx.arrows()) {
    const auto& bx = st.kernel_basis[ar.from];
    const auto& by = st.kernel_basis[ar.to];
    std::size_t a = &ar - &cx.arrows()[0];
    RatMatrix km(by.cols(), bx.cols());
    for (std::size_t j = 0; j < bx.cols(); ++j) {
      RatVector img(st.basis[ar.to].size());
      for (std::size_t i = 0; i < st.basis[ar.from].size(); ++i) {
        if (bx(i, j) == 0) continue;
        auto [g, b] = st.basis[ar.from][i];
        std::size_t ba = cx.compose(b, a);
        for (std::size_t k = 0; k < st.basis[ar.to].size(); ++k)
          if (st.basis[ar.to][k] == std::make_pair(g, ba)) img[k] += bx(i, j);
      }
      auto sol = solve(by, img);
      REQUIRE(sol);
      for (std::size_t i = 0; i < by.cols(); ++i) km(i, j) = (*sol)[i];
    }
    st.kernel.maps.push_back(km);
  }
  return st;
}

std::vector<std::size_t> ext_by_resolution(const CellSheaf& f, const CellSheaf& g) {
  const auto& cx = *f.complex;
  std::vector<CoverStep> steps;
  CellSheaf m = f;
  while (!m.is_zero()) {
    steps.push_back(cover(m));
    m = steps.back().kernel;
    REQUIRE(steps.size() <= cx.dim() + 1);
  }
  // Hom(P^k, G) = ⊕_g G(x_g)
  std::vector<std::size_t> size(steps.size() + 1, 0);
  std::vector<std::vector<std::size_t>> off(steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k)
    for (const auto& gen : steps[k].gens) {
      off[k].push_back(size[k]);
      size[k] += g.dims[gen.at];
    }
  std::vector<std::size_t> ranks(steps.size() + 1, 0);
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
    if (!size[k] || !size[k + 1]) continue;
    RatMatrix d(size[k + 1], size[k]);
    const auto& st = steps[k];
    for (std::size_t h = 0; h < steps[k + 1].gens.size(); ++h) {
      const auto& gen = steps[k + 1].gens[h];
      RatVector e = act(st.kernel_basis[gen.at], gen.vec);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto [gi, a] = st.basis[gen.at][i];
        const auto& ga = g.maps[a];
        for (std::size_t r = 0; r < ga.rows(); ++r)
          for (std::size_t s = 0; s < ga.cols(); ++s) d(off[k + 1][h] + r, off[k][gi] + s) += e[i] * ga(r, s);
      }
    }
    ranks[k] = rank(d);
  }
  std::vector<std::size_t> ext(cx.dim() + 1, 0);
  for (std::size_t k = 0; k < steps.size() && k <= cx.dim(); ++k)
    ext[k] = size[k] - ranks[k] - (k ? ranks[k - 1] : 0);
  return ext;
}

CellSheaf representable(const ComplexPtr& cx, std::size_t x) {
  auto hs = hom_sets(*cx, x);
  CellSheaf p{cx, {}, {}};
  for (const auto& h : hs) p.dims.push_back(h.size());
  for (std::size_t a = 0; a < cx->arrows().size(); ++a) {
    const auto& ar = cx->arrow(a);
    RatMatrix m(p.dims[ar.to], p.dims[ar.from]);
    for (std::size_t i = 0; i < hs[ar.from].size(); ++i) {
      std::size_t c = cx->compose(hs[ar.from][i], a);
      for (std::size_t j = 0; j < hs[ar.to].size(); ++j)
        if (hs[ar.to][j] == c) m(j, i) = 1;
    }
    p.maps.push_back(m);
  }
  return p;
}

CellSheaf skyscraper(const ComplexPtr& cx, std::size_t x) {
  CellSheaf s = zero_sheaf(cx);
  s.dims[x] = 1;
  for (std::size_t a = 0; a < cx->arrows().size(); ++a)
    s.maps[a] = RatMatrix(s.dims[cx->arrow(a).to], s.dims[cx->arrow(a).from]);
  s.maps[cx->identity(x)] = RatMatrix::identity(1);
  return s;
}

/// Two-cell circle representation with given maps on the arrows of shift 0 (ρ₊) and -1 (ρ₋).
CellSheaf circle_rep(const ComplexPtr& cx, const Rational& plus, const Rational& minus) {
  CellSheaf f = constant_sheaf(cx);
  for (std::size_t a = 0; a < cx->arrows().size(); ++a) {
    const auto& ar = cx->arrow(a);
    if (ar.identity()) continue;
    f.maps[a] = RatMatrix{{ar.shift[0] == 0 ? plus : minus}};
  }
  return f;
}

std::vector<std::size_t> hom0_sorted(const std::vector<std::vector<std::vector<std::size_t>>>& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) out.push_back(m[i][j][0]);
  std::sort(out.begin(), out.end());
  return out;
}

void require_exceptional(const std::vector<std::vector<std::vector<std::size_t>>>& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i][i][0] == 1);
    for (std::size_t j = 0; j < m.size(); ++j)
      for (std::size_t k = 1; k < m[i][j].size(); ++k) CHECK(m[i][j][k] == 0);
    for (std::size_t j = i + 1; j < m.size(); ++j) CHECK((m[i][j][0] == 0 || m[j][i][0] == 0));
  }
}

}  // namespace

TEST_CASE("adapted complexes") {
  auto p1 = adapted("projective:1", {0, 0});
  CHECK(p1->dim() == 1);
  CHECK(p1->size() == 2);
  CHECK(count_arrows(*p1, 0, 1) == 2);

  auto p2 = adapted("projective:2", {0, 0, 0});
  CHECK(p2->euler_characteristic() == 0);
  std::size_t v = 0, e = 0, f = 0;
  for (const auto& c : p2->cells()) (c.dim == 0 ? v : c.dim == 1 ? e : f)++;
  CHECK(v == 1);
  CHECK(e == 3);
  CHECK(f == 2);

  auto empty = std::make_shared<CellComplex>(build_adapted_complex(1, {}));
  CHECK(empty->size() == 2);
  CHECK(count_arrows(*empty, 0, 1) == 2);

  CHECK_THROWS_AS(build_adapted_complex(3, {}), UnsupportedDimension);
}

TEST_CASE("adapted complexes are closed surfaces") {
  for (const auto& [fan, gamma] : std::vector<std::pair<std::string, RatVector>>{
           {"projective:2", {Rational(1, 3), Rational(1, 5), Rational(2, 7)}},
           {"p1xp1", {Rational(1, 2), 0, Rational(1, 3), 0}},
           {"hirzebruch:1", {Rational(1, 4), Rational(2, 3), 0, Rational(1, 5)}},
           {"weighted_projective:1,1,2", {0, 0, 0}}}) {
    CAPTURE(fan);
    auto cx = adapted(fan, gamma);
    CHECK(cx->euler_characteristic() == 0);
    for (std::size_t c = 0; c < cx->size(); ++c) {
      if (cx->cell(c).dim != 1) continue;
      std::size_t faces = 0;
      for (std::size_t a : cx->out(c)) faces += cx->cell(cx->arrow(a).to).dim == 2;
      CHECK(faces == 2);
    }
    for (std::size_t c = 0; c < cx->size(); ++c)
      if (cx->cell(c).dim == 1) CHECK(cx->in(c).size() == 2);
  }
}

TEST_CASE("rhom of constant sheaves gives torus Betti numbers") {
  auto c1 = adapted("projective:1", {0, 0});
  CHECK(rhom(constant_sheaf(c1), constant_sheaf(c1)) == std::vector<std::size_t>{1, 1});
  auto fine = std::make_shared<CellComplex>(CellComplex::circle({0, Rational(1, 3), Rational(3, 4)}));
  CHECK(rhom(constant_sheaf(fine), constant_sheaf(fine)) == std::vector<std::size_t>{1, 1});
  CHECK(rhom(constant_sheaf(fine, 2), constant_sheaf(fine)) == std::vector<std::size_t>{2, 2});

  for (const auto& [fan, gamma] : std::vector<std::pair<std::string, RatVector>>{
           {"projective:2", {0, 0, 0}},
           {"projective:2", {Rational(1, 3), Rational(1, 5), Rational(2, 7)}},
           {"p1xp1", {0, 0, 0, 0}},
           {"hirzebruch:1", {Rational(1, 4), Rational(2, 3), 0, Rational(1, 5)}}}) {
    auto cx = adapted(fan, gamma);
    CHECK(rhom(constant_sheaf(cx), constant_sheaf(cx)) == std::vector<std::size_t>{1, 2, 1});
  }
  auto cx = adapted("projective:2", {0, 0, 0});
  CHECK(rhom(zero_sheaf(cx), constant_sheaf(cx)) == std::vector<std::size_t>{0, 0, 0});
  CHECK(rhom(constant_sheaf(cx), zero_sheaf(cx)) == std::vector<std::size_t>{0, 0, 0});
  CHECK_THROWS_AS(rhom(constant_sheaf(cx), constant_sheaf(c1)), MismatchedComplex);
}

TEST_CASE("rhom agrees with the projective-resolution oracle") {
  for (const auto& cx : std::vector<ComplexPtr>{adapted("projective:1", {0, 0}),
                         std::make_shared<CellComplex>(CellComplex::circle({0, Rational(1, 2)})),
                         adapted("projective:2", {0, 0, 0})}) {
    std::vector<CellSheaf> objs{constant_sheaf(cx), zero_sheaf(cx)};
    for (std::size_t x = 0; x < cx->size(); ++x) {
      objs.push_back(representable(cx, x));
      objs.push_back(skyscraper(cx, x));
    }
    std::vector<Rational> chi(cx->dim(), Rational(-2));
    objs.push_back(twist(constant_sheaf(cx), chi));
    for (const auto& f : objs) {
      f.check_functorial();
      if (f.total_dim() > 8) continue;
      for (const auto& g : objs) {
        if (g.total_dim() > 8) continue;
        CHECK(rhom(f, g) == ext_by_resolution(f, g));
      }
    }
  }
}

TEST_CASE("representables have the expected Hom") {
  auto cx = adapted("projective:2", {0, 0, 0});
  for (std::size_t x = 0; x < cx->size(); ++x)
    for (std::size_t y = 0; y < cx->size(); ++y) {
      auto px = representable(cx, x), py = representable(cx, y);
      auto ext = rhom(px, py);
      CHECK(ext[0] == py.dims[x]);
      CHECK(ext[1] == 0);
      CHECK(ext[2] == 0);
    }
}

TEST_CASE("functoriality check") {
  auto cx = adapted("projective:2", {0, 0, 0});
  auto f = constant_sheaf(cx);
  CHECK_NOTHROW(f.check_functorial());
  for (std::size_t a = 0; a < cx->arrows().size(); ++a)
    if (!cx->arrow(a).identity() && cx->cell(cx->arrow(a).from).dim == 0 && cx->cell(cx->arrow(a).to).dim == 1) {
      f.maps[a] = RatMatrix{{2}};
      break;
    }
  CHECK_THROWS_AS(f.check_functorial(), NotFunctorial);
  auto g = constant_sheaf(cx);
  g.dims[0] = 2;
  CHECK_THROWS_AS(g.check_functorial(), NotFunctorial);
}

TEST_CASE("microsupport on the circle") {
  auto cx = adapted("projective:1", {0, 0});
  auto ms = microsupport(constant_sheaf(cx));
  for (const auto& c : ms.cells)
    for (const auto& ch : c.chambers) CHECK(ch.present == (ch.kind == Chamber::Kind::Zero));
  CHECK(microsupport(zero_sheaf(cx)).empty());

  // ρ₊ = 1, ρ₋ = 0: propagation fails toward the negative side
  auto f = circle_rep(cx, 1, 0);
  auto rep = microsupport(f);
  std::size_t v = cx->cell(0).dim == 0 ? 0 : 1;
  for (const auto& ch : rep.cells[v].chambers) {
    if (ch.kind != Chamber::Kind::Ray) continue;
    CHECK(ch.present == (ch.covector[0] > 0));
  }
  CHECK(rep.to_string(*cx).find("ray(1)") != std::string::npos);

  auto sky = microsupport(skyscraper(cx, v));
  for (const auto& ch : sky.cells[v].chambers) CHECK(ch.present);
  for (const auto& ch : sky.cells[1 - v].chambers) CHECK_FALSE(ch.present);
}

TEST_CASE("microsupport is closed") {
  for (const auto& cx : std::vector<ComplexPtr>{adapted("projective:2", {0, 0, 0}),
                         adapted("p1xp1", {Rational(1, 2), 0, Rational(1, 3), 0})}) {
    std::vector<CellSheaf> objs{constant_sheaf(cx)};
    for (std::size_t x = 0; x < cx->size(); ++x) {
      objs.push_back(representable(cx, x));
      objs.push_back(skyscraper(cx, x));
    }
    for (const auto& f : objs) {
      auto ms = microsupport(f);
      for (const auto& c : ms.cells) {
        // every present nonzero chamber sits over the support
        bool zero = false, other = false;
        for (const auto& ch : c.chambers) (ch.kind == Chamber::Kind::Zero ? zero : other) |= ch.present;
        if (other) CHECK(zero);
        if (cx->cell(c.cell).dim != 0) continue;
        // walls adjacent to a present sector are present
        const auto& chs = c.chambers;
        std::vector<const Chamber*> rays, sectors;
        for (const auto& ch : chs) {
          if (ch.kind == Chamber::Kind::Ray) rays.push_back(&ch);
          if (ch.kind == Chamber::Kind::Sector) sectors.push_back(&ch);
        }
        REQUIRE(rays.size() == sectors.size());
        for (std::size_t i = 0; i < sectors.size(); ++i)
          if (sectors[i]->present) {
            CHECK(rays[i]->present);
            CHECK(rays[(i + 1) % rays.size()]->present);
          }
      }
    }
  }
}

TEST_CASE("membership in Sh_Lambda") {
  auto comps = components("projective:1", {0, 0});
  auto cx = adapted("projective:1", {0, 0});
  CHECK(in_subcategory(constant_sheaf(cx), comps));
  CHECK(in_subcategory(skyscraper(cx, 0), comps));

  // a vertex at 1/2 carries no skeleton fiber
  auto fine = std::make_shared<CellComplex>(CellComplex::circle({0, Rational(1, 2)}));
  std::size_t half = 0;
  for (std::size_t c = 0; c < fine->size(); ++c)
    if (fine->cell(c).dim == 0 && fine->cell(c).point[0] == Rational(1, 2)) half = c;
  CHECK_FALSE(in_subcategory(skyscraper(fine, half), comps));
  std::string witness;
  CHECK_FALSE(in_subcategory(microsupport(skyscraper(fine, half)), *fine, comps, &witness));
  CHECK(witness.find(fine->cell(half).label) == 0);

  // local systems against the zero section
  std::vector<SkeletonComponent> zero_section{comps.front()};
  REQUIRE(zero_section.front().base_dim() == 1);
  CHECK(in_subcategory(twist(constant_sheaf(cx), {Rational(3)}), zero_section));
  CHECK_FALSE(in_subcategory(circle_rep(cx, 1, 0), zero_section));

  // affine line: only the negative ray at 0
  auto a1 = components("affine:1", {0});
  auto ca = std::make_shared<CellComplex>(build_adapted_complex(1, a1));
  CHECK(in_subcategory(circle_rep(ca, 0, 1), a1) != in_subcategory(circle_rep(ca, 1, 0), a1));

  auto p2 = components("projective:2", {0, 0, 0});
  auto coarse = std::make_shared<CellComplex>(CellComplex::circle({0}));
  CHECK_THROWS_AS(in_subcategory(constant_sheaf(coarse), p2), NonAdaptedComplex);
}

TEST_CASE("generators for P1") {
  auto comps = components("projective:1", {0, 0});
  auto cx = adapted("projective:1", {0, 0});
  auto gs = generators(cx, comps);
  REQUIRE(gs.objects.size() == 2);
  CHECK(gs.inverted.empty());
  auto m = rhom_matrix(gs.objects);
  require_exceptional(m);
  CHECK(hom0_sorted(m) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("generator for the zero section of the circle") {
  auto comps = components("projective:1", {0, 0});
  std::vector<SkeletonComponent> zero_section{comps.front()};
  auto cx = std::make_shared<CellComplex>(build_adapted_complex(1, zero_section));
  auto gs = generators(cx, zero_section);
  REQUIRE(gs.objects.size() == 1);
  CHECK(gs.inverted.size() == 2);
  CHECK(rhom(gs.objects[0], gs.objects[0]) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("generators for P2 follow the Beilinson pattern") {
  auto comps = components("projective:2", {0, 0, 0});
  auto cx = adapted("projective:2", {0, 0, 0});
  auto gs = generators(cx, comps);
  REQUIRE(gs.objects.size() == 3);
  CHECK(gs.inverted.size() == 3);
  auto m = rhom_matrix(gs.objects);
  require_exceptional(m);
  CHECK(hom0_sorted(m) == std::vector<std::size_t>{0, 0, 0, 3, 3, 6});
  for (const auto& g : gs.objects) CHECK(in_subcategory(g, comps));
}

TEST_CASE("generator Hom is gamma-independent") {
  for (const auto& [fan, count, pattern] :
       std::vector<std::tuple<std::string, std::size_t, std::vector<std::size_t>>>{
           {"projective:2", 3, {0, 0, 0, 3, 3, 6}},
           {"p1xp1", 4, {0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 4}}}) {
    FanData fd = standard_fan(fan);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(0, 12), den(1, 7);
    for (int trial = 0; trial < 3; ++trial) {
      RatVector gamma(fd.n);
      for (auto& x : gamma) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
      }
      CAPTURE(fan);
      CAPTURE(trial);
      auto sk = reduce(fd, gamma);
      auto cx = std::make_shared<CellComplex>(build_adapted_complex(fd.d, sk.components));
      auto gs = generators(cx, sk.components);
      REQUIRE(gs.objects.size() == count);
      auto m = rhom_matrix(gs.objects);
      require_exceptional(m);
      CHECK(hom0_sorted(m) == pattern);
    }
  }
}

TEST_CASE("twist and translate") {
  auto cx = adapted("projective:1", {0, 0});
  auto k = constant_sheaf(cx);
  CHECK(twist(k, {Rational(1)}).maps == k.maps);
  auto l = twist(k, {Rational(3)});
  CHECK(rhom(l, l) == std::vector<std::size_t>{1, 1});
  CHECK(rhom(k, l) == std::vector<std::size_t>{0, 0});
  CHECK(rhom(k, l) == ext_by_resolution(k, l));
  CHECK(twist(twist(l, {Rational(2)}), {Rational(1, 6)}).maps == k.maps);
  CHECK(twist(twist(k, {Rational(2)}), {Rational(5)}).maps == twist(k, {Rational(10)}).maps);
  CHECK_THROWS(twist(k, {Rational(0)}));

  auto sym = std::make_shared<CellComplex>(CellComplex::circle({0, Rational(1, 3), Rational(2, 3)}));
  auto f = skyscraper(sym, 0);
  auto tf = translate(f, {Rational(1, 3)});
  CHECK(tf.total_dim() == 1);
  CHECK(tf.dims[0] == 0);
  auto back = translate(translate(tf, {Rational(1, 3)}), {Rational(1, 3)});
  CHECK(back.dims == f.dims);
  CHECK(back.maps == f.maps);
  auto h = constant_sheaf(sym);
  CHECK(rhom(translate(f, {Rational(1, 3)}), translate(h, {Rational(1, 3)})) == rhom(f, h));
  CHECK_THROWS_AS(translate(f, {Rational(1, 5)}), NonSymmetricComplex);

  auto p2 = adapted("projective:2", {0, 0, 0});
  auto gs = generators(p2, components("projective:2", {0, 0, 0}));
  for (const auto& a : gs.objects)
    for (const auto& b : gs.objects) {
      auto ta = twist(a, {Rational(2), Rational(-1)}), tb = twist(b, {Rational(2), Rational(-1)});
      CHECK(rhom(ta, tb) == rhom(a, b));
    }
}

TEST_CASE("ambient rhom between generators equals Hom in the localized category") {
  for (const auto& [fan, gamma] : std::vector<std::pair<std::string, RatVector>>{
           {"projective:1", {0, 0}},
           {"projective:2", {0, 0, 0}},
           {"projective:2", {Rational(1, 3), Rational(1, 5), Rational(2, 7)}},
           {"p1xp1", {Rational(1, 2), 0, Rational(1, 3), 0}},
           {"hirzebruch:1", {0, 0, 0, 0}},
           {"weighted_projective:1,1,2", {0, 0, 0}}}) {
    CAPTURE(fan);
    auto comps = components(fan, gamma);
    auto cx = std::make_shared<CellComplex>(build_adapted_complex(gamma.size() == 2 ? 1 : 2, comps));
    auto gs = generators(cx, comps);
    for (std::size_t i = 0; i < gs.objects.size(); ++i)
      for (std::size_t j = 0; j < gs.objects.size(); ++j) {
        auto ext = rhom(gs.objects[i], gs.objects[j]);
        CHECK(ext[0] == gs.objects[j].dims[gs.classes[i].front()]);
        for (std::size_t k = 1; k < ext.size(); ++k) CHECK(ext[k] == 0);
      }
  }
}
