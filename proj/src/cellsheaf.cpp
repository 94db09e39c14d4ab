#include "toricmirror/cellsheaf.hpp"

#include "toricmirror/linalg.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace toricmirror {

std::size_t CellSheaf::total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

void CellSheaf::check_functorial() const {
  const auto& cx = *complex;
  if (dims.size() != cx.size() || maps.size() != cx.arrows().size())
    throw MismatchedComplex("sheaf data does not match its complex");
  for (std::size_t a = 0; a < cx.arrows().size(); ++a) {
    const auto& ar = cx.arrow(a);
    if (maps[a].rows() != dims[ar.to] || maps[a].cols() != dims[ar.from])
      throw NotFunctorial("map on arrow " + std::to_string(a) + " has the wrong shape");
    if (ar.identity() && !(maps[a] == RatMatrix::identity(dims[ar.from])))
      throw NotFunctorial("identity arrow of " + cx.cell(ar.from).label + " acts nontrivially");
  }
  for (std::size_t a = 0; a < cx.arrows().size(); ++a) {
    if (cx.arrow(a).identity()) continue;
    for (std::size_t b : cx.out(cx.arrow(a).to)) {
      std::size_t ab = cx.compose(a, b);
      if (!(maps[b] * maps[a] == maps[ab]))
        throw NotFunctorial("F(b)F(a) != F(ba) for arrows " + std::to_string(a) + ", " + std::to_string(b));
    }
  }
}

CellSheaf zero_sheaf(const ComplexPtr& cx) {
  CellSheaf f{cx, std::vector<std::size_t>(cx->size(), 0), {}};
  for (std::size_t a = 0; a < cx->arrows().size(); ++a) f.maps.emplace_back(0, 0);
  return f;
}

CellSheaf constant_sheaf(const ComplexPtr& cx, std::size_t rank) {
  CellSheaf f{cx, std::vector<std::size_t>(cx->size(), rank), {}};
  for (std::size_t a = 0; a < cx->arrows().size(); ++a) f.maps.push_back(RatMatrix::identity(rank));
  return f;
}

// ---------------------------------------------------------------------------
// RHom by the normalized bar complex
//   C^n = ⊕_{x0 -a1-> ... -an-> xn} Hom(F(x0), G(xn))  (non-identity arrows)

namespace {

struct Chain {
  std::size_t src, dst;
  std::vector<std::size_t> arrows;
};

std::vector<std::vector<Chain>> bar_chains(const CellComplex& cx) {
  std::vector<std::vector<Chain>> by_len(cx.dim() + 2);
  for (std::size_t x = 0; x < cx.size(); ++x) by_len[0].push_back({x, x, {}});
  for (std::size_t n = 1; n < by_len.size(); ++n)
    for (const auto& c : by_len[n - 1])
      for (std::size_t a : cx.out(c.dst)) {
        Chain next = c;
        next.arrows.push_back(a);
        next.dst = cx.arrow(a).to;
        by_len[n].push_back(std::move(next));
      }
  return by_len;
}

}  // namespace

std::vector<std::size_t> rhom(const CellSheaf& f, const CellSheaf& g) {
  if (f.complex != g.complex && !(f.complex && g.complex && f.complex.get() == g.complex.get()))
    throw MismatchedComplex("rhom needs both sheaves on the same complex");
  const auto& cx = *f.complex;
  const auto chains = bar_chains(cx);
  const std::size_t top = cx.dim();

  std::vector<std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t>> offset(chains.size());
  std::vector<std::size_t> size(chains.size(), 0);
  for (std::size_t n = 0; n < chains.size(); ++n)
    for (const auto& c : chains[n]) {
      offset[n][{c.src, c.arrows}] = size[n];
      size[n] += g.dims[c.dst] * f.dims[c.src];
    }

  std::vector<std::size_t> ranks(top + 1, 0);
  for (std::size_t n = 0; n + 1 < chains.size() && n <= top; ++n) {
    if (size[n] == 0 || size[n + 1] == 0) continue;
    SparseMatrix d(size[n + 1], size[n]);
    for (const auto& c : chains[n + 1]) {
      const std::size_t row0 = offset[n + 1].at({c.src, c.arrows});
      const std::size_t fx0 = f.dims[c.src];
      const std::size_t gxn = g.dims[c.dst];
      if (fx0 == 0 || gxn == 0) continue;
      const auto& a = c.arrows;
      // G(a_{n+1}) φ(a_1..a_n)
      {
        std::vector<std::size_t> face(a.begin(), a.end() - 1);
        const std::size_t mid = cx.arrow(a.back()).from;
        const std::size_t col0 = offset[n].at({c.src, face});
        const RatMatrix& gm = g.maps[a.back()];
        for (std::size_t r = 0; r < gxn; ++r)
          for (std::size_t p = 0; p < g.dims[mid]; ++p) {
            if (gm(r, p) == 0) continue;
            for (std::size_t s = 0; s < fx0; ++s) d.add(row0 + r * fx0 + s, col0 + p * fx0 + s, gm(r, p));
          }
      }
      // Σ (-1)^i φ(.., a_{i+1} a_i, ..)
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::size_t> face;
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (k == i - 1) {
            face.push_back(cx.compose(a[k], a[k + 1]));
            ++k;
          } else {
            face.push_back(a[k]);
          }
        }
        const std::size_t col0 = offset[n].at({c.src, face});
        const Rational sign = (i % 2 == 0) ? 1 : -1;
        for (std::size_t e = 0; e < gxn * fx0; ++e) d.add(row0 + e, col0 + e, sign);
      }
      // (-1)^{n+1} φ(a_2..a_{n+1}) F(a_1)
      {
        std::vector<std::size_t> face(a.begin() + 1, a.end());
        const std::size_t x1 = cx.arrow(a.front()).to;
        const std::size_t col0 = offset[n].at({x1, face});
        const RatMatrix& fm = f.maps[a.front()];
        const Rational sign = ((n + 1) % 2 == 0) ? 1 : -1;
        const std::size_t fx1 = f.dims[x1];
        for (std::size_t r = 0; r < gxn; ++r)
          for (std::size_t q = 0; q < fx1; ++q)
            for (std::size_t s = 0; s < fx0; ++s) {
              if (fm(q, s) == 0) continue;
              d.add(row0 + r * fx0 + s, col0 + r * fx1 + q, sign * fm(q, s));
            }
      }
    }
    ranks[n] = d.rank();
  }
  std::vector<std::size_t> ext(top + 1, 0);
  for (std::size_t n = 0; n <= top; ++n) ext[n] = size[n] - ranks[n] - (n == 0 ? 0 : ranks[n - 1]);
  return ext;
}

std::vector<std::vector<std::vector<std::size_t>>> rhom_matrix(const std::vector<CellSheaf>& objects) {
  std::vector<std::vector<std::vector<std::size_t>>> out(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) out[i].push_back(rhom(objects[i], objects[j]));
  return out;
}

// ---------------------------------------------------------------------------
// Microsupport

namespace {

Rational pairing(const RatVector& xi, const RatVector& w, const RatVector& x) {
  Rational s = 0;
  for (std::size_t k = 0; k < xi.size(); ++k) s += xi[k] * (w[k] - x[k]);
  return s;
}

IntVector diff(const IntVector& a, const IntVector& b) {
  IntVector c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] - b[k];
  return c;
}

/// Arrows τ -> (c, t) whose lifted closure reaches into {<ξ, · - x> < 0}.
std::vector<std::size_t> half_star(const CellComplex& cx, std::size_t tau, const RatVector& xi) {
  std::vector<std::size_t> q;
  const RatVector& x = cx.cell(tau).point;
  for (std::size_t a : cx.out(tau)) {
    const auto& ar = cx.arrow(a);
    for (const auto& w : cx.lifted_vertices(ar.to, ar.shift))
      if (pairing(xi, w, x) < 0) {
        q.push_back(a);
        break;
      }
  }
  return q;
}

/// Arrow from the coface of p to the coface of q inside the star, if p < q.
std::optional<std::size_t> star_relation(const CellComplex& cx, std::size_t p, std::size_t q) {
  const auto& ap = cx.arrow(p);
  const auto& aq = cx.arrow(q);
  if (ap.to == aq.to) return std::nullopt;
  return cx.find_arrow(ap.to, aq.to, diff(aq.shift, ap.shift));
}

std::size_t cohomology_from(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks, std::size_t k) {
  return dims[k] - ranks[k] - (k == 0 ? 0 : ranks[k - 1]);
}

/// Cohomology of F(τ) -> holim_{Q} F, i.e. of D^0 = F(τ), D^{n+1} = ⊕_{a0<..<an} F(a_n).
std::vector<std::size_t> ks_test(const CellSheaf& f, std::size_t tau, const std::vector<std::size_t>& q) {
  const auto& cx = *f.complex;
  std::vector<std::vector<std::vector<std::size_t>>> chains(1);
  for (std::size_t i = 0; i < q.size(); ++i) chains[0].push_back({i});
  while (true) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : chains.back())
      for (std::size_t j = 0; j < q.size(); ++j)
        if (star_relation(cx, q[c.back()], q[j])) {
          auto d = c;
          d.push_back(j);
          next.push_back(std::move(d));
        }
    if (next.empty()) break;
    chains.push_back(std::move(next));
  }
  auto value_dim = [&](const std::vector<std::size_t>& c) { return f.dims[cx.arrow(q[c.back()]).to]; };

  std::vector<std::size_t> dims{f.dims[tau]};
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> offset(chains.size());
  for (std::size_t n = 0; n < chains.size(); ++n) {
    std::size_t total = 0;
    for (const auto& c : chains[n]) {
      offset[n][c] = total;
      total += value_dim(c);
    }
    dims.push_back(total);
  }
  std::vector<std::size_t> ranks(dims.size(), 0);
  // augmentation
  if (dims[0] && dims[1]) {
    RatMatrix m(dims[1], dims[0]);
    for (const auto& c : chains[0]) {
      const RatMatrix& fa = f.maps[q[c[0]]];
      for (std::size_t r = 0; r < fa.rows(); ++r)
        for (std::size_t s = 0; s < fa.cols(); ++s) m(offset[0][c] + r, s) = fa(r, s);
    }
    ranks[0] = rank(m);
  }
  for (std::size_t n = 0; n + 1 < chains.size(); ++n) {
    if (!dims[n + 1] || !dims[n + 2]) continue;
    RatMatrix m(dims[n + 2], dims[n + 1]);
    for (const auto& c : chains[n + 1]) {
      const std::size_t row0 = offset[n + 1][c];
      const std::size_t vd = value_dim(c);
      for (std::size_t i = 0; i <= n; ++i) {
        auto face = c;
        face.erase(face.begin() + i);
        const std::size_t col0 = offset[n][face];
        const Rational sign = (i % 2 == 0) ? 1 : -1;
        for (std::size_t e = 0; e < vd; ++e) m(row0 + e, col0 + e) += sign;
      }
      auto face = c;
      face.pop_back();
      const std::size_t col0 = offset[n][face];
      const RatMatrix& push = f.maps[*star_relation(cx, q[c[n]], q[c[n + 1]])];
      const Rational sign = ((n + 1) % 2 == 0) ? 1 : -1;
      for (std::size_t r = 0; r < push.rows(); ++r)
        for (std::size_t s = 0; s < push.cols(); ++s) m(row0 + r, col0 + s) += sign * push(r, s);
    }
    ranks[n + 1] = rank(m);
  }
  std::vector<std::size_t> h;
  for (std::size_t k = 0; k < dims.size(); ++k) h.push_back(cohomology_from(dims, ranks, k));
  return h;
}

bool any_nonzero(const std::vector<std::size_t>& v) {
  return std::any_of(v.begin(), v.end(), [](std::size_t x) { return x != 0; });
}

RatVector primitive_normal(const RatVector& delta) {
  // (δ1, -δ0) scaled to a primitive integer vector
  Integer l = 1;
  for (const auto& x : delta) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector n{Integer(delta[1] * l), Integer(-delta[0] * l)};
  Integer g;
  mpz_gcd(g.get_mpz_t(), n[0].get_mpz_t(), n[1].get_mpz_t());
  return {Rational(n[0] / g), Rational(n[1] / g)};
}

RatVector negate(RatVector v) {
  for (auto& x : v) x = -x;
  return v;
}

Rational cross(const RatVector& a, const RatVector& b) { return a[0] * b[1] - a[1] * b[0]; }

bool same_ray(const RatVector& a, const RatVector& b) {
  Rational d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a[k] * b[k];
  return (a.size() == 1 || cross(a, b) == 0) && d > 0;
}

/// Counterclockwise angular order of nonzero plane vectors.
bool angle_less(const RatVector& a, const RatVector& b) {
  auto half = [](const RatVector& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return cross(a, b) > 0;
}

bool zero_present(const CellSheaf& f, std::size_t tau) {
  if (f.dims[tau]) return true;
  for (std::size_t a : f.complex->out(tau))
    if (f.dims[f.complex->arrow(a).to]) return true;
  return false;
}

Chamber zero_chamber(const CellSheaf& f, std::size_t tau) {
  Chamber c;
  c.kind = Chamber::Kind::Zero;
  c.covector = RatVector(f.complex->dim());
  c.present = zero_present(f, tau);
  c.test_dims = {f.dims[tau]};
  return c;
}

Chamber tested(const CellSheaf& f, std::size_t tau, Chamber::Kind kind, const RatVector& xi) {
  Chamber c;
  c.kind = kind;
  c.covector = xi;
  c.test_dims = ks_test(f, tau, half_star(*f.complex, tau, xi));
  c.present = any_nonzero(c.test_dims);
  return c;
}

/// Wall rays at a vertex of a 2-complex: perpendiculars of the incident edges, sorted by angle.
std::vector<RatVector> vertex_walls(const CellComplex& cx, std::size_t v) {
  std::vector<RatVector> walls;
  const RatVector& x = cx.cell(v).point;
  for (std::size_t a : cx.out(v)) {
    const auto& ar = cx.arrow(a);
    if (cx.cell(ar.to).dim != 1) continue;
    for (const auto& w : cx.lifted_vertices(ar.to, ar.shift)) {
      if (w == x) continue;
      RatVector delta{w[0] - x[0], w[1] - x[1]};
      RatVector n = primitive_normal(delta);
      for (const auto& r : {n, negate(n)})
        if (std::none_of(walls.begin(), walls.end(), [&](const RatVector& s) { return same_ray(r, s); }))
          walls.push_back(r);
    }
  }
  std::sort(walls.begin(), walls.end(), angle_less);
  return walls;
}

RatVector codim1_normal(const CellComplex& cx, std::size_t tau) {
  if (cx.dim() == 1) return {Rational(1)};
  const auto& vs = cx.cell(tau).vertices;
  return primitive_normal({vs[1][0] - vs[0][0], vs[1][1] - vs[0][1]});
}

}  // namespace

bool MicroSupportReport::empty() const {
  for (const auto& c : cells)
    for (const auto& ch : c.chambers)
      if (ch.present) return false;
  return true;
}

std::string MicroSupportReport::to_string(const CellComplex& cx) const {
  std::ostringstream os;
  for (const auto& c : cells) {
    os << cx.cell(c.cell).label << ':';
    for (const auto& ch : c.chambers) {
      if (!ch.present) continue;
      os << ' ';
      if (ch.kind == Chamber::Kind::Zero) {
        os << '0';
        continue;
      }
      os << (ch.kind == Chamber::Kind::Ray ? "ray(" : "sector(");
      for (std::size_t k = 0; k < ch.covector.size(); ++k) os << (k ? "," : "") << ch.covector[k];
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

MicroSupportReport microsupport(const CellSheaf& f) {
  const auto& cx = *f.complex;
  if (cx.dim() < 1 || cx.dim() > 2) throw UnsupportedDimension("microsupport needs a 1- or 2-torus");
  MicroSupportReport rep;
  rep.cells.resize(cx.size());
  // top cells and codimension-one cells first; vertex walls close up from them
  for (std::size_t tau = 0; tau < cx.size(); ++tau) {
    auto& out = rep.cells[tau];
    out.cell = tau;
    const std::size_t dim = cx.cell(tau).dim;
    out.chambers.push_back(zero_chamber(f, tau));
    if (dim == cx.dim()) continue;
    if (dim + 1 == cx.dim()) {
      RatVector n = codim1_normal(cx, tau);
      out.chambers.push_back(tested(f, tau, Chamber::Kind::Ray, n));
      out.chambers.push_back(tested(f, tau, Chamber::Kind::Ray, negate(n)));
    }
  }
  if (cx.dim() == 1) return rep;
  for (std::size_t v = 0; v < cx.size(); ++v) {
    if (cx.cell(v).dim != 0) continue;
    auto walls = vertex_walls(cx, v);
    std::vector<Chamber> sectors;
    for (std::size_t i = 0; i < walls.size(); ++i) {
      const auto& a = walls[i];
      const auto& b = walls[(i + 1) % walls.size()];
      RatVector rep_xi{a[0] + b[0], a[1] + b[1]};
      Chamber s = tested(f, v, Chamber::Kind::Sector, rep_xi);
      s.boundary = {a, b};
      sectors.push_back(std::move(s));
    }
    auto& out = rep.cells[v].chambers;
    for (std::size_t i = 0; i < walls.size(); ++i) {
      Chamber r;
      r.kind = Chamber::Kind::Ray;
      r.covector = walls[i];
      r.present = sectors[i].present || sectors[(i + walls.size() - 1) % walls.size()].present;
      // closure of the conormal of an incident edge
      for (std::size_t a : cx.out(v)) {
        const auto& ar = cx.arrow(a);
        if (cx.cell(ar.to).dim != 1) continue;
        for (const auto& ch : rep.cells[ar.to].chambers)
          if (ch.kind == Chamber::Kind::Ray && ch.present && same_ray(ch.covector, walls[i])) r.present = true;
      }
      out.push_back(std::move(r));
    }
    for (auto& s : sectors) out.push_back(std::move(s));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Membership in Sh_Λ

namespace {

bool cone_contains(const std::vector<IntVector>& gens, const RatVector& v) {
  if (gens.empty()) return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
  std::vector<RatVector> rg;
  for (const auto& g : gens) rg.push_back(to_rational(g));
  return in_cone(rg, v);
}

bool covered(const std::vector<SkeletonComponent>& comps, const RatVector& point,
             const std::vector<RatVector>& covectors) {
  for (const auto& c : comps) {
    if (!c.base.contains(point)) continue;
    if (std::all_of(covectors.begin(), covectors.end(),
                    [&](const RatVector& xi) { return cone_contains(c.cone, xi); }))
      return true;
  }
  return false;
}

std::vector<RatVector> chamber_covectors(const Chamber& ch) {
  std::vector<RatVector> out{ch.covector};
  for (const auto& b : ch.boundary) out.push_back(b);
  return out;
}

void require_adapted(const CellComplex& cx, const std::vector<SkeletonComponent>& comps) {
  for (const auto& c : comps) {
    if (c.base.ambient_dim() != cx.dim()) throw NonAdaptedComplex("component lives on a different torus");
    if (c.base_dim() == 0)
      for (const auto& p : c.base.points())
        if (!cx.locate(p, 0)) throw NonAdaptedComplex("base point is not a vertex of the complex");
    if (c.base_dim() == 1 && cx.dim() == 2)
      for (const auto& cell : cx.cells())
        if (cell.dim == 2 && c.base.contains(cell.point))
          throw NonAdaptedComplex("skeleton circle crosses the 2-cell " + cell.label);
  }
}

}  // namespace

bool in_subcategory(const MicroSupportReport& ms, const CellComplex& cx,
                    const std::vector<SkeletonComponent>& components, std::string* witness) {
  require_adapted(cx, components);
  for (const auto& c : ms.cells)
    for (const auto& ch : c.chambers) {
      if (!ch.present) continue;
      if (covered(components, cx.cell(c.cell).point, chamber_covectors(ch))) continue;
      if (witness) {
        std::ostringstream os;
        os << cx.cell(c.cell).label << " covector (";
        for (std::size_t k = 0; k < ch.covector.size(); ++k) os << (k ? "," : "") << ch.covector[k];
        os << ")";
        *witness = os.str();
      }
      return false;
    }
  return true;
}

bool in_subcategory(const CellSheaf& f, const std::vector<SkeletonComponent>& components) {
  return in_subcategory(microsupport(f), *f.complex, components);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

/// Union-find on cells where merging records the translation between lifts:
/// lift (c, 0) is identified with (find(c), offset(c)).
class OffsetUnionFind {
 public:
  OffsetUnionFind(std::size_t n, std::size_t dim) : parent_(n), offset_(n, IntVector(dim)), dim_(dim) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<std::size_t, IntVector> find(std::size_t c) const {
    IntVector off(dim_);
    while (parent_[c] != c) {
      for (std::size_t k = 0; k < dim_; ++k) off[k] += offset_[c][k];
      c = parent_[c];
    }
    return {c, off};
  }

  /// Identify (a, 0) with (b, t).
  void unite(std::size_t a, std::size_t b, const IntVector& t) {
    auto [ra, oa] = find(a);
    auto [rb, ob] = find(b);
    IntVector lhs = oa, rhs = ob;
    for (std::size_t k = 0; k < dim_; ++k) rhs[k] += t[k];
    if (ra == rb) {
      IntVector loop = diff(rhs, lhs);
      if (std::any_of(loop.begin(), loop.end(), [](const Integer& x) { return x != 0; }))
        stabilizers_.push_back(loop);
      return;
    }
    // (rb, 0) ~ (ra, oa - ob - t)
    parent_[rb] = ra;
    offset_[rb] = diff(lhs, rhs);
  }

  const std::vector<IntVector>& stabilizers() const { return stabilizers_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<IntVector> offset_;
  std::size_t dim_;
  std::vector<IntVector> stabilizers_;
};

/// Arrows whose invertibility is forced by the covectors Λ excludes.
std::set<std::size_t> forced_invertible(const CellComplex& cx, const std::vector<SkeletonComponent>& comps) {
  std::set<std::size_t> w;
  for (std::size_t tau = 0; tau < cx.size(); ++tau) {
    if (cx.cell(tau).dim + 1 != cx.dim()) continue;
    RatVector n = codim1_normal(cx, tau);
    for (const auto& xi : {n, negate(n)}) {
      if (covered(comps, cx.cell(tau).point, {xi})) continue;
      for (std::size_t a : half_star(cx, tau, xi)) w.insert(a);
    }
  }
  if (cx.dim() != 2) return w;

  // vertex rule, iterated: an excluded sector whose half-star contracts to a unique source
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < cx.size(); ++v) {
      if (cx.cell(v).dim != 0) continue;
      auto walls = vertex_walls(cx, v);
      for (std::size_t i = 0; i < walls.size(); ++i) {
        const auto& a = walls[i];
        const auto& b = walls[(i + 1) % walls.size()];
        RatVector xi{a[0] + b[0], a[1] + b[1]};
        if (covered(comps, cx.cell(v).point, {xi, a, b})) continue;
        auto q = half_star(cx, v, xi);
        if (q.empty()) continue;
        std::vector<std::size_t> cls(q.size());
        std::iota(cls.begin(), cls.end(), 0);
        std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
          return cls[x] == x ? x : cls[x] = root(cls[x]);
        };
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t p = 0; p < q.size(); ++p)
          for (std::size_t r = 0; r < q.size(); ++r) {
            auto rel = star_relation(cx, q[p], q[r]);
            if (!rel) continue;
            if (w.count(*rel))
              cls[root(p)] = root(r);
            else
              edges.push_back({p, r});
          }
        std::set<std::size_t> classes;
        for (std::size_t p = 0; p < q.size(); ++p) classes.insert(root(p));
        std::map<std::size_t, std::set<std::size_t>> succ;
        std::map<std::size_t, std::size_t> indeg;
        for (auto c : classes) indeg[c] = 0;
        for (auto [p, r] : edges) {
          std::size_t cp = root(p), cr = root(r);
          if (cp == cr) continue;
          if (succ[cp].insert(cr).second) ++indeg[cr];
        }
        // Kahn's algorithm: acyclic with exactly one source
        std::vector<std::size_t> sources;
        for (auto [c, d] : indeg)
          if (d == 0) sources.push_back(c);
        if (sources.size() != 1) continue;
        auto deg = indeg;
        std::deque<std::size_t> ready(sources.begin(), sources.end());
        std::size_t seen = 0;
        while (!ready.empty()) {
          std::size_t c = ready.front();
          ready.pop_front();
          ++seen;
          for (auto s : succ[c])
            if (--deg[s] == 0) ready.push_back(s);
        }
        if (seen != classes.size()) continue;
        for (std::size_t p = 0; p < q.size(); ++p)
          if (root(p) == sources[0] && w.insert(q[p]).second) changed = true;
      }
    }
  }
  return w;
}

}  // namespace

GeneratorSet generators(const ComplexPtr& cxp, const std::vector<SkeletonComponent>& components) {
  const auto& cx = *cxp;
  if (cx.dim() < 1 || cx.dim() > 2) throw UnsupportedDimension("generators need a 1- or 2-torus");
  require_adapted(cx, components);
  GeneratorSet gs;
  gs.complex = cxp;
  auto w = forced_invertible(cx, components);
  gs.inverted.assign(w.begin(), w.end());

  const std::size_t d = cx.dim();
  OffsetUnionFind uf(cx.size(), d);
  for (std::size_t a : w) uf.unite(cx.arrow(a).from, cx.arrow(a).to, cx.arrow(a).shift);
  IntMatrix stab = IntMatrix::from_columns(d, uf.stabilizers());
  LatticeReducer reduce(d, stab);

  std::map<std::size_t, std::vector<std::size_t>> members;
  std::vector<std::pair<std::size_t, IntVector>> where(cx.size());
  for (std::size_t c = 0; c < cx.size(); ++c) {
    where[c] = uf.find(c);
    members[where[c].first].push_back(c);
  }

  using Region = std::pair<std::size_t, IntVector>;  // (class root, reduced translation)
  auto region_of = [&](std::size_t c, const IntVector& s) {
    IntVector u = s;
    for (std::size_t k = 0; k < d; ++k) u[k] += where[c].second[k];
    return Region{where[c].first, reduce.reduce(u)};
  };
  const std::size_t limit = 20000;

  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> ordered(members.begin(), members.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& [root, cells] : ordered) {
    gs.classes.push_back(cells);
    // breadth-first search over regions of the cover, along non-inverted arrows
    std::map<Region, std::vector<Region>> succ;
    std::set<Region> seen{Region{root, reduce.reduce(IntVector(d))}};
    std::deque<Region> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
      Region r = todo.front();
      todo.pop_front();
      for (std::size_t c : members[r.first]) {
        IntVector s = diff(r.second, where[c].second);
        for (std::size_t a : cx.out(c)) {
          if (w.count(a)) continue;
          IntVector t = s;
          for (std::size_t k = 0; k < d; ++k) t[k] += cx.arrow(a).shift[k];
          Region next = region_of(cx.arrow(a).to, t);
          if (next == r) continue;
          succ[r].push_back(next);
          if (seen.insert(next).second) {
            if (seen.size() > limit) throw CodimTwoObstruction("localized representable is not finite");
            todo.push_back(next);
          }
        }
      }
    }
    // acyclicity of the reachable region graph
    std::map<Region, std::size_t> indeg;
    for (const auto& r : seen) indeg[r] = 0;
    for (auto& [r, ss] : succ) {
      std::sort(ss.begin(), ss.end());
      ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
      for (const auto& s : ss) ++indeg[s];
    }
    std::deque<Region> ready;
    for (const auto& [r, k] : indeg)
      if (k == 0) ready.push_back(r);
    std::size_t count = 0;
    while (!ready.empty()) {
      Region r = ready.front();
      ready.pop_front();
      ++count;
      for (const auto& s : succ[r])
        if (--indeg[s] == 0) ready.push_back(s);
    }
    if (count != seen.size()) throw CodimTwoObstruction("localized entrance-path category has a cycle");

    // P(y) has one basis vector per reachable region containing a lift of y
    CellSheaf p;
    p.complex = cxp;
    std::vector<std::map<IntVector, std::size_t>> basis(cx.size());
    for (const auto& r : seen)
      for (std::size_t c : members[r.first]) {
        IntVector s = reduce.reduce(diff(r.second, where[c].second));
        basis[c].emplace(s, 0);
      }
    for (auto& b : basis) {
      std::size_t k = 0;
      for (auto& [s, idx] : b) idx = k++;
      p.dims.push_back(b.size());
    }
    for (const auto& ar : cx.arrows()) {
      RatMatrix m(p.dims[ar.to], p.dims[ar.from]);
      for (const auto& [s, idx] : basis[ar.from]) {
        IntVector t = s;
        for (std::size_t k = 0; k < d; ++k) t[k] += ar.shift[k];
        auto it = basis[ar.to].find(reduce.reduce(t));
        if (it == basis[ar.to].end()) throw Error("localized representable is not closed under arrows");
        m(it->second, idx) = 1;
      }
      p.maps.push_back(std::move(m));
    }
    p.check_functorial();
    std::string witness;
    if (!in_subcategory(microsupport(p), cx, components, &witness))
      throw CodimTwoObstruction("generator at " + cx.cell(root).label + " has microsupport outside the skeleton at " +
                                witness);
    gs.objects.push_back(std::move(p));
  }
  return gs;
}

// ---------------------------------------------------------------------------
// Symmetries

CellSheaf translate(const CellSheaf& f, const RatVector& c) {
  const auto& cx = *f.complex;
  auto tr = translation_map(cx, c);
  CellSheaf g{f.complex, std::vector<std::size_t>(cx.size()), std::vector<RatMatrix>(cx.arrows().size())};
  for (std::size_t k = 0; k < cx.size(); ++k) g.dims[tr.cell[k]] = f.dims[k];
  for (std::size_t a = 0; a < cx.arrows().size(); ++a) {
    const auto& ar = cx.arrow(a);
    IntVector t = diff(ar.shift, tr.shift[ar.from]);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] += tr.shift[ar.to][k];
    auto img = cx.find_arrow(tr.cell[ar.from], tr.cell[ar.to], t);
    if (!img) throw NonSymmetricComplex("translated arrow missing");
    g.maps[*img] = f.maps[a];
  }
  return g;
}

CellSheaf twist(const CellSheaf& f, const std::vector<Rational>& chi) {
  const auto& cx = *f.complex;
  if (chi.size() != cx.dim()) throw DimensionMismatch("one character value per loop");
  for (const auto& x : chi)
    if (x == 0) throw Error("character values must be nonzero");
  CellSheaf g = f;
  for (std::size_t a = 0; a < cx.arrows().size(); ++a) {
    Rational scale = 1;
    for (std::size_t k = 0; k < chi.size(); ++k) {
      const Integer& t = cx.arrow(a).shift[k];
      Rational base = t >= 0 ? chi[k] : Rational(1) / chi[k];
      for (Integer e = 0; e < abs(t); ++e) scale *= base;
    }
    if (scale == 1) continue;
    auto& m = g.maps[a];
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t s = 0; s < m.cols(); ++s) m(r, s) *= scale;
  }
  return g;
}

}  // namespace toricmirror
