#include "toricmirror/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace toricmirror {

namespace {

RatVector centroid(const std::vector<RatVector>& pts) {
  RatVector c(pts.front().size());
  for (const auto& p : pts)
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += p[k];
  for (auto& x : c) x /= Rational(static_cast<long>(pts.size()));
  return c;
}

IntVector floor_vec(const RatVector& p) {
  IntVector s(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) s[k] = floor_of(p[k]);
  return s;
}

RatVector shifted(RatVector p, const IntVector& s, int sign) {
  for (std::size_t k = 0; k < p.size(); ++k) p[k] += sign * Rational(s[k]);
  return p;
}

IntVector diff(const IntVector& a, const IntVector& b) {
  IntVector c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] - b[k];
  return c;
}

}  // namespace

std::size_t CellComplex::intern(std::size_t dim, std::vector<RatVector> lifted, IntVector& shift) {
  RatVector mid = centroid(lifted);
  shift = floor_vec(mid);
  RatVector key = shifted(mid, shift, -1);
  auto it = by_point_.find({dim, key});
  if (it != by_point_.end()) return it->second;
  Cell c;
  c.dim = dim;
  c.point = key;
  for (auto& v : lifted) c.vertices.push_back(shifted(v, shift, -1));
  if (dim == 1) std::sort(c.vertices.begin(), c.vertices.end());
  cells_.push_back(std::move(c));
  by_point_[{dim, key}] = cells_.size() - 1;
  return cells_.size() - 1;
}

void CellComplex::add_arrow(std::size_t from, std::size_t to, IntVector shift) {
  auto key = std::make_tuple(from, to, shift);
  if (index_.count(key)) return;
  index_[key] = arrows_.size();
  arrows_.push_back({from, to, std::move(shift)});
}

void CellComplex::finish() {
  // relabel cells by (dimension, interior point) so numbering is canonical
  std::vector<std::size_t> order(cells_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(cells_[a].dim, cells_[a].point) < std::tie(cells_[b].dim, cells_[b].point);
  });
  std::vector<std::size_t> rename(cells_.size());
  std::vector<Cell> cells;
  for (std::size_t k = 0; k < order.size(); ++k) {
    rename[order[k]] = k;
    cells.push_back(std::move(cells_[order[k]]));
  }
  cells_ = std::move(cells);
  std::size_t counts[3] = {0, 0, 0};
  const char* prefix = "vef";
  for (auto& c : cells_) c.label = std::string(1, prefix[c.dim]) + std::to_string(++counts[c.dim]);

  std::vector<Arrow> old = std::move(arrows_);
  arrows_.clear();
  index_.clear();
  by_point_.clear();
  for (std::size_t k = 0; k < cells_.size(); ++k) by_point_[{cells_[k].dim, cells_[k].point}] = k;
  for (std::size_t k = 0; k < cells_.size(); ++k) add_arrow(k, k, IntVector(dim_));
  std::sort(old.begin(), old.end(), [&](const Arrow& a, const Arrow& b) {
    return std::make_tuple(rename[a.from], rename[a.to], a.shift) <
           std::make_tuple(rename[b.from], rename[b.to], b.shift);
  });
  for (auto& a : old) add_arrow(rename[a.from], rename[a.to], a.shift);

  identity_.resize(cells_.size());
  out_.assign(cells_.size(), {});
  in_.assign(cells_.size(), {});
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    const auto& ar = arrows_[a];
    if (ar.identity()) {
      identity_[ar.from] = a;
      continue;
    }
    out_[ar.from].push_back(a);
    in_[ar.to].push_back(a);
  }
}

CellComplex CellComplex::circle(const std::vector<Rational>& vertices) {
  CellComplex cx;
  cx.dim_ = 1;
  std::vector<Rational> xs = vertices;
  for (auto& x : xs) x = frac_of(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.empty()) xs.push_back(0);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    Rational lo = xs[k];
    Rational hi = k + 1 < xs.size() ? xs[k + 1] : xs[0] + 1;
    IntVector s_arc, s_lo, s_hi;
    std::size_t arc = cx.intern(1, {{lo}, {hi}}, s_arc);
    std::size_t vlo = cx.intern(0, {{lo}}, s_lo);
    std::size_t vhi = cx.intern(0, {{hi}}, s_hi);
    cx.add_arrow(vlo, arc, diff(s_arc, s_lo));
    cx.add_arrow(vhi, arc, diff(s_arc, s_hi));
  }
  cx.finish();
  return cx;
}

CellComplex CellComplex::torus(const std::vector<std::vector<RatVector>>& polygons) {
  CellComplex cx;
  cx.dim_ = 2;
  for (const auto& poly : polygons) {
    IntVector fs;
    std::size_t face = cx.intern(2, poly, fs);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const RatVector& p = poly[i];
      const RatVector& q = poly[(i + 1) % poly.size()];
      IntVector es, ps, qs;
      std::size_t edge = cx.intern(1, {p, q}, es);
      std::size_t vp = cx.intern(0, {p}, ps);
      std::size_t vq = cx.intern(0, {q}, qs);
      cx.add_arrow(vp, face, diff(fs, ps));
      cx.add_arrow(edge, face, diff(fs, es));
      cx.add_arrow(vp, edge, diff(es, ps));
      cx.add_arrow(vq, edge, diff(es, qs));
    }
  }
  cx.finish();
  return cx;
}

std::optional<std::size_t> CellComplex::find_arrow(std::size_t from, std::size_t to, const IntVector& shift) const {
  auto it = index_.find(std::make_tuple(from, to, shift));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CellComplex::compose(std::size_t a, std::size_t b) const {
  const auto& x = arrows_[a];
  const auto& y = arrows_[b];
  if (x.to != y.from) throw DimensionMismatch("arrows are not composable");
  IntVector t(dim_);
  for (std::size_t k = 0; k < dim_; ++k) t[k] = x.shift[k] + y.shift[k];
  auto c = find_arrow(x.from, y.to, t);
  if (!c) throw Error("entrance-path composite missing from the complex");
  return *c;
}

std::optional<std::pair<std::size_t, IntVector>> CellComplex::locate(const RatVector& p, std::size_t dim) const {
  IntVector s = floor_vec(p);
  auto it = by_point_.find({dim, shifted(p, s, -1)});
  if (it == by_point_.end()) return std::nullopt;
  return std::make_pair(it->second, s);
}

long CellComplex::euler_characteristic() const {
  long chi = 0;
  for (const auto& c : cells_) chi += (c.dim % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<RatVector> CellComplex::lifted_vertices(std::size_t c, const IntVector& t) const {
  std::vector<RatVector> out;
  for (const auto& v : cells_[c].vertices) out.push_back(shifted(v, t, +1));
  return out;
}

namespace {

struct Circle {
  IntVector normal;  // primitive, first nonzero entry positive
  Rational level;    // <normal, u> ≡ level (mod 1), level in [0,1)
  friend bool operator==(const Circle& a, const Circle& b) { return a.normal == b.normal && a.level == b.level; }
  friend bool operator<(const Circle& a, const Circle& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.level < b.level;
  }
};

Circle make_circle(IntVector n, Rational c) {
  if (n[0] < 0 || (n[0] == 0 && n[1] < 0)) {
    for (auto& x : n) x = -x;
    c = -c;
  }
  return {n, frac_of(c)};
}

Rational dot(const IntVector& n, const RatVector& p) {
  Rational s = 0;
  for (std::size_t k = 0; k < n.size(); ++k) s += Rational(n[k]) * p[k];
  return s;
}

/// Position along the boundary of [x0,x1] x [y0,y1], counterclockwise from (x0,y0).
Rational perimeter_position(const RatVector& p, const Rational& x0, const Rational& x1, const Rational& y0,
                            const Rational& y1) {
  const Rational w = x1 - x0, h = y1 - y0;
  if (p[1] == y0) return p[0] - x0;
  if (p[0] == x1) return w + (p[1] - y0);
  if (p[1] == y1) return w + h + (x1 - p[0]);
  return 2 * w + h + (y1 - p[1]);
}

std::vector<std::vector<RatVector>> cut_rectangle(const Rational& x0, const Rational& x1, const Rational& y0,
                                                  const Rational& y1, const std::vector<Circle>& slanted) {
  std::vector<RatVector> boundary{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  std::vector<std::pair<RatVector, RatVector>> chords;
  for (const auto& c : slanted) {
    Rational lo = dot(c.normal, boundary[0]), hi = lo;
    for (const auto& b : boundary) {
      Rational v = dot(c.normal, b);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    for (Integer k = ceil_of(lo - c.level); Rational(k) + c.level <= hi; ++k) {
      Rational level = Rational(k) + c.level;
      if (level <= lo || level >= hi) continue;
      std::set<RatVector> hits;
      const Rational& a = c.normal[0];
      const Rational& b = c.normal[1];
      for (const Rational& x : {x0, x1}) {
        Rational y = (level - Rational(a) * x) / Rational(b);
        if (y >= y0 && y <= y1) hits.insert({x, y});
      }
      for (const Rational& y : {y0, y1}) {
        Rational x = (level - Rational(b) * y) / Rational(a);
        if (x >= x0 && x <= x1) hits.insert({x, y});
      }
      if (hits.size() != 2) throw Error("slanted circle does not cut the rectangle in a chord");
      chords.push_back({*hits.begin(), *hits.rbegin()});
      boundary.push_back(*hits.begin());
      boundary.push_back(*hits.rbegin());
    }
  }
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  std::sort(boundary.begin(), boundary.end(), [&](const RatVector& p, const RatVector& q) {
    return perimeter_position(p, x0, x1, y0, y1) < perimeter_position(q, x0, x1, y0, y1);
  });
  std::vector<std::vector<RatVector>> polys{boundary};
  for (const auto& [p, q] : chords) {
    bool split = false;
    for (std::size_t k = 0; k < polys.size() && !split; ++k) {
      auto& poly = polys[k];
      auto ip = std::find(poly.begin(), poly.end(), p);
      auto iq = std::find(poly.begin(), poly.end(), q);
      if (ip == poly.end() || iq == poly.end()) continue;
      std::size_t a = ip - poly.begin(), b = iq - poly.begin();
      if (a > b) std::swap(a, b);
      std::vector<RatVector> one(poly.begin() + a, poly.begin() + b + 1);
      std::vector<RatVector> two(poly.begin() + b, poly.end());
      two.insert(two.end(), poly.begin(), poly.begin() + a + 1);
      poly = std::move(one);
      polys.push_back(std::move(two));
      split = true;
    }
    if (!split) throw Error("chord endpoints not on a common polygon");
  }
  return polys;
}

}  // namespace

CellComplex build_adapted_complex(std::size_t d, const std::vector<SkeletonComponent>& components) {
  if (d == 1) {
    std::vector<Rational> xs{0};
    for (const auto& c : components) {
      if (c.base.ambient_dim() != 1) throw DimensionMismatch("component not on the 1-torus");
      if (c.base_dim() == 0)
        for (const auto& p : c.base.points()) xs.push_back(p[0]);
    }
    return CellComplex::circle(xs);
  }
  if (d != 2) throw UnsupportedDimension("cell complexes are built on tori of dimension 1 or 2");

  std::set<RatVector> points;
  std::set<Circle> circles;
  for (const auto& c : components) {
    if (c.base.ambient_dim() != 2) throw DimensionMismatch("component not on the 2-torus");
    if (c.base_dim() == 0)
      for (const auto& p : c.base.points()) points.insert({frac_of(p[0]), frac_of(p[1])});
    if (c.base_dim() == 1) {
      IntVector w = c.base.direction().column(0);
      IntVector n{w[1], -w[0]};
      for (const auto& p : c.base.points()) circles.insert(make_circle(n, dot(n, p)));
    }
  }
  std::vector<Circle> cs(circles.begin(), circles.end());
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      IntMatrix g{{cs[i].normal[0], cs[i].normal[1]}, {cs[j].normal[0], cs[j].normal[1]}};
      if (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) == 0) continue;
      CosetFamily meet = solve_congruences(g, {cs[i].level, cs[j].level});
      for (const auto& p : meet.points()) points.insert(p);
    }

  std::set<Rational> xs{0}, ys{0};
  std::vector<Circle> slanted;
  for (const auto& p : points) {
    xs.insert(p[0]);
    ys.insert(p[1]);
  }
  for (const auto& c : cs) {
    if (c.normal[1] == 0)
      xs.insert(c.level);
    else if (c.normal[0] == 0)
      ys.insert(c.level);
    else
      slanted.push_back(c);
  }
  std::vector<Rational> gx(xs.begin(), xs.end()), gy(ys.begin(), ys.end());
  gx.push_back(1);
  gy.push_back(1);
  std::vector<std::vector<RatVector>> polygons;
  for (std::size_t i = 0; i + 1 < gx.size(); ++i)
    for (std::size_t j = 0; j + 1 < gy.size(); ++j)
      for (auto& poly : cut_rectangle(gx[i], gx[i + 1], gy[j], gy[j + 1], slanted))
        polygons.push_back(std::move(poly));
  return CellComplex::torus(polygons);
}

CellTranslation translation_map(const CellComplex& cx, const RatVector& c) {
  if (c.size() != cx.dim()) throw DimensionMismatch("translation vector length");
  CellTranslation tr;
  for (std::size_t k = 0; k < cx.size(); ++k) {
    const Cell& cell = cx.cell(k);
    RatVector p = cell.point;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += c[i];
    auto hit = cx.locate(p, cell.dim);
    if (!hit) throw NonSymmetricComplex("no cell at the translate of " + cell.label);
    auto moved = cx.lifted_vertices(k, IntVector(cx.dim()));
    for (auto& v : moved)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[i];
    auto target = cx.lifted_vertices(hit->first, hit->second);
    std::sort(moved.begin(), moved.end());
    std::sort(target.begin(), target.end());
    if (moved != target) throw NonSymmetricComplex("translate of " + cell.label + " is not a cell");
    tr.cell.push_back(hit->first);
    tr.shift.push_back(hit->second);
  }
  return tr;
}

}  // namespace toricmirror
