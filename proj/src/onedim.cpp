#include "toricmirror/onedim.hpp"

#include "toricmirror/fan.hpp"
#include "toricmirror/linalg.hpp"

namespace toricmirror {

TorsionModule TorsionModule::jordan(const Rational& lambda, std::size_t n) {
  RatMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = lambda;
    if (i + 1 < n) t(i, i + 1) = 1;
  }
  return {t};
}

TorsionModule TorsionModule::operator+(const TorsionModule& other) const {
  const std::size_t a = dim(), b = other.dim();
  RatMatrix s(a + b, a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) s(i, j) = t(i, j);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) s(a + i, a + j) = other.t(i, j);
  return {s};
}

TorsionModule TorsionModule::scaled(const Rational& chi) const {
  TorsionModule m = *this;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m.t(i, j) *= chi;
  return m;
}

TorsionModule random_torsion_module(std::mt19937_64& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> total(0, max_dim);
  std::uniform_int_distribution<int> eigen(-1, 2), entry(-2, 2);
  std::size_t n = total(rng);
  TorsionModule m = TorsionModule::zero();
  while (m.dim() < n) {
    std::uniform_int_distribution<std::size_t> size(1, n - m.dim());
    m = m + TorsionModule::jordan(eigen(rng), size(rng));
  }
  // conjugate by elementary row operations and their inverses
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::size_t i = idx(rng), j = idx(rng);
    int c = entry(rng);
    if (i == j || c == 0) continue;
    // t -> E t E⁻¹ with E = 1 + c e_ij
    for (std::size_t k = 0; k < n; ++k) m.t(i, k) += c * m.t(j, k);
    for (std::size_t k = 0; k < n; ++k) m.t(k, j) -= c * m.t(k, i);
  }
  return m;
}

namespace {

void require_square(const RatMatrix& t) {
  if (t.rows() != t.cols()) throw DimensionMismatch("module action must be square");
}

bool invertible(const RatMatrix& t) { return rank(t) == t.rows(); }

/// φ -> φ s - t φ on Hom(V, W), φ stored row-major (dim W x dim V).
RatMatrix commutator_operator(const RatMatrix& s, const RatMatrix& t) {
  const std::size_t v = s.rows(), w = t.rows();
  RatMatrix op(v * w, v * w);
  for (std::size_t r = 0; r < w; ++r)
    for (std::size_t c = 0; c < v; ++c) {
      const std::size_t row = r * v + c;
      for (std::size_t k = 0; k < v; ++k)
        if (s(k, c) != 0) op(row, r * v + k) += s(k, c);
      for (std::size_t k = 0; k < w; ++k)
        if (t(r, k) != 0) op(row, k * v + c) -= t(r, k);
    }
  return op;
}

RatMatrix stack(const std::vector<RatMatrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  RatMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

std::size_t arrow_between(std::size_t from_dim, long shift) {
  const auto& cx = *marked_circle();
  for (std::size_t a = 0; a < cx.arrows().size(); ++a) {
    const auto& ar = cx.arrow(a);
    if (!ar.identity() && cx.cell(ar.from).dim == from_dim && ar.shift[0] == shift) return a;
  }
  throw Error("marked circle is missing an arrow");
}

void require_marked_circle(const CellSheaf& f) {
  if (f.complex.get() != marked_circle().get()) throw MismatchedComplex("sheaf is not on the marked circle");
}

}  // namespace

std::vector<std::size_t> ext_dims_kt(const TorsionModule& m, const TorsionModule& n) {
  return ext_dims_poly({m.t}, {n.t});
}

std::vector<std::size_t> ext_dims_laurent(const TorsionModule& m, const TorsionModule& n) {
  require_square(m.t);
  require_square(n.t);
  if (!invertible(m.t) || !invertible(n.t)) throw NotInvertible("Laurent modules need invertible t");
  return ext_dims_kt(m, n);
}

std::vector<std::size_t> ext_dims_poly(const std::vector<RatMatrix>& m, const std::vector<RatMatrix>& n) {
  if (m.size() != n.size() || m.empty() || m.size() > 2)
    throw UnsupportedDimension("Koszul Ext needs one or two variables on both sides");
  for (const auto& t : m) require_square(t);
  for (const auto& t : n) require_square(t);
  const std::size_t v = m[0].rows(), w = n[0].rows(), h = v * w;
  if (h == 0) return std::vector<std::size_t>(m.size() + 1, 0);

  std::vector<RatMatrix> ops;
  for (std::size_t i = 0; i < m.size(); ++i) ops.push_back(commutator_operator(m[i], n[i]));
  RatMatrix d0 = stack(ops, h);
  std::vector<std::size_t> dims{h, h * m.size()};
  std::vector<std::size_t> ranks{rank(d0)};
  if (m.size() == 2) {
    // (ψ₁, ψ₂) -> A₁ψ₂ - A₂ψ₁
    RatMatrix d1(h, 2 * h);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        d1(i, j) = -ops[1](i, j);
        d1(i, h + j) = ops[0](i, j);
      }
    dims.push_back(h);
    ranks.push_back(rank(d1));
  }
  ranks.push_back(0);
  std::vector<std::size_t> ext;
  for (std::size_t k = 0; k < dims.size(); ++k) ext.push_back(dims[k] - ranks[k] - (k ? ranks[k - 1] : 0));
  return ext;
}

const ComplexPtr& marked_circle() {
  static const ComplexPtr cx = std::make_shared<CellComplex>(CellComplex::circle({0}));
  return cx;
}

const ComplexPtr& marked_torus() {
  static const ComplexPtr cx = std::make_shared<CellComplex>(CellComplex::torus({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}));
  return cx;
}

std::vector<SkeletonComponent> theta_skeleton() { return reduce(standard_fan("affine:1"), {0}).components; }

std::size_t rho_plus() {
  static const std::size_t a = arrow_between(0, 0);
  return a;
}

std::size_t rho_minus() {
  static const std::size_t a = arrow_between(0, -1);
  return a;
}

CellSheaf mirror_1d(const TorsionModule& m) { return product_mirror({m.t}); }

CellSheaf mirror_1d_gm(const TorsionModule& m) {
  require_square(m.t);
  if (!invertible(m.t)) throw NotInvertible("monodromy must be invertible");
  return mirror_1d(m);
}

CellSheaf normalize_1d(const CellSheaf& f) {
  require_marked_circle(f);
  const RatMatrix& minus = f.maps[rho_minus()];
  if (minus.rows() != minus.cols() || !invertible(minus)) throw NotInvertible("ρ₋ is not invertible");
  const std::size_t n = minus.rows();
  // inverse of ρ₋ column by column
  RatMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n);
    e[j] = 1;
    RatVector x = *solve(minus, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  CellSheaf g = f;
  g.maps[rho_minus()] = RatMatrix::identity(n);
  g.maps[rho_plus()] = inv * f.maps[rho_plus()];
  return g;
}

TorsionModule inverse_mirror_1d(const CellSheaf& f) { return {normalize_1d(f).maps[rho_plus()]}; }

std::vector<std::size_t> pullback_at_zero(const TorsionModule& m) {
  require_square(m.t);
  const std::size_t r = m.dim() ? rank(m.t) : 0;
  return {m.dim() - r, m.dim() - r};
}

std::vector<std::size_t> microstalk_1d(const CellSheaf& f) {
  require_marked_circle(f);
  const RatMatrix& a = f.maps[rho_plus()];
  const std::size_t r = (a.rows() && a.cols()) ? rank(a) : 0;
  return {a.cols() - r, a.rows() - r};
}

CellSheaf product_mirror(const std::vector<RatMatrix>& actions) {
  if (actions.empty() || actions.size() > 2) throw UnsupportedDimension("product mirror needs one or two variables");
  for (const auto& t : actions) require_square(t);
  const std::size_t v = actions[0].rows();
  for (const auto& t : actions)
    if (t.rows() != v) throw DimensionMismatch("actions on different spaces");
  if (actions.size() == 2 && !(actions[0] * actions[1] == actions[1] * actions[0]))
    throw NonCommuting("t₁ and t₂ do not commute");

  const ComplexPtr& cxp = actions.size() == 1 ? marked_circle() : marked_torus();
  const auto& cx = *cxp;
  CellSheaf f = constant_sheaf(cxp, v);
  for (std::size_t a = 0; a < cx.arrows().size(); ++a) {
    const auto& ar = cx.arrow(a);
    if (ar.identity()) continue;
    RatMatrix m = RatMatrix::identity(v);
    for (std::size_t i = 0; i < actions.size(); ++i)
      if (cx.cell(ar.to).point[i] + Rational(ar.shift[i]) > cx.cell(ar.from).point[i]) m = actions[i] * m;
    f.maps[a] = m;
  }
  return f;
}

}  // namespace toricmirror
