#include "toricmirror/skeleton.hpp"

#include "toricmirror/linalg.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace toricmirror {

std::string rational_string(const Rational& q) { return q.get_str(); }

std::size_t SkeletonComponent::cone_dim() const {
  if (cone.empty()) return 0;
  return rank(IntMatrix::from_columns(cone.front().size(), cone));
}

namespace {

std::vector<IntVector> negated_rays(const FanData& fd, Subset s) {
  std::vector<IntVector> gens;
  for (auto i : subset_indices(s)) {
    IntVector v = fd.ray(i);
    for (auto& x : v) x = -x;
    gens.push_back(std::move(v));
  }
  return gens;
}

std::vector<IntVector> negated_units(std::size_t n, Subset s) {
  std::vector<IntVector> gens;
  for (auto i : subset_indices(s)) {
    IntVector v(n);
    v[i] = -1;
    gens.push_back(std::move(v));
  }
  return gens;
}

/// Structural checks, except that coordinate rays may be absent and images may overlap.
void require_skeleton_input(const FanData& fd) {
  for (const auto& v : validate(fd).violations)
    if (v.kind != Violation::Kind::RelintOverlap && v.kind != Violation::Kind::MissingRay)
      throw InvalidFan(v.message);
}

/// Strata by size, then lexicographically in their index lists.
std::vector<Subset> ordered_strata(const FanData& fd) {
  std::vector<Subset> out = fd.strata;
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    if (subset_size(a) != subset_size(b)) return subset_size(a) < subset_size(b);
    return subset_indices(a) < subset_indices(b);
  });
  return out;
}

}  // namespace

std::vector<SkeletonComponent> lambda_Z(const FanData& fd) {
  require_skeleton_input(fd);
  std::vector<SkeletonComponent> out;
  for (Subset s : ordered_strata(fd)) {
    auto idx = subset_indices(s);
    IntMatrix g(idx.size(), fd.n);
    for (std::size_t k = 0; k < idx.size(); ++k) g(k, idx[k]) = 1;
    out.push_back({s, solve_congruences(g, RatVector(idx.size())), negated_units(fd.n, s)});
  }
  return out;
}

std::vector<CoverComponent> lambda_ZM(const FanData& fd) {
  require_skeleton_input(fd);
  std::vector<CoverComponent> out;
  for (Subset s : ordered_strata(fd)) {
    CoverComponent c;
    c.stratum = s;
    c.ambient_dim = fd.n;
    for (std::size_t j = 0; j < fd.n; ++j)
      if (!subset_contains(s, j)) c.direction.push_back(j);
    c.cone = negated_units(fd.n, s);
    const auto idx = subset_indices(s);
    if (idx.empty()) {
      c.torsion_cosets.push_back({});
      out.push_back(std::move(c));
      continue;
    }
    // proj_S(M) is spanned by the columns of (f_S)^T
    IntMatrix proj = fd.columns(s).transpose();
    c.coset_group = cokernel(proj);
    c.periodic_rank = c.coset_group.rank;
    auto snf = smith_normal_form(proj);
    std::vector<IntVector> reps{IntVector(idx.size())};
    for (std::size_t i = 0; i < snf.rank; ++i) {
      std::vector<IntVector> next;
      for (const auto& y : reps)
        for (Integer j = 0; j < snf.S(i, i); ++j) {
          IntVector z = y;
          z[i] = j;
          next.push_back(std::move(z));
        }
      reps = std::move(next);
    }
    for (const auto& y : reps) c.torsion_cosets.push_back(snf.U * y);
    out.push_back(std::move(c));
  }
  return out;
}

ReducedSkeleton reduce(const FanData& fd, const RatVector& gamma) {
  require_skeleton_input(fd);
  if (gamma.size() != fd.n) throw DimensionMismatch("gamma lift must have length n");
  ReducedSkeleton sk;
  sk.gamma = gamma;
  for (Subset s : ordered_strata(fd)) {
    const auto idx = subset_indices(s);
    IntMatrix g = fd.columns(s).transpose();
    RatVector target(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) target[k] = -gamma[idx[k]];
    auto base = solve_congruences(g, target);
    if (base.empty()) {
      sk.empty_strata.push_back(s);
      continue;
    }
    sk.components.push_back({s, std::move(base), negated_rays(fd, s)});
  }
  return sk;
}

std::vector<ComponentShape> shapes(const ReducedSkeleton& sk) {
  std::vector<ComponentShape> out;
  for (const auto& c : sk.components) out.push_back({c.stratum, c.base_dim(), c.base.size(), c.cone_dim()});
  return out;
}

bool is_noncharacteristic(const FanData& fd) {
  require_skeleton_input(fd);
  for (Subset s : fd.strata) {
    const auto idx = subset_indices(s);
    const std::size_t k = idx.size();
    // x = x+ - x- supported on S with f(x) = 0 and x_i = 1
    for (std::size_t pin = 0; pin < k; ++pin) {
      RatMatrix a(fd.d + 1, 2 * k);
      RatVector b(fd.d + 1);
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < fd.d; ++r) {
          a(r, c) = fd.f(r, idx[c]);
          a(r, k + c) = -fd.f(r, idx[c]);
        }
      a(fd.d, pin) = 1;
      a(fd.d, k + pin) = -1;
      b[fd.d] = 1;
      if (nonnegative_solution(a, b)) return false;
    }
  }
  return true;
}

bool is_submersive(const FanData& fd) {
  require_skeleton_input(fd);
  const std::size_t m_rank = rank(fd.f);
  for (Subset s : fd.strata) {
    // [e_j (j ∉ S) | f^T]: its rank minus rank(M) is the rank of {p_S = 0} -> R^n/M_R
    IntMatrix stacked(fd.n, fd.n - subset_size(s) + fd.d);
    std::size_t col = 0;
    for (std::size_t j = 0; j < fd.n; ++j)
      if (!subset_contains(s, j)) stacked(j, col++) = 1;
    for (std::size_t r = 0; r < fd.d; ++r, ++col)
      for (std::size_t i = 0; i < fd.n; ++i) stacked(i, col) = fd.f(r, i);
    if (rank(stacked) - m_rank != fd.n - fd.d) return false;
  }
  return true;
}

std::string EquivalenceReport::to_string() const {
  std::ostringstream os;
  os << "simplicial=" << std::boolalpha << simplicial << " noncharacteristic=" << noncharacteristic
     << " submersive=" << submersive << (agree() ? "" : "  DISAGREEMENT");
  return os.str();
}

EquivalenceReport check_equivalence(const FanData& fd) {
  return {is_simplicial(fd), is_noncharacteristic(fd), is_submersive(fd)};
}

namespace {

double to_double(const Rational& q) { return q.get_d(); }

struct Segment {
  RatVector a, b;
};

/// The closed geodesic p + t w (t in [0,1]) cut into pieces inside [0,1)^2.
std::vector<Segment> geodesic_segments(const RatVector& p, const IntVector& w) {
  std::set<Rational> cuts{Rational(0), Rational(1)};
  for (std::size_t k = 0; k < 2; ++k) {
    if (w[k] == 0) continue;
    const Rational end = p[k] + Rational(w[k]);
    Integer lo = floor_of(std::min<Rational>(p[k], end)) - 1;
    Integer hi = ceil_of(std::max<Rational>(p[k], end)) + 1;
    for (Integer j = lo; j <= hi; ++j) {
      Rational t = (Rational(j) - p[k]) / Rational(w[k]);
      if (t > 0 && t < 1) cuts.insert(t);
    }
  }
  std::vector<Segment> out;
  std::vector<Rational> ts(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    Rational mid = (ts[i] + ts[i + 1]) / 2;
    Segment s{RatVector(2), RatVector(2)};
    for (std::size_t k = 0; k < 2; ++k) {
      Integer shift = floor_of(p[k] + mid * Rational(w[k]));
      s.a[k] = p[k] + ts[i] * Rational(w[k]) - Rational(shift);
      s.b[k] = p[k] + ts[i + 1] * Rational(w[k]) - Rational(shift);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::string emit_svg(const FanData& fd, const RatVector& gamma) {
  if (fd.d > 2) throw DimensionTooLarge("drawing needs d <= 2");
  auto sk = reduce(fd, gamma);
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  const double glyph = 18.0;
  if (fd.d == 1) {
    const double cx = 200, cy = 200, r = 150;
    auto at = [&](const Rational& u) {
      double th = 2 * M_PI * to_double(u);
      return std::pair<double, double>{cx + r * std::cos(th), cy - r * std::sin(th)};
    };
    os << "  <circle class=\"torus\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
       << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (const auto& c : sk.components) {
      if (c.base_dim() == 1) {
        os << "  <circle class=\"zero-section\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
           << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>\n";
        continue;
      }
      for (const auto& p : c.base.points()) {
        auto [x, y] = at(p[0]);
        os << "  <circle class=\"base\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\"/>\n";
        double th = 2 * M_PI * to_double(p[0]);
        for (const auto& g : c.cone) {
          double sgn = g[0] > 0 ? 1.0 : -1.0;
          os << "  <line class=\"cone\" x1=\"" << x << "\" y1=\"" << y << "\" x2=\""
             << x - sgn * glyph * std::sin(th) << "\" y2=\"" << y - sgn * glyph * std::cos(th)
             << "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
        }
      }
    }
    os << "</svg>\n";
    return os.str();
  }
  if (fd.d == 0) {
    os << "</svg>\n";
    return os.str();
  }
  auto px = [](const Rational& u) { return 20.0 + 360.0 * to_double(u); };
  auto py = [](const Rational& v) { return 380.0 - 360.0 * to_double(v); };
  auto cone_glyphs = [&](double x, double y, const std::vector<IntVector>& cone) {
    for (const auto& g : cone) {
      double gx = to_double(Rational(g[0])), gy = to_double(Rational(g[1]));
      double len = std::sqrt(gx * gx + gy * gy);
      os << "  <line class=\"cone\" x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + glyph * gx / len
         << "\" y2=\"" << y - glyph * gy / len << "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
    }
  };
  os << "  <rect class=\"torus\" x=\"20\" y=\"20\" width=\"360\" height=\"360\" fill=\"none\" stroke=\"#888\"/>\n";
  for (const auto& c : sk.components) {
    if (c.base_dim() == 2) {
      os << "  <rect class=\"zero-section\" x=\"20\" y=\"20\" width=\"360\" height=\"360\" fill=\"#f2f2f2\" "
            "stroke=\"#000\"/>\n";
      continue;
    }
    for (const auto& p : c.base.points()) {
      if (c.base_dim() == 0) {
        os << "  <circle class=\"base\" cx=\"" << px(p[0]) << "\" cy=\"" << py(p[1]) << "\" r=\"4\"/>\n";
        cone_glyphs(px(p[0]), py(p[1]), c.cone);
        continue;
      }
      auto segs = geodesic_segments(p, c.base.direction().column(0));
      for (const auto& s : segs)
        os << "  <line class=\"base\" x1=\"" << px(s.a[0]) << "\" y1=\"" << py(s.a[1]) << "\" x2=\"" << px(s.b[0])
           << "\" y2=\"" << py(s.b[1]) << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
      const auto& first = segs.front();
      cone_glyphs((px(first.a[0]) + px(first.b[0])) / 2, (py(first.a[1]) + py(first.b[1])) / 2, c.cone);
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string skeleton_to_json(const ReducedSkeleton& sk, int indent) {
  using nlohmann::json;
  auto ints = [](const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
  };
  auto rats = [](const RatVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_string(x));
    return a;
  };
  auto stratum = [](Subset s) {
    json a = json::array();
    for (auto i : subset_indices(s)) a.push_back(i + 1);
    return a;
  };
  json j;
  j["gamma"] = rats(sk.gamma);
  j["components"] = json::array();
  for (const auto& c : sk.components) {
    json comp;
    comp["stratum"] = stratum(c.stratum);
    json dir = json::array();
    for (std::size_t k = 0; k < c.base.direction().cols(); ++k) dir.push_back(ints(c.base.direction().column(k)));
    json cosets = json::array();
    for (const auto& p : c.base.points()) cosets.push_back(rats(p));
    comp["base"] = {{"direction", dir}, {"cosets", cosets}};
    json gens = json::array();
    for (const auto& g : c.cone) gens.push_back(ints(g));
    comp["cone"] = {{"generators", gens}};
    j["components"].push_back(comp);
  }
  j["empty_strata"] = json::array();
  for (Subset s : sk.empty_strata) j["empty_strata"].push_back(stratum(s));
  return j.dump(indent);
}

}  // namespace toricmirror
