#include "toricmirror/fan.hpp"

#include "toricmirror/lattice.hpp"
#include "toricmirror/linalg.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace toricmirror {

std::vector<std::size_t> subset_indices(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

Subset subset_of(const std::vector<std::size_t>& indices) {
  Subset s = 0;
  for (auto i : indices) s |= Subset{1} << i;
  return s;
}

std::string subset_label(Subset s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto i : subset_indices(s)) {
    os << (first ? "" : ",") << i + 1;
    first = false;
  }
  os << '}';
  return os.str();
}

bool FanData::has_stratum(Subset s) const { return std::binary_search(strata.begin(), strata.end(), s); }

bool complete_downward_closure(FanData& fd) {
  std::set<Subset> all(fd.strata.begin(), fd.strata.end());
  const std::size_t before = all.size();
  for (Subset s : fd.strata)
    for (Subset sub = s;; sub = (sub - 1) & s) {
      all.insert(sub);
      if (sub == 0) break;
    }
  fd.strata.assign(all.begin(), all.end());
  return all.size() != before;
}

bool ValidationReport::structurally_valid() const {
  return std::all_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.kind == Violation::Kind::RelintOverlap; });
}

std::string ValidationReport::to_string() const {
  if (valid()) return "valid\n";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "- " << v.message;
    if (!v.witness_point.empty()) {
      os << " (common point (";
      for (std::size_t i = 0; i < v.witness_point.size(); ++i) os << (i ? "," : "") << v.witness_point[i];
      os << "))";
    }
    os << '\n';
  }
  return os.str();
}

namespace {

bool columns_independent(const FanData& fd, Subset s) {
  return rank(fd.columns(s)) == subset_size(s);
}

}  // namespace

std::optional<RatVector> relint_common_point(const FanData& fd, Subset s, Subset t) {
  if (s == t) {
    // a set meets itself; the point is the image of the all-ones vector on S
    RatVector p(fd.d);
    for (auto i : subset_indices(s))
      for (std::size_t r = 0; r < fd.d; ++r) p[r] += Rational(fd.f(r, i));
    return p;
  }
  if (columns_independent(fd, s | t)) return std::nullopt;
  // λ = 1 + λ', μ = 1 + μ':  Σ λ'_i v_i − Σ μ'_j v_j = Σ_T v_j − Σ_S v_i
  auto si = subset_indices(s);
  auto ti = subset_indices(t);
  RatMatrix a(fd.d, si.size() + ti.size());
  RatVector b(fd.d);
  for (std::size_t r = 0; r < fd.d; ++r) {
    for (std::size_t k = 0; k < si.size(); ++k) {
      a(r, k) = fd.f(r, si[k]);
      b[r] -= Rational(fd.f(r, si[k]));
    }
    for (std::size_t k = 0; k < ti.size(); ++k) {
      a(r, si.size() + k) = -fd.f(r, ti[k]);
      b[r] += Rational(fd.f(r, ti[k]));
    }
  }
  auto sol = nonnegative_solution(a, b);
  if (!sol) return std::nullopt;
  RatVector p(fd.d);
  for (std::size_t k = 0; k < si.size(); ++k)
    for (std::size_t r = 0; r < fd.d; ++r) p[r] += (1 + (*sol)[k]) * Rational(fd.f(r, si[k]));
  return p;
}

bool relint_disjoint(const FanData& fd, Subset s, Subset t) { return !relint_common_point(fd, s, t); }

ValidationReport validate(const FanData& fd) {
  ValidationReport rep;
  using K = Violation::Kind;
  if (fd.f.rows() != fd.d || fd.f.cols() != fd.n || fd.n > 30) {
    rep.violations.push_back({K::Shape, "ray matrix must be d x n with n <= 30", {}, {}});
    return rep;
  }
  const Subset universe = fd.n == 0 ? 0 : ((Subset{1} << fd.n) - 1);
  for (Subset s : fd.strata)
    if ((s & ~universe) != 0) {
      rep.violations.push_back({K::Shape, "stratum " + subset_label(s) + " uses an index > n", {s}, {}});
      return rep;
    }
  if (rank(fd.f) != fd.d)
    rep.violations.push_back({K::RankDeficient, "f is not rationally surjective (rank < d)", {}, {}});

  std::set<Subset> have(fd.strata.begin(), fd.strata.end());
  for (Subset s : fd.strata)
    for (auto i : subset_indices(s)) {
      Subset sub = s & ~(Subset{1} << i);
      if (!have.count(sub)) {
        rep.violations.push_back({K::NotDownwardClosed,
                                  "stratum " + subset_label(s) + " present but sub-stratum " +
                                      subset_label(sub) + " missing",
                                  {s, sub}, {}});
      }
    }
  for (std::size_t i = 0; i < fd.n; ++i) {
    Subset ray = Subset{1} << i;
    if (!have.count(ray))
      rep.violations.push_back({K::MissingRay, "coordinate ray " + subset_label(ray) + " missing", {ray}, {}});
    auto col = fd.ray(i);
    if (std::all_of(col.begin(), col.end(), [](const Integer& x) { return x == 0; }))
      rep.violations.push_back({K::CollapsedRay, "ray " + subset_label(ray) + " maps to 0", {ray}, {}});
  }
  if (!have.count(0)) rep.violations.push_back({K::NotDownwardClosed, "zero stratum {} missing", {0}, {}});

  if (!rep.structurally_valid()) return rep;
  for (std::size_t a = 0; a < fd.strata.size(); ++a)
    for (std::size_t b = a + 1; b < fd.strata.size(); ++b) {
      Subset s = fd.strata[a], t = fd.strata[b];
      if (auto p = relint_common_point(fd, s, t))
        rep.violations.push_back({K::RelintOverlap,
                                  "relative interiors of f(" + subset_label(s) + ") and f(" +
                                      subset_label(t) + ") meet",
                                  {s, t}, *p});
    }
  return rep;
}

void require_valid(const FanData& fd) {
  auto rep = validate(fd);
  if (!rep.valid()) throw InvalidFan(rep.to_string());
}

void require_structural(const FanData& fd) {
  auto rep = validate(fd);
  if (!rep.structurally_valid()) throw InvalidFan(rep.to_string());
}

bool is_simplicial(const FanData& fd) {
  require_structural(fd);
  return std::all_of(fd.strata.begin(), fd.strata.end(),
                     [&](Subset s) { return columns_independent(fd, s); });
}

bool is_complete(const FanData& fd) {
  if (!is_simplicial(fd)) return false;
  std::vector<Subset> top, facets;
  for (Subset s : fd.strata) {
    if (subset_size(s) == fd.d) top.push_back(s);
    if (subset_size(s) + 1 == fd.d) facets.push_back(s);
  }
  if (top.empty()) return false;
  for (Subset s : fd.strata)
    if (std::none_of(top.begin(), top.end(), [&](Subset m) { return (s & m) == s; })) return false;
  for (Subset facet : facets) {
    // normal to the hyperplane spanned by the facet's rays
    RatMatrix rows = to_rational(fd.columns(facet).transpose());
    RatMatrix normal_basis = nullspace(rows.rows() == 0 ? RatMatrix(0, fd.d) : rows);
    RatVector normal = normal_basis.column(0);
    std::vector<int> sides;
    for (Subset m : top) {
      if ((m & facet) != facet) continue;
      std::size_t extra = subset_indices(m & ~facet).front();
      Rational s = 0;
      for (std::size_t r = 0; r < fd.d; ++r) s += normal[r] * Rational(fd.f(r, extra));
      sides.push_back(sgn(s));
    }
    if (sides.size() != 2 || sides[0] * sides[1] != -1) return false;
  }
  return true;
}

std::string IrrelevantLocus::to_string() const {
  if (components.empty()) return "∅";
  std::ostringstream os;
  for (std::size_t c = 0; c < components.size(); ++c) {
    os << (c ? " ∪ " : "") << "V(";
    bool first = true;
    for (auto i : subset_indices(components[c])) {
      os << (first ? "" : ",") << 'x' << i + 1;
      first = false;
    }
    os << ')';
  }
  return os.str();
}

IrrelevantLocus irrelevant_locus(const FanData& fd) {
  require_valid(fd);
  IrrelevantLocus z;
  const Subset universe = (Subset{1} << fd.n) - 1;
  for (Subset s = 0;; ++s) {
    if (!fd.has_stratum(s)) {
      bool minimal = true;
      for (auto i : subset_indices(s))
        if (!fd.has_stratum(s & ~(Subset{1} << i))) {
          minimal = false;
          break;
        }
      if (minimal) z.components.push_back(s);
    }
    if (s == universe) break;
  }
  return z;
}

namespace {

FanData make_fan(std::string name, const IntMatrix& f, std::vector<Subset> maximal) {
  FanData fd;
  fd.name = std::move(name);
  fd.n = f.cols();
  fd.d = f.rows();
  fd.f = f;
  fd.strata = std::move(maximal);
  for (std::size_t i = 0; i < fd.n; ++i) fd.strata.push_back(Subset{1} << i);
  complete_downward_closure(fd);
  fd.closure_completed = false;
  return fd;
}

std::vector<Subset> all_proper_subsets_max(std::size_t n) {
  std::vector<Subset> out;
  const Subset universe = (Subset{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) out.push_back(universe & ~(Subset{1} << i));
  return out;
}

FanData affine(std::size_t n) {
  return make_fan("affine:" + std::to_string(n), IntMatrix::identity(n), {(Subset{1} << n) - 1});
}

FanData projective(std::size_t n) {
  IntMatrix f(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    f(i, i) = 1;
    f(i, n) = -1;
  }
  return make_fan("projective:" + std::to_string(n), f, all_proper_subsets_max(n + 1));
}

FanData weighted_projective(const std::vector<Integer>& w) {
  if (w.size() < 2) throw UnknownName("weighted_projective needs at least two weights");
  IntMatrix col(w.size(), 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0) throw UnknownName("weights must be positive");
    col(i, 0) = w[i];
  }
  auto snf = smith_normal_form(col);
  if (snf.S(0, 0) != 1) throw UnknownName("weights must be coprime");
  // N = Z^{k+1} / Z w; the quotient map is given by the last k rows of U^{-1}.
  const std::size_t k = w.size() - 1;
  IntMatrix f(k, w.size());
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < w.size(); ++i) f(r, i) = snf.U_inv(r + 1, i);
  std::ostringstream name;
  name << "weighted_projective:";
  for (std::size_t i = 0; i < w.size(); ++i) name << (i ? "," : "") << w[i];
  return make_fan(name.str(), f, all_proper_subsets_max(w.size()));
}

FanData hirzebruch(long a) {
  IntMatrix f{{1, 0, -1, 0}, {0, 1, a, -1}};
  return make_fan("hirzebruch:" + std::to_string(a), f, {0b0011, 0b0110, 0b1100, 0b1001});
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long parse_long(const std::string& s) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw UnknownName("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UnknownName("bad number '" + s + "'");
  }
}

}  // namespace

FanData product(const FanData& a, const FanData& b) {
  IntMatrix f(a.d + b.d, a.n + b.n);
  for (std::size_t r = 0; r < a.d; ++r)
    for (std::size_t c = 0; c < a.n; ++c) f(r, c) = a.f(r, c);
  for (std::size_t r = 0; r < b.d; ++r)
    for (std::size_t c = 0; c < b.n; ++c) f(a.d + r, a.n + c) = b.f(r, c);
  FanData fd;
  fd.name = "product:" + a.name + "*" + b.name;
  fd.n = a.n + b.n;
  fd.d = a.d + b.d;
  fd.f = f;
  std::set<Subset> strata;
  for (Subset s : a.strata)
    for (Subset t : b.strata) strata.insert(s | (t << a.n));
  fd.strata.assign(strata.begin(), strata.end());
  return fd;
}

FanData standard_fan(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "product") {
    auto star = arg.find('*');
    if (star == std::string::npos) throw UnknownName("product needs '<a>*<b>'");
    return product(standard_fan(arg.substr(0, star)), standard_fan(arg.substr(star + 1)));
  }
  if (head == "affine") return affine(static_cast<std::size_t>(parse_long(arg)));
  if (head == "projective") return projective(static_cast<std::size_t>(parse_long(arg)));
  if (head == "weighted_projective") {
    std::vector<Integer> w;
    for (const auto& part : split(arg, ',')) w.emplace_back(parse_long(part));
    return weighted_projective(w);
  }
  if (head == "hirzebruch") return hirzebruch(parse_long(arg));
  if (head == "p1xp1") return product(projective(1), projective(1));
  if (head == "p2_minus_vertex") {
    FanData fd = projective(2);
    fd.name = "p2_minus_vertex";
    fd.strata.erase(std::remove(fd.strata.begin(), fd.strata.end(), Subset{0b110}), fd.strata.end());
    return fd;
  }
  if (head == "cone_over_square") {
    IntMatrix f{{0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 1}};
    return make_fan("cone_over_square", f, {0b1111});
  }
  throw UnknownName("unknown fan '" + spec + "'");
}

FanData fan_from_json_text(const std::string& text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  try {
    FanData fd;
    fd.name = j.value("name", name);
    fd.n = j.at("n").get<std::size_t>();
    fd.d = j.at("d").get<std::size_t>();
    if (fd.n > 30) throw ParseError("n must be at most 30");
    const auto& rays = j.at("rays");
    if (rays.size() != fd.n) throw ParseError("expected " + std::to_string(fd.n) + " rays");
    fd.f = IntMatrix(fd.d, fd.n);
    for (std::size_t i = 0; i < fd.n; ++i) {
      if (rays[i].size() != fd.d) throw ParseError("ray " + std::to_string(i + 1) + " has wrong length");
      for (std::size_t r = 0; r < fd.d; ++r) {
        const auto& x = rays[i][r];
        fd.f(r, i) = x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<long>());
      }
    }
    std::set<Subset> strata;
    strata.insert(0);
    for (const auto& s : j.at("strata")) {
      Subset sub = 0;
      for (const auto& idx : s) {
        long k = idx.get<long>();
        if (k < 1 || static_cast<std::size_t>(k) > fd.n) throw ParseError("stratum index out of range");
        sub |= Subset{1} << (k - 1);
      }
      strata.insert(sub);
    }
    fd.strata.assign(strata.begin(), strata.end());
    fd.closure_completed = complete_downward_closure(fd);
    return fd;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

FanData load_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return fan_from_json_text(buf.str(), stem);
}

std::string fan_to_json_text(const FanData& fd) {
  nlohmann::json j;
  j["name"] = fd.name;
  j["n"] = fd.n;
  j["d"] = fd.d;
  j["rays"] = nlohmann::json::array();
  for (std::size_t i = 0; i < fd.n; ++i) {
    nlohmann::json ray = nlohmann::json::array();
    for (std::size_t r = 0; r < fd.d; ++r) ray.push_back(fd.f(r, i).get_si());
    j["rays"].push_back(ray);
  }
  // only the maximal strata; the loader restores the closure
  j["strata"] = nlohmann::json::array();
  for (Subset s : fd.strata) {
    bool maximal = std::none_of(fd.strata.begin(), fd.strata.end(),
                                [&](Subset t) { return t != s && (t & s) == s; });
    if (!maximal) continue;
    nlohmann::json idx = nlohmann::json::array();
    for (auto i : subset_indices(s)) idx.push_back(i + 1);
    j["strata"].push_back(idx);
  }
  return j.dump(2) + "\n";
}

}  // namespace toricmirror
