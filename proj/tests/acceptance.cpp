// Acceptance run: one PASS/FAIL line per criterion, each under its time limit.

#include "oracles.hpp"
#include "random_fans.hpp"

#include "toricmirror/cox_coh.hpp"
#include "toricmirror/linalg.hpp"
#include "toricmirror/skeleton.hpp"
#include "toricmirror/workbench.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

using namespace toricmirror;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

IntVector ints(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(x);
  return v;
}

FanData golden(const std::string& file) { return load_fan(std::string(TORICMIRROR_DATA) + "/fans/" + file); }

// h^i(P^1, O(a)) from the two-chart Čech complex, one Laurent degree at a time.
std::vector<std::size_t> cech_p1(long a) {
  std::vector<std::size_t> h{0, 0};
  for (long m = -std::abs(a) - 2; m <= std::abs(a) + 2; ++m) {
    const std::size_t c0 = (m >= 0 ? 1 : 0) + (m <= a ? 1 : 0);  // U_0, U_1
    const std::size_t c1 = 1;                                   // U_01
    const std::size_t r = c0 > 0 ? 1 : 0;
    h[0] += c0 - r;
    h[1] += c1 - r;
  }
  return h;
}

std::size_t lattice_points_p2(long k) { return k < 0 ? 0 : static_cast<std::size_t>((k + 1) * (k + 2) / 2); }

Outcome cox_goldens() {
  Outcome o;
  auto p2 = irrelevant_locus(golden("p2.json")).to_string();
  o.require(p2 == "V(x1,x2,x3)", "P2: " + p2);
  auto pm = irrelevant_locus(golden("p2_minus_vertex.json")).to_string();
  o.require(pm == "V(x2,x3)", "P2 minus vertex: " + pm);
  if (o.ok) o.detail = "P2 " + p2 + ", P2 minus vertex " + pm;
  return o;
}

Outcome class_groups() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"p1.json", "Z"}, {"p2.json", "Z"}, {"wp112.json", "Z"}, {"torsion_cone.json", "Z/2"}};
  std::ostringstream seen;
  for (const auto& [file, expect] : cases) {
    FanData fd = golden(file);
    auto q = character_sequence(fd.f).quotient();
    seen << file << "=" << q.to_string() << " ";
    o.require(q.to_string() == expect, file + ": " + q.to_string());
    // oracle: Cl = Z^n / f^T Z^d has rank n - d and torsion from the determinantal divisors of f
    std::vector<Integer> torsion;
    for (const auto& s : oracle::smith_diagonal_by_minors(fd.f))
      if (s > 1) torsion.push_back(s);
    o.require(q.rank == fd.n - fd.d, file + ": rank disagrees with the oracle");
    o.require(q.invariant_factors == torsion, file + ": torsion disagrees with the oracle");
  }
  if (o.ok) o.detail = seen.str();
  return o;
}

Outcome predicate_agreement() {
  Outcome o;
  std::mt19937 rng(2024);
  std::size_t disagreements = 0;
  for (int t = 0; t < 200; ++t) {
    auto fd = corpus::random_valid_fan(rng);
    if (!(fd.n <= 6 && fd.d <= 3)) o.require(false, "generator out of range");
    if (!check_equivalence(fd).agree()) ++disagreements;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  if (o.ok) o.detail = "200 fans, 0 disagreements";
  return o;
}

Outcome skeleton_structure() {
  Outcome o;
  auto p1 = reduce(golden("p1.json"), RatVector(2));
  o.require(p1.components.size() == 3, "P1 component count");
  if (!o.ok) return o;
  o.require(p1.components[0].base_dim() == 1 && p1.components[0].cone_dim() == 0, "P1 zero section");
  o.require(p1.components[1].base.points() == p1.components[2].base.points() &&
                p1.components[1].base.size() == 1,
            "P1 rays not over one point");
  o.require(p1.components[1].cone.size() == 1 && p1.components[2].cone.size() == 1 &&
                p1.components[1].cone[0][0] == -p1.components[2].cone[0][0],
            "P1 rays not opposite");

  auto p2 = reduce(golden("p2.json"), RatVector(3));
  std::vector<std::size_t> base, cone;
  for (const auto& c : p2.components) {
    base.push_back(c.base_dim());
    cone.push_back(c.cone_dim());
  }
  o.require(base == std::vector<std::size_t>{2, 1, 1, 1, 0, 0, 0}, "P2 base dims");
  o.require(cone == std::vector<std::size_t>{0, 1, 1, 1, 2, 2, 2}, "P2 cone dims");
  for (const auto* sk : {&p1, &p2})
    for (const auto& c : sk->components)
      o.require(c.base_dim() + c.cone_dim() == c.base.ambient_dim(), "base + cone != d");
  if (o.ok) o.detail = "P1: 3 components; P2: 7 components, dims (2,1,1,1,0,0,0)/(0,1,1,1,2,2,2)";
  return o;
}

Outcome dim1_suite() {
  Outcome o;
  Dim1Options opts;
  opts.seed = 1;
  opts.count = 50;
  auto r = verify_dim1(opts);
  o.require(opts.characters.size() == 5, "need 5 characters");
  o.require(r.matrices["pairs"].size() == 50, "corpus size");
  o.require(r.pass, "failure: " + r.witness.dump());
  if (o.ok) o.detail = "50 pairs, 5 characters, 0 failures";
  return o;
}

Outcome p1_quotient() {
  Outcome o;
  FanData p1 = golden("p1.json");
  // B side against the Čech oracle: Ext(O(a), O(b)) = H(O(b - a))
  const std::vector<long> degrees{0, -1};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      auto t = hom_dims(p1, ints({degrees[i], 0}), ints({degrees[j], 0}));
      o.require(t.dims == cech_p1(degrees[j] - degrees[i]), "B side differs from the Čech oracle");
    }
  auto r = verify_quotient(p1, {ints({0, 0}), ints({-1, 0})}, {RatVector(2), {true, false, 0}});
  o.require(r.pass && recheck_quotient(r), "no match: " + r.witness.dump());
  // the expected matrix [[1,2],[0,1]] in h^0, up to ordering and transpose
  auto a = dims_from_json(r.matrices["aside"]);
  std::multiset<std::size_t> diag, off;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) (i == j ? diag : off).insert(a[i][j].empty() ? 0 : a[i][j][0]);
  o.require(diag == std::multiset<std::size_t>{1, 1} && off == std::multiset<std::size_t>{0, 2}, "A side is not [[1,2],[0,1]]");
  if (o.ok) o.detail = "A side matches (O, O(-1)), transpose=" + r.witness["transpose"].dump();
  return o;
}

Outcome p2_quotient() {
  Outcome o;
  FanData p2 = golden("p2.json");
  auto r = verify_quotient(p2, {ints({0, 0, 0}), ints({1, 0, 0}), ints({2, 0, 0})});
  o.require(r.pass && recheck_quotient(r), "no match: " + r.witness.dump());
  auto a = dims_from_json(r.matrices["aside"]);
  auto b = dims_from_json(r.matrices["bside"]);
  o.require(a.size() == 3, "A side has " + std::to_string(a.size()) + " generators");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const long k = static_cast<long>(j) - static_cast<long>(i);
      o.require(b[i][j].size() == 3 && b[i][j][0] == lattice_points_p2(k), "B side h0 differs from (k+1)(k+2)/2");
    }
  if (!o.ok) return o;
  std::multiset<std::size_t> off;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j)
        for (auto x : a[i][j])
          if (x) off.insert(x);
  o.require(off == std::multiset<std::size_t>{3, 3, 6}, "A side off-diagonal entries are not {3,6,3}");
  if (o.ok) o.detail = "3 generators, off-diagonal {3,6,3}";
  return o;
}

Outcome gamma_independence() {
  Outcome o;
  std::ostringstream seen;
  for (const char* file : {"p1.json", "p2.json", "p1xp1.json"}) {
    FanData fd = golden(file);
    std::mt19937_64 rng(7);
    std::vector<RatVector> gammas;
    for (int i = 0; i < 5; ++i) gammas.push_back(random_gamma(rng, fd.n));
    auto r = verify_gamma(fd, gammas, {true, 4});
    o.require(r.pass && r.matrices.contains("aside"), std::string(file) + ": " + r.witness.dump());
    if (r.pass) seen << file << " " << r.witness["generators"].dump() << " generators; ";
  }
  FanData cs = golden("cone_over_square.json");
  auto r = verify_gamma(cs, {RatVector(4), {Rational(1, 3), Rational(1, 7), Rational(2, 5), Rational(1, 11)}});
  o.require(r.pass, "cone over a square: emptiness pattern constant");
  if (o.ok) o.detail = seen.str() + "cone over a square varies";
  return o;
}

Outcome bside_consistency() {
  Outcome o;
  FanData p2 = golden("p2.json"), q = golden("p1xp1.json");
  auto a = cohomology_dims(p2, ints({-3, 0, 0})).dims;
  o.require(a == std::vector<std::size_t>{0, 0, 1}, "h(P2, O(-3))");
  auto b = cohomology_dims(q, ints({-1, 0, -1, 0})).dims;
  o.require(b == std::vector<std::size_t>{0, 0, 0}, "h(P1xP1, O(-1,-1))");
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::size_t checks = 0;
  for (const char* file : {"p1.json", "p2.json", "p1xp1.json", "hirzebruch1.json"}) {
    FanData fd = golden(file);
    IntVector k = canonical_lift(fd);
    for (int t = 0; t < 8; ++t) {
      IntVector d(fd.n), dual(fd.n), moved(fd.n);
      for (std::size_t i = 0; i < fd.n; ++i) d[i] = coef(rng);
      for (std::size_t i = 0; i < fd.n; ++i) dual[i] = k[i] - d[i];  // K - D
      std::vector<long> m(fd.d);
      for (auto& x : m) x = coef(rng);
      for (std::size_t i = 0; i < fd.n; ++i) {
        moved[i] = d[i];
        for (std::size_t r = 0; r < fd.d; ++r) moved[i] += m[r] * fd.f(r, i);
      }
      auto h = cohomology_dims(fd, d).dims, hd = cohomology_dims(fd, dual).dims, hm = cohomology_dims(fd, moved).dims;
      for (std::size_t i = 0; i <= fd.d; ++i)
        o.require(h[i] == hd[fd.d - i], std::string(file) + ": Serre duality fails");
      o.require(h == hm, std::string(file) + ": depends on the lift");
      checks += 2;
    }
  }
  if (o.ok) o.detail = "h(P2,O(-3))=(0,0,1), h(P1xP1,O(-1,-1))=(0,0,0), " + std::to_string(checks) + " spot checks";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  Dim1Options flipped;
  flipped.orientation = Orientation::Flipped;
  auto f = verify_dim1(flipped);
  o.require(f.verdict() == "fail" && f.witness.contains("pair"), "flipped orientation did not fail with a witness");
  auto q = verify_quotient(golden("p1.json"), {ints({0, 0}), ints({5, 0})});
  o.require(q.verdict() == "fail" && q.witness.contains("reason"), "(O, O(5)) did not fail with a witness");
  if (o.ok) o.detail = "flipped: pair " + f.witness["pair"].dump() + "; (O, O(5)): " + q.witness["reason"].get<std::string>();
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cox locus goldens", 1, cox_goldens},
      {2, "class groups against the determinantal oracle", 1, class_groups},
      {3, "simplicial = noncharacteristic = submersive on 200 fans", 30, predicate_agreement},
      {4, "skeleton structure of P1 and P2", 1, skeleton_structure},
      {5, "one-variable mirror suite", 30, dim1_suite},
      {6, "P1 quotient verification", 5, p1_quotient},
      {7, "P2 quotient verification", 120, p2_quotient},
      {8, "gamma independence", 120, gamma_independence},
      {9, "B-side self-consistency", 30, bside_consistency},
      {10, "negative controls fail", 5, negative_controls},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs < c.limit_s;
    if (o.ok && !pass) o.detail += " (over time)";
    failures += pass ? 0 : 1;
    std::printf("%s %2d %-55s %8.3fs / %4.0fs  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_s,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
