#include "toricmirror/workbench.hpp"

#include "toricmirror/linalg.hpp"
#include "toricmirror/skeleton.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

namespace toricmirror {

Json VerificationReport::to_json() const {
  Json j;
  j["test"] = test;
  j["fan"] = fan;
  j["inputs"] = inputs;
  j["matrices"] = matrices;
  j["verdict"] = verdict();
  j["witness"] = witness;
  j["notes"] = notes;
  return j;
}

Json MatrixMatch::to_json() const {
  return Json{{"permutation", permutation}, {"transpose", transpose}, {"shifts", shifts}};
}

Json dims_to_json(const DimsMatrix& m) {
  Json j = Json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

DimsMatrix dims_from_json(const Json& j) { return j.get<DimsMatrix>(); }

Json rational_vector_json(const RatVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(rational_string(x));
  return j;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

RatVector random_gamma(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> den(2, 11);
  RatVector g(n);
  for (auto& x : g) {
    int q = den(rng);
    std::uniform_int_distribution<int> num(0, q - 1);
    x = Rational(num(rng), q);
    x.canonicalize();
  }
  return g;
}

// ---------------------------------------------------------------------------
// Matrix matching

namespace {

std::size_t at(const std::vector<std::size_t>& v, long k) {
  return (k >= 0 && static_cast<std::size_t>(k) < v.size()) ? v[static_cast<std::size_t>(k)] : 0;
}

bool graded_equal(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, long delta) {
  const long lo = std::min<long>(0, -delta);
  const long hi = std::max<long>(static_cast<long>(a.size()), static_cast<long>(b.size()) - delta);
  for (long k = lo; k < hi; ++k)
    if (at(a, k) != at(b, k + delta)) return false;
  return true;
}

const std::vector<std::size_t>& b_entry(const DimsMatrix& b, const MatrixMatch& m, std::size_t i, std::size_t j) {
  const std::size_t p = m.permutation[i], q = m.permutation[j];
  return m.transpose ? b[q][p] : b[p][q];
}

bool pair_ok(const DimsMatrix& a, const DimsMatrix& b, const MatrixMatch& m, std::size_t i, std::size_t j) {
  return graded_equal(a[i][j], b_entry(b, m, i, j), m.shifts[j] - m.shifts[i]);
}

bool assign_shifts(const DimsMatrix& a, const DimsMatrix& b, MatrixMatch& m, std::size_t i, long range) {
  if (i == a.size()) return true;
  for (long s = (i == 0 ? 0 : -range); s <= (i == 0 ? 0 : range); ++s) {
    m.shifts[i] = s;
    bool ok = true;
    for (std::size_t j = 0; j <= i && ok; ++j) ok = pair_ok(a, b, m, i, j) && pair_ok(a, b, m, j, i);
    if (ok && assign_shifts(a, b, m, i + 1, range)) return true;
  }
  return false;
}

}  // namespace

bool check_match(const DimsMatrix& a, const DimsMatrix& b, const MatrixMatch& m) {
  const std::size_t k = a.size();
  if (b.size() != k || m.permutation.size() != k || m.shifts.size() != k) return false;
  std::vector<std::size_t> sorted = m.permutation;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < k; ++i)
    if (sorted[i] != i) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!pair_ok(a, b, m, i, j)) return false;
  return true;
}

std::optional<MatrixMatch> match_matrices(const DimsMatrix& a, const DimsMatrix& b, const MatchOptions& opts) {
  const std::size_t k = a.size();
  if (b.size() != k) return std::nullopt;
  MatrixMatch m;
  m.permutation.resize(k);
  std::iota(m.permutation.begin(), m.permutation.end(), 0);
  m.shifts.assign(k, 0);
  const long range = opts.allow_shifts ? opts.max_shift : 0;
  do {
    for (bool tr : {false, true}) {
      if (tr && !opts.allow_transpose) continue;
      m.transpose = tr;
      if (assign_shifts(a, b, m, 0, range)) return m;
    }
  } while (std::next_permutation(m.permutation.begin(), m.permutation.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// One-variable dictionary

CellSheaf oriented_mirror(const TorsionModule& m, Orientation o) {
  CellSheaf f = mirror_1d(m);
  if (o == Orientation::Flipped) std::swap(f.maps[rho_plus()], f.maps[rho_minus()]);
  return f;
}

VerificationReport verify_dim1(const Dim1Options& opts) {
  VerificationReport r;
  r.test = "dim1";
  r.fan = "affine:1";
  r.inputs = {{"seed", opts.seed},
              {"count", opts.count},
              {"max_dim", opts.max_dim},
              {"orientation", opts.orientation == Orientation::Standard ? "standard" : "flipped"},
              {"characters", rational_vector_json(opts.characters)}};
  std::mt19937_64 rng(opts.seed);
  std::vector<TorsionModule> mods;
  for (std::size_t i = 0; i < 2 * opts.count; ++i) mods.push_back(random_torsion_module(rng, opts.max_dim));
  // shared statics before any worker starts
  (void)marked_circle();
  (void)rho_plus();
  (void)rho_minus();
  const auto theta = theta_skeleton();

  struct PairResult {
    Json record;
    std::string failure;
  };
  std::vector<PairResult> results(opts.count);
  parallel_for(opts.count, opts.jobs, [&](std::size_t p) {
    const auto& m = mods[2 * p];
    const auto& n = mods[2 * p + 1];
    auto fm = oriented_mirror(m, opts.orientation), fn = oriented_mirror(n, opts.orientation);
    auto ext = ext_dims_kt(m, n);
    auto hom = rhom(fm, fn);
    auto pull = pullback_at_zero(m);
    auto micro = microstalk_1d(fm);
    bool member = in_subcategory(fm, theta);
    bool equivariant = true;
    for (const auto& chi : opts.characters) {
      auto lhs = oriented_mirror(m.scaled(chi), opts.orientation);
      auto twisted = twist(fm, {chi});
      bool same = false;
      try {
        same = normalize_1d(twisted).maps == lhs.maps;
      } catch (const NotInvertible&) {
        same = false;
      }
      auto rhs_n = oriented_mirror(n.scaled(chi), opts.orientation);
      equivariant = equivariant && same && rhom(lhs, rhs_n) == hom;
    }
    auto& out = results[p];
    out.record = {{"pair", p},      {"dims", {m.dim(), n.dim()}}, {"ext_kt", ext},          {"rhom", hom},
                  {"pullback", pull}, {"microstalk", micro},        {"in_theta", member}, {"equivariant", equivariant}};
    if (ext != hom)
      out.failure = "ext_dims_kt != rhom of mirrors";
    else if (pull != micro)
      out.failure = "pullback_at_zero != microstalk of mirror";
    else if (!member)
      out.failure = "mirror not in Sh of the theta skeleton";
    else if (!equivariant)
      out.failure = "twist does not match scaling of t";
  });
  Json pairs = Json::array();
  r.pass = true;
  for (std::size_t p = 0; p < results.size(); ++p) {
    pairs.push_back(results[p].record);
    if (!results[p].failure.empty() && r.pass) {
      r.pass = false;
      r.witness = {{"pair", p},
                   {"reason", results[p].failure},
                   {"record", results[p].record}};
    }
  }
  r.matrices["pairs"] = pairs;
  if (opts.count == 0) r.notes.push_back("warning: empty corpus, vacuous pass");
  if (r.pass && opts.count) r.witness = {{"pairs_checked", opts.count}};
  return r;
}

// ---------------------------------------------------------------------------
// Quotient and γ comparisons

DimsMatrix aside_matrix(const FanData& fd, const RatVector& gamma) {
  auto sk = reduce(fd, gamma);
  auto cx = std::make_shared<CellComplex>(build_adapted_complex(fd.d, sk.components));
  return rhom_matrix(generators(cx, sk.components).objects);
}

DimsMatrix bside_matrix(const FanData& fd, const std::vector<IntVector>& classes) {
  auto tables = hom_matrix(fd, classes);
  DimsMatrix out(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (const auto& t : tables[i]) out[i].push_back(t.dims);
  return out;
}

VerificationReport verify_quotient(const FanData& fd, const std::vector<IntVector>& classes,
                                   const QuotientOptions& opts) {
  require_valid(fd);
  if (!is_simplicial(fd)) throw NotSimplicial("quotient verification needs a simplicial fan");
  if (fd.d > 2) throw DimensionTooLarge("the sheaf engine handles tori of dimension 1 and 2");
  if (!is_complete(fd)) throw NotComplete("quotient verification needs a complete fan");
  RatVector gamma = opts.gamma.value_or(RatVector(fd.n));

  VerificationReport r;
  r.test = "quotient";
  r.fan = fd.name;
  Json cls = Json::array();
  for (const auto& c : classes) {
    Json l = Json::array();
    for (const auto& x : c) l.push_back(x.get_str());
    cls.push_back(l);
  }
  r.inputs = {{"classes", cls}, {"gamma", rational_vector_json(gamma)}};
  auto b = bside_matrix(fd, classes);
  auto a = aside_matrix(fd, gamma);
  r.matrices = {{"aside", dims_to_json(a)}, {"bside", dims_to_json(b)}};
  if (a.size() != b.size()) {
    r.witness = {{"reason", "generator count differs from class count"}, {"generators", a.size()}, {"classes", b.size()}};
    return r;
  }
  auto m = match_matrices(a, b, opts.match);
  if (!m) {
    r.witness = {{"reason", "no permutation, transpose and shifts carry the A-side matrix onto the B-side matrix"}};
    return r;
  }
  r.pass = true;
  r.witness = m->to_json();
  return r;
}

bool recheck_quotient(const VerificationReport& r) {
  if (!r.pass || r.test != "quotient") return false;
  MatrixMatch m;
  m.permutation = r.witness.at("permutation").get<std::vector<std::size_t>>();
  m.transpose = r.witness.at("transpose").get<bool>();
  m.shifts = r.witness.at("shifts").get<std::vector<long>>();
  return check_match(dims_from_json(r.matrices.at("aside")), dims_from_json(r.matrices.at("bside")), m);
}

namespace {

Json subset_json(Subset s) {
  Json j = Json::array();
  for (std::size_t i = 0; i < 32; ++i)
    if (subset_contains(s, i)) j.push_back(i + 1);
  return j;
}

Json shapes_json(const std::vector<ComponentShape>& shapes) {
  Json j = Json::array();
  for (const auto& s : shapes)
    j.push_back({{"stratum", subset_json(s.stratum)},
                 {"base_dim", s.base_dim},
                 {"cosets", s.cosets},
                 {"cone_dim", s.cone_dim}});
  return j;
}

}  // namespace

VerificationReport verify_gamma(const FanData& fd, const std::vector<RatVector>& gammas, const GammaOptions& opts) {
  require_structural(fd);
  VerificationReport r;
  r.test = "gamma";
  r.fan = fd.name;
  Json gs = Json::array();
  for (const auto& g : gammas) gs.push_back(rational_vector_json(g));
  r.inputs = {{"gammas", gs}};
  if (gammas.empty()) {
    r.pass = true;
    r.notes.push_back("warning: no γ given, vacuous pass");
    return r;
  }
  const bool simplicial = validate(fd).valid() && is_simplicial(fd);
  std::vector<ReducedSkeleton> sks(gammas.size());
  parallel_for(gammas.size(), opts.jobs, [&](std::size_t i) { sks[i] = reduce(fd, gammas[i]); });

  if (!simplicial) {
    // non-simplicial: the emptiness pattern of the bases is expected to vary
    Json patterns = Json::array();
    for (const auto& sk : sks) {
      Json e = Json::array();
      for (Subset s : sk.empty_strata) e.push_back(subset_json(s));
      patterns.push_back(e);
    }
    r.matrices["empty_strata"] = patterns;
    std::size_t k = 1;
    while (k < sks.size() && sks[k].empty_strata == sks[0].empty_strata) ++k;
    r.pass = k < sks.size();
    if (r.pass)
      r.witness = {{"gamma_a", 0}, {"gamma_b", k}};
    else
      r.witness = {{"reason", "emptiness pattern constant across the given γ"}};
    r.notes.push_back("non-simplicial data: comparing base emptiness, not categories");
    return r;
  }

  Json shape_list = Json::array();
  for (const auto& sk : sks) shape_list.push_back(shapes_json(shapes(sk)));
  r.matrices["shapes"] = shape_list;
  for (std::size_t i = 1; i < sks.size(); ++i)
    if (!(shapes(sks[i]) == shapes(sks[0]))) {
      r.witness = {{"reason", "component data differ"}, {"gamma_a", 0}, {"gamma_b", i}};
      return r;
    }

  const bool categorical = opts.categorical && fd.d <= 2 && is_complete(fd);
  if (!categorical) {
    r.pass = true;
    r.notes.push_back("categorical comparison skipped (needs a complete fan with d ≤ 2)");
    r.witness = {{"components", sks[0].components.size()}};
    return r;
  }
  std::vector<DimsMatrix> mats(gammas.size());
  parallel_for(gammas.size(), opts.jobs, [&](std::size_t i) {
    auto cx = std::make_shared<CellComplex>(build_adapted_complex(fd.d, sks[i].components));
    mats[i] = rhom_matrix(generators(cx, sks[i].components).objects);
  });
  Json mj = Json::array();
  for (const auto& m : mats) mj.push_back(dims_to_json(m));
  r.matrices["aside"] = mj;
  Json perms = Json::array();
  MatchOptions exact{false, false, 0};
  for (std::size_t i = 1; i < mats.size(); ++i) {
    auto m = match_matrices(mats[i], mats[0], exact);
    if (!m) {
      r.witness = {{"reason", "A-side Hom matrices differ"}, {"gamma_a", 0}, {"gamma_b", i}};
      return r;
    }
    perms.push_back(m->permutation);
  }
  r.pass = true;
  r.witness = {{"components", sks[0].components.size()}, {"generators", mats[0].size()}, {"permutations", perms}};
  return r;
}

}  // namespace toricmirror
