#include "toricmirror/cox_coh.hpp"

#include "toricmirror/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace toricmirror {

DivisorClass divisor_class(const FanData& fd, const IntVector& lift) {
  if (lift.size() != fd.n) throw DimensionMismatch("divisor lift has wrong length");
  return {lift, CharacterSequence(fd.f).classify(lift)};
}

long CohomologyTable::euler_characteristic() const {
  long chi = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(dims[i]);
  return chi;
}

std::string CohomologyTable::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ')';
  return os.str();
}

IntVector canonical_lift(const FanData& fd) { return IntVector(fd.n, Integer(-1)); }

DegreeBox search_box(const FanData& fd, const IntVector& lift, long padding) {
  DegreeBox box{IntVector(fd.d), IntVector(fd.d)};
  bool any = false;
  std::vector<std::size_t> pick(fd.d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == fd.d) {
      RatMatrix a(fd.d, fd.d);
      RatVector b(fd.d);
      for (std::size_t k = 0; k < fd.d; ++k) {
        for (std::size_t r = 0; r < fd.d; ++r) a(k, r) = fd.f(r, pick[k]);
        b[k] = -lift[pick[k]];
      }
      if (rank(a) < fd.d) return;
      auto m = solve(a, b);
      for (std::size_t r = 0; r < fd.d; ++r) {
        Integer lo = floor_of((*m)[r]), hi = ceil_of((*m)[r]);
        if (!any || lo < box.lo[r]) box.lo[r] = lo;
        if (!any || hi > box.hi[r]) box.hi[r] = hi;
      }
      any = true;
      return;
    }
    for (std::size_t i = start; i < fd.n; ++i) {
      pick[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  for (std::size_t r = 0; r < fd.d; ++r) {
    box.lo[r] -= padding;
    box.hi[r] += padding;
  }
  return box;
}

namespace {

/// Reduced cohomology h~^{-1} .. h~^{d-1} of the subcomplex of strata inside `mask`.
class ChamberCohomology {
 public:
  explicit ChamberCohomology(const FanData& fd) : fd_(fd) {}

  const std::vector<std::size_t>& reduced(Subset mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<std::vector<Subset>> by_size(fd_.d + 2);
    for (Subset s : fd_.strata)
      if ((s & mask) == s && subset_size(s) <= fd_.d) by_size[subset_size(s)].push_back(s);
    // coboundary ranks: delta_k maps faces of size k+1 to faces of size k+2
    std::vector<std::size_t> delta_rank(fd_.d + 1, 0);
    for (std::size_t k = 0; k + 1 < by_size.size(); ++k) {
      const auto& lo = by_size[k];
      const auto& hi = by_size[k + 1];
      if (lo.empty() || hi.empty()) continue;
      RatMatrix m(hi.size(), lo.size());
      for (std::size_t r = 0; r < hi.size(); ++r) {
        auto idx = subset_indices(hi[r]);
        for (std::size_t j = 0; j < idx.size(); ++j) {
          Subset face = hi[r] & ~(Subset{1} << idx[j]);
          auto pos = std::lower_bound(lo.begin(), lo.end(), face) - lo.begin();
          m(r, pos) = (j % 2 == 0) ? 1 : -1;
        }
      }
      delta_rank[k] = rank(m);
    }
    std::vector<std::size_t> h(fd_.d + 1, 0);
    for (std::size_t k = 0; k <= fd_.d; ++k) {
      std::size_t prev = k == 0 ? 0 : delta_rank[k - 1];
      h[k] = by_size[k].size() - delta_rank[k] - prev;
    }
    return memo_.emplace(mask, std::move(h)).first->second;
  }

 private:
  const FanData& fd_;
  std::map<Subset, std::vector<std::size_t>> memo_;
};

void require_simplicial_valid(const FanData& fd) {
  require_structural(fd);
  if (!is_simplicial(fd)) throw NotSimplicial(fd.name.empty() ? "fan is not simplicial" : fd.name);
  require_valid(fd);
}

CohomologyTable chamber_sum(const FanData& fd, const IntVector& lift, const CohomologyOptions& opts, bool complete,
                            ChamberCohomology& cache) {
  if (lift.size() != fd.n) throw DimensionMismatch("divisor lift has wrong length");
  if (!complete && !opts.box) throw NotComplete("non-complete fan needs an explicit degree box");
  DegreeBox box = opts.box ? *opts.box : search_box(fd, lift, 1);

  CohomologyTable table;
  table.dims.assign(fd.d + 1, 0);
  table.truncated = !complete;
  IntVector m = box.lo;
  for (std::size_t r = 0; r < fd.d; ++r)
    if (box.lo[r] > box.hi[r]) return table;
  while (true) {
    Subset mask = 0;
    for (std::size_t i = 0; i < fd.n; ++i) {
      Integer pairing = 0;
      for (std::size_t r = 0; r < fd.d; ++r) pairing += m[r] * fd.f(r, i);
      if (pairing < -lift[i]) mask |= Subset{1} << i;
    }
    const auto& red = cache.reduced(mask);
    bool nonzero = false;
    for (std::size_t i = 0; i <= fd.d; ++i) {
      table.dims[i] += red[i];
      nonzero = nonzero || red[i] != 0;
    }
    if (opts.keep_per_degree && nonzero) table.per_degree[m] = red;
    std::size_t r = 0;
    for (; r < fd.d; ++r) {
      if (m[r] < box.hi[r]) {
        ++m[r];
        break;
      }
      m[r] = box.lo[r];
    }
    if (r == fd.d) break;
  }
  return table;
}

}  // namespace

CohomologyTable cohomology_dims(const FanData& fd, const IntVector& lift, const CohomologyOptions& opts) {
  require_simplicial_valid(fd);
  ChamberCohomology cache(fd);
  return chamber_sum(fd, lift, opts, is_complete(fd), cache);
}

CohomologyTable hom_dims(const FanData& fd, const IntVector& d1, const IntVector& d2, const CohomologyOptions& opts) {
  if (d1.size() != fd.n || d2.size() != fd.n) throw DimensionMismatch("divisor lift has wrong length");
  IntVector diff(fd.n);
  for (std::size_t i = 0; i < fd.n; ++i) diff[i] = d2[i] - d1[i];
  return cohomology_dims(fd, diff, opts);
}

std::vector<std::vector<CohomologyTable>> hom_matrix(const FanData& fd, const std::vector<IntVector>& classes,
                                                     const CohomologyOptions& opts) {
  require_simplicial_valid(fd);
  const bool complete = is_complete(fd);
  ChamberCohomology cache(fd);
  std::vector<std::vector<CohomologyTable>> out(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j) {
      if (classes[i].size() != fd.n || classes[j].size() != fd.n)
        throw DimensionMismatch("divisor lift has wrong length");
      IntVector diff(fd.n);
      for (std::size_t k = 0; k < fd.n; ++k) diff[k] = classes[j][k] - classes[i][k];
      out[i].push_back(chamber_sum(fd, diff, opts, complete, cache));
    }
  return out;
}

}  // namespace toricmirror
