#pragma once

// Seeded generator of random fan data for property tests.

#include "toricmirror/fan.hpp"
#include "toricmirror/linalg.hpp"

#include <random>

namespace corpus {

using toricmirror::FanData;
using toricmirror::IntMatrix;
using toricmirror::Subset;

inline IntMatrix random_rays(std::mt19937& rng, std::size_t d, std::size_t n) {
  std::uniform_int_distribution<int> entry(-2, 2);
  while (true) {
    IntMatrix f(d, n);
    bool zero_ray = false;
    for (std::size_t i = 0; i < n; ++i) {
      bool all_zero = true;
      for (std::size_t r = 0; r < d; ++r) {
        f(r, i) = entry(rng);
        all_zero = all_zero && f(r, i) == 0;
      }
      zero_ray = zero_ray || all_zero;
    }
    if (!zero_ray && toricmirror::rank(f) == d) return f;
  }
}

/// Random fan data passing validate(): n <= 6, d <= 3.
inline FanData random_valid_fan(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  while (true) {
    const std::size_t d = dim(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(d, 6)(rng);
    FanData fd;
    fd.name = "random";
    fd.n = n;
    fd.d = d;
    fd.f = random_rays(rng, d, n);
    std::uniform_int_distribution<Subset> pick(1, (Subset{1} << n) - 1);
    const int tries = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int t = 0; t < tries; ++t) {
      Subset s = pick(rng);
      if (toricmirror::rank(fd.columns(s)) == toricmirror::subset_size(s)) fd.strata.push_back(s);
    }
    for (std::size_t i = 0; i < n; ++i) fd.strata.push_back(Subset{1} << i);
    toricmirror::complete_downward_closure(fd);
    if (toricmirror::validate(fd).valid()) return fd;
  }
}

/// Structurally valid but non-simplicial: one stratum has dependent rays.
inline FanData random_dependent_fan(std::mt19937& rng) {
  while (true) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(d + 1, 6)(rng);
    FanData fd;
    fd.name = "dependent";
    fd.n = n;
    fd.d = d;
    fd.f = random_rays(rng, d, n);
    std::uniform_int_distribution<Subset> pick(1, (Subset{1} << n) - 1);
    Subset s = pick(rng);
    if (toricmirror::rank(fd.columns(s)) == toricmirror::subset_size(s)) continue;
    fd.strata.push_back(s);
    for (std::size_t i = 0; i < n; ++i) fd.strata.push_back(Subset{1} << i);
    toricmirror::complete_downward_closure(fd);
    if (toricmirror::validate(fd).structurally_valid()) return fd;
  }
}

}  // namespace corpus
