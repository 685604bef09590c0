#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "crnosc/network.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double log_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline std::vector<double> random_kappa(Rng& rng, std::size_t m) {
  std::vector<double> k(m);
  for (auto& v : k) v = log_uniform(rng, 0.1, 10);
  return k;
}

inline crnosc::Rational random_rational(Rng& rng, long lo = 1, long hi = 60) {
  std::uniform_int_distribution<long> p(lo, hi), q(1, 17);
  crnosc::Rational r(p(rng), q(rng));
  r.canonicalize();
  return r;
}

/// Random network with n species and m reactions, source molecularity at most
/// max_source and target molecularity at most max_target.
inline crnosc::ReactionNetwork random_network(Rng& rng, std::size_t n, std::size_t m, int max_source = 2,
                                              int max_target = 3) {
  auto complex = [&](int max_mol) {
    std::vector<std::int64_t> c(n, 0);
    std::uniform_int_distribution<int> mol(0, max_mol);
    std::uniform_int_distribution<std::size_t> sp(0, n - 1);
    for (int k = mol(rng); k > 0; --k) ++c[sp(rng)];
    return c;
  };
  while (true) {
    crnosc::IntMatrix src(n, m), st(n, m);
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      auto a = complex(max_source), b = complex(max_target);
      if (a == b) ok = false;
      for (std::size_t i = 0; i < n; ++i) {
        src(i, j) = a[i];
        st(i, j) = b[i] - a[i];
      }
    }
    if (!ok) continue;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(crnosc::generic_species_name(i));
    return {names, src, st};
  }
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace testing
