#pragma once

#include <optional>
#include <vector>

#include "crnosc/equilibria.hpp"
#include "crnosc/network.hpp"

namespace crnosc {

RealMatrix jacobian_at(const MassActionSystem& sys, const std::vector<double>& x);
/// Exact; requires sys.exact().
RatMatrix jacobian_at(const MassActionSystem& sys, const std::vector<Rational>& x);

template <class T>
Matrix<T> jacobian_at(const ReactionNetwork& net, const std::vector<T>& kappa, const std::vector<T>& x) {
  const std::size_t n = net.num_species();
  Matrix<T> jac(n, n, T(0));
  for (std::size_t j = 0; j < net.num_reactions(); ++j)
    for (std::size_t k = 0; k < n; ++k) {
      auto a = net.source()(k, j);
      if (a == 0) continue;
      T dr = T(static_cast<long>(a)) * kappa[j];
      for (std::size_t i = 0; i < n; ++i) dr *= detail::ipow(x[i], net.source()(i, j) - (i == k ? 1 : 0));
      for (std::size_t i = 0; i < n; ++i) {
        auto c = net.stoich()(i, j);
        if (c != 0) jac(i, k) += T(static_cast<long>(c)) * dr;
      }
    }
  return jac;
}

struct ReducedJacobian {
  std::vector<std::size_t> rows;  // basis species
  RatMatrix gamma_tilde;          // Gamma = gamma_tilde Gamma[rows, :]
  RealMatrix matrix;              // J[rows, :] gamma_tilde
  double det = 0;
  double trace = 0;
  std::optional<Rational> det_exact;
  std::optional<Rational> trace_exact;
};

/// Requires rank 2. Uses the first independent rows of Gamma unless rows is given.
ReducedJacobian reduced_jacobian(const MassActionSystem& sys, const EquilibriumRecord& eq,
                                 std::optional<std::vector<std::size_t>> rows = std::nullopt);

/// Closed-form Cauchy-Binet sum; requires m = 3 and rank 2.
double reduced_det_formula(const MassActionSystem& sys, const EquilibriumRecord& eq);
std::optional<Rational> reduced_det_formula_exact(const MassActionSystem& sys, const EquilibriumRecord& eq);

/// mu (1/x sum a_i c_i u_i + 1/y sum b_i d_i u_i); requires a (2,3,2) network.
double planar_trace(const MassActionSystem& sys, const EquilibriumRecord& eq);
std::optional<Rational> planar_trace_exact(const MassActionSystem& sys, const EquilibriumRecord& eq);

bool is_saddle(const ReducedJacobian& rj);

}  // namespace crnosc
