#include "crnosc/jacobian.hpp"

#include <cmath>

#include "crnosc/stoich.hpp"

namespace crnosc {

RealMatrix jacobian_at(const MassActionSystem& sys, const std::vector<double>& x) {
  if (x.size() != sys.network().num_species()) throw std::invalid_argument("jacobian_at: dimension mismatch");
  return jacobian_at(sys.network(), sys.kappa(), x);
}

RatMatrix jacobian_at(const MassActionSystem& sys, const std::vector<Rational>& x) {
  if (x.size() != sys.network().num_species()) throw std::invalid_argument("jacobian_at: dimension mismatch");
  return jacobian_at(sys.network(), sys.exact_kappa(), x);
}

namespace {

void require_rank_two(const ReactionNetwork& net) {
  if (rank(net) != 2) throw PreconditionError("RankNotTwo", "reduced Jacobian needs a rank-two network");
}

template <class T>
Matrix<T> reduce(const Matrix<T>& jac, const std::vector<std::size_t>& rows, const Matrix<T>& gt) {
  const std::size_t r = rows.size();
  Matrix<T> out(r, r, T(0));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t k = 0; k < jac.cols(); ++k) out(a, b) += jac(rows[a], k) * gt(k, b);
  return out;
}

// Exact mu when the equilibrium is known exactly: rate_j / u_j for the largest |u_j|.
std::optional<Rational> exact_mu(const MassActionSystem& sys, const EquilibriumRecord& eq,
                                 const std::vector<std::int64_t>& u) {
  if (eq.mu_exact) return eq.mu_exact;
  if (!eq.x_exact || !sys.exact()) return std::nullopt;
  auto rates = reaction_rates(sys.network(), sys.exact_kappa(), *eq.x_exact);
  std::size_t jmax = 0;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (std::llabs(u[j]) > std::llabs(u[jmax])) jmax = j;
  if (u[jmax] == 0) return std::nullopt;
  return Rational(rates[jmax] / Rational(static_cast<long>(u[jmax])));
}

}  // namespace

ReducedJacobian reduced_jacobian(const MassActionSystem& sys, const EquilibriumRecord& eq,
                                 std::optional<std::vector<std::size_t>> rows) {
  const auto& net = sys.network();
  require_rank_two(net);
  ReducedJacobian rj;
  rj.rows = rows ? *rows : stoich_row_basis(net);
  if (rj.rows.size() != 2)
    throw PreconditionError("RankNotTwo", "row basis must have two rows");
  {
    RatMatrix sub(2, net.num_reactions());
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t j = 0; j < net.num_reactions(); ++j) sub(a, j) = net.stoich()(rj.rows[a], j);
    if (rank(sub) != 2) throw std::invalid_argument("rows do not form a basis of the row space");
  }
  rj.gamma_tilde = gamma_tilde(net, rj.rows);
  if (eq.x_exact && sys.exact()) {
    auto m = reduce(jacobian_at(sys, *eq.x_exact), rj.rows, rj.gamma_tilde);
    rj.det_exact = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    rj.trace_exact = m(0, 0) + m(1, 1);
    rj.matrix = to_real(m);
    rj.det = rj.det_exact->get_d();
    rj.trace = rj.trace_exact->get_d();
  } else {
    rj.matrix = reduce(jacobian_at(sys, eq.x_bar), rj.rows, to_real(rj.gamma_tilde));
    const auto& m = rj.matrix;
    rj.det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    rj.trace = m(0, 0) + m(1, 1);
  }
  return rj;
}

namespace {

template <class T>
T det_formula(const ReactionNetwork& net, const std::vector<T>& x, const T& mu, const Matrix<T>& gt,
              const std::vector<std::int64_t>& u) {
  const auto geo = source_geometry(net);
  T absmu = mu < 0 ? T(-mu) : mu;
  T pu = T(static_cast<long>(std::llabs(u[0] * u[1] * u[2])));
  T sum = T(0);
  for (const auto& [pair, scalar] : geo.pair_scalars) {
    if (scalar == 0) continue;
    auto [i, j] = pair;
    T minor = gt(i, 0) * gt(j, 1) - gt(i, 1) * gt(j, 0);
    sum += minor / (x[i] * x[j]) * T(static_cast<long>(scalar));
  }
  return mu * absmu * pu * sum;
}

void require_three_rank_two(const ReactionNetwork& net) {
  if (net.num_reactions() != 3) throw PreconditionError("NotThreeReactions", "formula needs m = 3");
  require_rank_two(net);
}

}  // namespace

double reduced_det_formula(const MassActionSystem& sys, const EquilibriumRecord& eq) {
  const auto& net = sys.network();
  require_three_rank_two(net);
  auto rows = stoich_row_basis(net);
  auto u = kernel_cross_product(net, rows[0], rows[1]);
  if (auto q = reduced_det_formula_exact(sys, eq)) return q->get_d();
  return det_formula(net, eq.x_bar, eq.mu, to_real(gamma_tilde(net, rows)), u);
}

std::optional<Rational> reduced_det_formula_exact(const MassActionSystem& sys, const EquilibriumRecord& eq) {
  const auto& net = sys.network();
  require_three_rank_two(net);
  auto rows = stoich_row_basis(net);
  auto u = kernel_cross_product(net, rows[0], rows[1]);
  auto mu = exact_mu(sys, eq, u);
  if (!mu || !eq.x_exact) return std::nullopt;
  return det_formula(net, *eq.x_exact, *mu, gamma_tilde(net, rows), u);
}

namespace {

template <class T>
T trace_formula(const ReactionNetwork& net, const std::vector<T>& x, const T& mu, const std::vector<std::int64_t>& u) {
  T sx = T(0), sy = T(0);
  for (std::size_t i = 0; i < 3; ++i) {
    sx += T(static_cast<long>(net.source()(0, i) * net.stoich()(0, i) * u[i]));
    sy += T(static_cast<long>(net.source()(1, i) * net.stoich()(1, i) * u[i]));
  }
  return mu * (sx / x[0] + sy / x[1]);
}

void require_planar(const ReactionNetwork& net) {
  if (net.num_species() != 2 || net.num_reactions() != 3 || rank(net) != 2)
    throw PreconditionError("NotPlanar", "planar trace needs a rank-two (2,3,2) network");
}

}  // namespace

double planar_trace(const MassActionSystem& sys, const EquilibriumRecord& eq) {
  const auto& net = sys.network();
  require_planar(net);
  if (auto q = planar_trace_exact(sys, eq)) return q->get_d();
  return trace_formula(net, eq.x_bar, eq.mu, kernel_cross_product(net, 0, 1));
}

std::optional<Rational> planar_trace_exact(const MassActionSystem& sys, const EquilibriumRecord& eq) {
  const auto& net = sys.network();
  require_planar(net);
  auto u = kernel_cross_product(net, 0, 1);
  auto mu = exact_mu(sys, eq, u);
  if (!mu || !eq.x_exact) return std::nullopt;
  return trace_formula(net, *eq.x_exact, *mu, u);
}

bool is_saddle(const ReducedJacobian& rj) {
  if (rj.det_exact) return *rj.det_exact < 0;
  return rj.det < 0;
}

}  // namespace crnosc
