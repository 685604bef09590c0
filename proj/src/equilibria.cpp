#include "crnosc/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crnosc/stoich.hpp"

namespace crnosc {

RatMatrix gamma_tilde(const ReactionNetwork& net, const std::vector<std::size_t>& rows) {
  RatMatrix g = to_rational(net.stoich());
  const std::size_t r = rows.size();
  RatMatrix top(r, net.num_reactions());
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t j = 0; j < net.num_reactions(); ++j) top(a, j) = g(rows[a], j);
  RatMatrix topt = top.transpose();
  RatMatrix gt(net.num_species(), r);
  for (std::size_t i = 0; i < net.num_species(); ++i) {
    auto coef = solve_particular(topt, g.row(i));
    for (std::size_t a = 0; a < r; ++a) gt(i, a) = coef[a];
  }
  return gt;
}

namespace {

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& rows) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(rows.begin(), rows.end(), i) == rows.end()) out.push_back(i);
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

StoichiometricClass StoichiometricClass::from_conserved(const ReactionNetwork& net, const RatMatrix& w,
                                                        const std::vector<double>& values) {
  StoichiometricClass cls;
  cls.rows_ = stoich_row_basis(net);
  cls.gt_ = crnosc::gamma_tilde(net, cls.rows_);
  const std::size_t n = net.num_species();
  const std::size_t k = n - cls.rows_.size();
  if (w.rows() != k || (k > 0 && w.cols() != n) || values.size() != k)
    throw std::invalid_argument("conservation matrix has the wrong shape");
  RatMatrix wg = w * to_rational(net.stoich());
  for (const auto& q : wg.data())
    if (q != 0) throw std::invalid_argument("conservation rows are not orthogonal to the stoichiometric subspace");
  cls.w_ = w;
  cls.values_ = values;
  cls.base_.assign(n, 0.0);
  auto free = complement(n, cls.rows_);
  if (k > 0) {
    RealMatrix sub(k, k);
    RealMatrix wr = to_real(w);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) sub(a, b) = wr(a, free[b]);
    auto sol = solve(sub, values);
    for (std::size_t b = 0; b < k; ++b) cls.base_[free[b]] = sol[b];
  }
  return cls;
}

StoichiometricClass StoichiometricClass::from_conserved(const ReactionNetwork& net, const std::vector<double>& values) {
  RatMatrix w = left_kernel(to_rational(net.stoich()));
  if (w.rows() == 0) w = RatMatrix(0, net.num_species());
  return from_conserved(net, w, values);
}

StoichiometricClass StoichiometricClass::from_point(const ReactionNetwork& net, const std::vector<double>& x0) {
  if (x0.size() != net.num_species()) throw std::invalid_argument("point has the wrong dimension");
  RatMatrix w = left_kernel(to_rational(net.stoich()));
  if (w.rows() == 0) w = RatMatrix(0, net.num_species());
  std::vector<double> values = to_real(w) * x0;
  return from_conserved(net, w, values);
}

std::vector<double> StoichiometricClass::point(const std::vector<double>& s) const {
  std::vector<double> x = base_;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t a = 0; a < s.size(); ++a) x[i] += gt_(i, a).get_d() * s[a];
  return x;
}

std::vector<double> StoichiometricClass::coordinates(const std::vector<double>& x) const {
  std::vector<double> s;
  for (auto i : rows_) s.push_back(x[i]);
  return s;
}

std::vector<double> StoichiometricClass::conserved(const std::vector<double>& x) const {
  if (w_.rows() == 0) return {};
  return to_real(w_) * x;
}

EquilibriumRecord make_record(const MassActionSystem& sys, const std::vector<double>& x) {
  const auto& net = sys.network();
  EquilibriumRecord rec;
  rec.x_bar = x;
  auto rates = reaction_rates(net, sys.kappa(), x);
  rec.residual = max_abs(mass_action_rhs(sys, x));
  std::vector<double> u;
  if (net.num_reactions() == 3 && rank(net) == 2) {
    for (auto v : kernel_cross_product(net)) u.push_back(static_cast<double>(v));
  } else {
    RatMatrix k = kernel(to_rational(net.stoich()));
    if (k.cols() == 1) {
      auto p = primitive(k.col(0));
      double dot = 0;
      for (std::size_t j = 0; j < p.size(); ++j) dot += p[j].get_d() * rates[j];
      for (auto& q : p) u.push_back(dot < 0 ? -q.get_d() : q.get_d());
    } else {
      u = rates;
    }
  }
  std::size_t jmax = 0;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (std::fabs(u[j]) > std::fabs(u[jmax])) jmax = j;
  rec.u = u;
  rec.mu = u.empty() || u[jmax] == 0 ? 0.0 : rates[jmax] / u[jmax];
  return rec;
}

EquilibriumRecord planar_equilibrium(const MassActionSystem& sys) {
  const auto& net = sys.network();
  if (net.num_species() != 2 || net.num_reactions() != 3 || rank(net) != 2)
    throw PreconditionError("NotPlanar", "planar_equilibrium needs a rank-two (2,3,2) network");
  if (source_geometry(net).collinear) throw PreconditionError("SourcesCollinear", "source complexes are collinear");
  auto ui = kernel_cross_product(net);
  int s = ui[0] > 0 ? 1 : ui[0] < 0 ? -1 : 0;
  for (auto v : ui)
    if (s == 0 || (v > 0 ? 1 : v < 0 ? -1 : 0) != s)
      throw PreconditionError("NoPositiveEquilibrium", "network is dynamically trivial");
  // a_i log x + b_i log y - log|mu| = log|u_i| - log kappa_i
  RealMatrix a(3, 3);
  std::vector<double> rhs(3);
  for (std::size_t i = 0; i < 3; ++i) {
    a(i, 0) = static_cast<double>(net.source()(0, i));
    a(i, 1) = static_cast<double>(net.source()(1, i));
    a(i, 2) = -1.0;
    rhs[i] = std::log(std::fabs(static_cast<double>(ui[i]))) - std::log(sys.kappa()[i]);
  }
  auto sol = solve(a, rhs);
  std::vector<double> x = {std::exp(sol[0]), std::exp(sol[1])};
  EquilibriumRecord rec = make_record(sys, x);
  rec.mu = s * std::exp(sol[2]);
  if (sys.exact()) {
    std::vector<Rational> xq = {approximate(x[0], 1000000), approximate(x[1], 1000000)};
    if (xq[0] > 0 && xq[1] > 0) {
      auto kq = sys.exact_kappa();
      auto rates = reaction_rates(net, kq, xq);
      Rational mu = rates[0] / Rational(static_cast<long>(ui[0]));
      bool ok = true;
      for (std::size_t i = 1; i < 3; ++i) ok = ok && rates[i] == mu * Rational(static_cast<long>(ui[i]));
      if (ok) {
        rec.x_exact = xq;
        rec.mu_exact = mu;
        rec.x_bar = to_doubles(xq);
        rec.mu = mu.get_d();
        rec.residual = 0;
      }
    }
  }
  return rec;
}

namespace {

struct Restricted {
  const MassActionSystem& sys;
  const StoichiometricClass& cls;

  std::vector<double> value(const std::vector<double>& x) const {
    auto f = mass_action_rhs(sys, x);
    std::vector<double> out;
    for (auto i : cls.basis_rows()) out.push_back(f[i]);
    return out;
  }

  // J[R,:] Gamma~
  RealMatrix jacobian(const std::vector<double>& x) const {
    const auto& net = sys.network();
    const std::size_t n = net.num_species(), r = cls.dimension();
    RealMatrix jfull(n, n, 0.0);
    for (std::size_t j = 0; j < net.num_reactions(); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto a = net.source()(k, j);
        if (a == 0) continue;
        double dr = static_cast<double>(a) * sys.kappa()[j];
        for (std::size_t i = 0; i < n; ++i) dr *= detail::ipow(x[i], net.source()(i, j) - (i == k ? 1 : 0));
        for (std::size_t i = 0; i < n; ++i) jfull(i, k) += static_cast<double>(net.stoich()(i, j)) * dr;
      }
    RealMatrix out(r, r, 0.0);
    RealMatrix gt = cls.basis();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t k = 0; k < n; ++k) out(a, b) += jfull(cls.basis_rows()[a], k) * gt(k, b);
    return out;
  }

  // Residual of each basis row against its gross flux; rejects near-boundary
  // points where every rate vanishes.
  bool balanced(const std::vector<double>& x, double rel) const {
    const auto& net = sys.network();
    auto rates = reaction_rates(net, sys.kappa(), x);
    auto f = mass_action_rhs(sys, x);
    for (auto i : cls.basis_rows()) {
      double gross = 0;
      for (std::size_t j = 0; j < net.num_reactions(); ++j)
        gross += std::fabs(static_cast<double>(net.stoich()(i, j))) * rates[j];
      if (std::fabs(f[i]) > rel * gross) return false;
    }
    return true;
  }

  double scale(const std::vector<double>& x) const {
    auto rates = reaction_rates(sys.network(), sys.kappa(), x);
    return std::max(1.0, max_abs(rates));
  }
};

bool positive(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v > 0 && std::isfinite(v); });
}

double frob(const RealMatrix& m) {
  double s = 0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

std::optional<std::vector<double>> newton(const Restricted& f, std::vector<double> s, const SolverOptions& opts) {
  auto x = f.cls.point(s);
  if (!positive(x)) return std::nullopt;
  auto val = f.value(x);
  double res = max_abs(val);
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    if (res <= 1e-3 * opts.tol * f.scale(x)) break;
    std::vector<double> step;
    try {
      auto jac = f.jacobian(x);
      std::vector<double> neg(val.size());
      for (std::size_t a = 0; a < val.size(); ++a) neg[a] = -val[a];
      step = solve(jac, neg);
    } catch (const std::domain_error&) {
      break;
    }
    double lambda = 1.0;
    bool moved = false;
    for (int h = 0; h < 40; ++h, lambda *= 0.5) {
      std::vector<double> s2 = s;
      for (std::size_t a = 0; a < s.size(); ++a) s2[a] += lambda * step[a];
      auto x2 = f.cls.point(s2);
      if (!positive(x2)) continue;
      auto v2 = f.value(x2);
      double r2 = max_abs(v2);
      if (r2 < res || (h > 30 && r2 <= res)) {
        s = s2;
        x = x2;
        val = v2;
        res = r2;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (res <= opts.tol * f.scale(x) && f.balanced(x, 1e-6)) return x;
  return std::nullopt;
}

// At a double root Newton contracts by one half per step; doubling the step
// restores fast convergence.
std::vector<double> refine_double_root(const Restricted& f, std::vector<double> x) {
  auto s = f.cls.coordinates(x);
  double res = max_abs(f.value(x));
  for (int it = 0; it < 20 && res > 0; ++it) {
    std::vector<double> step;
    try {
      auto val = f.value(x);
      for (auto& v : val) v = -v;
      step = solve(f.jacobian(x), val);
    } catch (const std::domain_error&) {
      break;
    }
    bool moved = false;
    for (double lambda : {2.0, 1.0, 0.5}) {
      std::vector<double> s2 = s;
      for (std::size_t a = 0; a < s.size(); ++a) s2[a] += lambda * step[a];
      auto x2 = f.cls.point(s2);
      if (!positive(x2)) continue;
      double r2 = max_abs(f.value(x2));
      if (r2 < res) {
        s = s2;
        x = x2;
        res = r2;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return x;
}

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  double m = std::max({1.0, max_abs(a), max_abs(b)});
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol * m) return false;
  return true;
}

}  // namespace

std::vector<EquilibriumRecord> equilibria_on_class(const MassActionSystem& sys, const StoichiometricClass& cls,
                                                   const SolverOptions& opts) {
  const std::size_t r = cls.dimension();
  if (r == 0) return {};
  Restricted f{sys, cls};
  std::vector<std::vector<double>> roots;
  std::vector<std::size_t> idx(r, 0);
  const std::size_t k = std::max<std::size_t>(opts.starts_per_dim, 1);
  const double llo = std::log(opts.lo), lhi = std::log(opts.hi);
  while (true) {
    std::vector<double> s(r);
    for (std::size_t a = 0; a < r; ++a)
      s[a] = std::exp(k == 1 ? 0.5 * (llo + lhi) : llo + (lhi - llo) * static_cast<double>(idx[a]) / (k - 1));
    if (auto x = newton(f, s, opts)) {
      bool dup = std::any_of(roots.begin(), roots.end(), [&](const auto& y) { return close(*x, y, opts.dedup_tol); });
      if (!dup) roots.push_back(*x);
    }
    std::size_t a = 0;
    while (a < r && ++idx[a] == k) idx[a++] = 0;
    if (a == r) break;
  }
  std::vector<EquilibriumRecord> out;
  for (const auto& x : roots) {
    auto rec = make_record(sys, x);
    auto jac = f.jacobian(x);
    double nrm = frob(jac);
    rec.degenerate = std::fabs(determinant(jac)) < 1e-6 * std::pow(std::max(nrm, 1e-300), static_cast<double>(r));
    rec.class_constant = cls.conserved(x);
    out.push_back(std::move(rec));
  }
  // Near a degenerate root Newton converges slowly; merge its satellites.
  std::vector<EquilibriumRecord> merged;
  for (auto& rec : out) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const EquilibriumRecord& m) {
      return (m.degenerate || rec.degenerate) && close(m.x_bar, rec.x_bar, 10 * std::sqrt(opts.tol));
    });
    if (it == merged.end()) {
      merged.push_back(std::move(rec));
    } else {
      it->degenerate = true;
      if (rec.residual < it->residual) {
        rec.degenerate = true;
        *it = std::move(rec);
      }
    }
  }
  for (auto& rec : merged) {
    if (!rec.degenerate) continue;
    auto x = refine_double_root(f, rec.x_bar);
    auto better = make_record(sys, x);
    better.degenerate = true;
    better.class_constant = cls.conserved(x);
    rec = std::move(better);
  }
  std::sort(merged.begin(), merged.end(),
            [](const EquilibriumRecord& a, const EquilibriumRecord& b) { return a.x_bar < b.x_bar; });
  return merged;
}

namespace {

template <class T>
std::vector<T> ray_direction(const FamilyTag& tag, const std::vector<T>& kappa) {
  if (kappa.size() != tag.order.size()) throw std::invalid_argument("rate vector has the wrong length");
  std::vector<T> k;
  for (auto j : tag.order) k.push_back(kappa[j]);
  const T d(static_cast<long>(tag.d)), c(static_cast<long>(tag.c));
  std::vector<T> dir;
  if (tag.kind == FamilyKind::LiftedLVA)
    dir = {T(1), k[0] / k[1], k[1] * d / k[2]};
  else if (tag.kind == FamilyKind::ThreeSpeciesFamily)
    dir = {c * d * k[2], c * k[0], k[1]};
  else
    throw PreconditionError("UnsupportedFamily", "no equilibrium ray for " + tag.name());
  std::vector<T> out(dir.size());
  for (std::size_t i = 0; i < dir.size(); ++i) out[tag.perm[i]] = dir[i];
  return out;
}

}  // namespace

EquilibriumRay equilibrium_ray(const FamilyTag& tag, const std::vector<double>& kappa) {
  EquilibriumRay ray;
  ray.direction = ray_direction(tag, kappa);
  return ray;
}

EquilibriumRay equilibrium_ray(const FamilyTag& tag, const std::vector<Rational>& kappa) {
  EquilibriumRay ray;
  ray.direction_exact = ray_direction(tag, kappa);
  ray.direction = to_doubles(*ray.direction_exact);
  return ray;
}

}  // namespace crnosc
