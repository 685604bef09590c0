#include "crnosc/stoich.hpp"

#include <algorithm>
#include <numeric>

namespace crnosc {

std::size_t rank(const ReactionNetwork& net) { return rank(net.stoich()); }

std::vector<std::size_t> stoich_row_basis(const ReactionNetwork& net) {
  return row_basis(to_rational(net.stoich()));
}

std::vector<std::int64_t> kernel_cross_product(const ReactionNetwork& net, std::size_t rc, std::size_t rd) {
  if (net.num_reactions() != 3) throw PreconditionError("NotThreeReactions", "u = c x d needs m = 3");
  const auto& g = net.stoich();
  std::int64_t c1 = g(rc, 0), c2 = g(rc, 1), c3 = g(rc, 2);
  std::int64_t d1 = g(rd, 0), d2 = g(rd, 1), d3 = g(rd, 2);
  return {c2 * d3 - c3 * d2, c3 * d1 - c1 * d3, c1 * d2 - c2 * d1};
}

std::vector<std::int64_t> kernel_cross_product(const ReactionNetwork& net) {
  auto basis = stoich_row_basis(net);
  if (basis.size() != 2 || net.num_reactions() != 3)
    throw PreconditionError("RankNotTwo", "u = c x d needs a rank-two three-reaction network");
  return kernel_cross_product(net, basis[0], basis[1]);
}

namespace {

struct FMRow {
  std::vector<Rational> coef;  // over remaining variables
  Rational rhs;                // coef . t >= rhs
  std::vector<Rational> mult;  // nonnegative combination of the original rows
};

void normalize(FMRow& r) {
  Rational scale = 0;
  for (const auto& c : r.coef)
    if (c != 0) {
      scale = abs(c);
      break;
    }
  if (scale == 0) return;
  for (auto& c : r.coef) c /= scale;
  r.rhs /= scale;
  for (auto& c : r.mult) c /= scale;
}

std::vector<Rational> dual_from_slack(const ReactionNetwork& net, const std::vector<Rational>& s) {
  // Solve Gamma^T w = s; s lies in im Gamma^T by construction.
  RatMatrix gt = to_rational(net.stoich()).transpose();
  auto w = solve_particular(gt, s);
  return primitive(w);
}

}  // namespace

NontrivialityCertificate nontrivial_by_fourier_motzkin(const ReactionNetwork& net) {
  const std::size_t m = net.num_reactions();
  if (m > 8) throw PreconditionError("TooManyReactions", "Fourier-Motzkin limited to m <= 8");
  NontrivialityCertificate cert;
  cert.method = "fourier_motzkin";
  if (m == 0) {
    cert.nontrivial = true;
    cert.positive_kernel_vector = std::vector<Rational>{};
    return cert;
  }
  // Parametrize ker Gamma = K t and decide whether K t >= 1 is feasible.
  RatMatrix g = to_rational(net.stoich());
  RatMatrix k = kernel(g);
  const std::size_t p = k.cols();
  if (p == 0) {
    cert.nontrivial = false;
    cert.stiemke_dual = dual_from_slack(net, std::vector<Rational>(m, Rational(1)));
    return cert;
  }
  std::vector<FMRow> rows;
  for (std::size_t i = 0; i < m; ++i) {
    FMRow r{k.row(i), Rational(1), std::vector<Rational>(m, Rational(0))};
    r.mult[i] = 1;
    rows.push_back(std::move(r));
  }
  // Eliminate variables from the last one; keep the intermediate systems for back substitution.
  std::vector<std::vector<FMRow>> stages;
  for (std::size_t var = p; var-- > 0;) {
    stages.push_back(rows);
    std::vector<FMRow> pos, neg, next;
    for (auto& r : rows) {
      int s = sgn(r.coef[var]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else next.push_back(r);
    }
    for (const auto& a : pos)
      for (const auto& b : neg) {
        Rational fa = -b.coef[var], fb = a.coef[var];
        FMRow c{std::vector<Rational>(var), fa * a.rhs + fb * b.rhs, std::vector<Rational>(m)};
        for (std::size_t q = 0; q < var; ++q) c.coef[q] = fa * a.coef[q] + fb * b.coef[q];
        for (std::size_t q = 0; q < m; ++q) c.mult[q] = fa * a.mult[q] + fb * b.mult[q];
        normalize(c);
        next.push_back(std::move(c));
      }
    for (auto& r : next) r.coef.resize(var);
    std::vector<FMRow> dedup;
    for (auto& r : next) {
      bool dup = std::any_of(dedup.begin(), dedup.end(), [&](const FMRow& d) {
        return d.coef == r.coef && d.rhs == r.rhs && d.mult == r.mult;
      });
      if (!dup) dedup.push_back(std::move(r));
    }
    rows = std::move(dedup);
  }
  // rows are now 0 >= rhs.
  std::vector<Rational> slack(m, Rational(0));
  bool infeasible = false;
  for (const auto& r : rows)
    if (r.rhs > 0) {
      infeasible = true;
      for (std::size_t q = 0; q < m; ++q) slack[q] += r.mult[q];
    }
  if (infeasible) {
    cert.nontrivial = false;
    // slack = sum lambda_i e_i with lambda^T K = 0, so slack is in im Gamma^T.
    cert.stiemke_dual = dual_from_slack(net, slack);
    return cert;
  }
  // Back substitution: each variable takes its largest lower bound.
  std::vector<Rational> t;
  for (std::size_t var = 0; var < p; ++var) {
    const auto& stage = stages[p - 1 - var];
    std::optional<Rational> lo, hi;
    for (const auto& r : stage) {
      Rational rest = r.rhs;
      for (std::size_t q = 0; q < var; ++q) rest -= r.coef[q] * t[q];
      const Rational& a = r.coef[var];
      if (a > 0) {
        Rational b = rest / a;
        if (!lo || b > *lo) lo = b;
      } else if (a < 0) {
        Rational b = rest / a;
        if (!hi || b < *hi) hi = b;
      }
    }
    t.push_back(lo ? *lo : (hi ? *hi : Rational(0)));
  }
  std::vector<Rational> v(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t q = 0; q < p; ++q) v[i] += k(i, q) * t[q];
  cert.nontrivial = true;
  cert.positive_kernel_vector = primitive(v);
  return cert;
}

NontrivialityCertificate nontrivial_by_cross_product(const ReactionNetwork& net) {
  auto u = kernel_cross_product(net);
  bool pos = std::all_of(u.begin(), u.end(), [](auto v) { return v > 0; });
  bool neg = std::all_of(u.begin(), u.end(), [](auto v) { return v < 0; });
  if (pos || neg) {
    NontrivialityCertificate cert;
    cert.method = "cross_product";
    cert.nontrivial = true;
    std::vector<Rational> v;
    for (auto x : u) v.emplace_back(static_cast<long>(pos ? x : -x));
    cert.positive_kernel_vector = primitive(v);
    return cert;
  }
  auto cert = nontrivial_by_fourier_motzkin(net);
  cert.method = "cross_product";
  return cert;
}

NontrivialityCertificate dynamically_nontrivial(const ReactionNetwork& net) {
  if (net.num_reactions() == 3 && rank(net) == 2) return nontrivial_by_cross_product(net);
  return nontrivial_by_fourier_motzkin(net);
}

bool verify_certificate(const ReactionNetwork& net, const NontrivialityCertificate& cert) {
  RatMatrix g = to_rational(net.stoich());
  if (cert.nontrivial) {
    if (!cert.positive_kernel_vector || cert.stiemke_dual) return false;
    const auto& v = *cert.positive_kernel_vector;
    if (v.size() != net.num_reactions()) return false;
    if (std::any_of(v.begin(), v.end(), [](const Rational& q) { return q <= 0; })) return false;
    auto gv = g * v;
    return std::all_of(gv.begin(), gv.end(), [](const Rational& q) { return q == 0; });
  }
  if (!cert.stiemke_dual || cert.positive_kernel_vector) return false;
  const auto& w = *cert.stiemke_dual;
  if (w.size() != net.num_species()) return false;
  auto s = g.transpose() * w;
  bool strict = false;
  for (const auto& q : s) {
    if (q < 0) return false;
    strict = strict || q > 0;
  }
  return strict;
}

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::Positive: return "positive";
    case Orientation::Negative: return "negative";
    case Orientation::Degenerate: return "degenerate";
  }
  return "?";
}

SourceGeometry source_geometry(const ReactionNetwork& net) {
  if (net.num_reactions() != 3) throw PreconditionError("NotThreeReactions", "source geometry needs m = 3");
  const auto& a = net.source();
  const std::size_t n = net.num_species();
  SourceGeometry g;
  bool all_zero = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // 1 . (a_i x a_j) = det [1 1 1; a_i; a_j]
      std::int64_t s = (a(i, 1) * a(j, 2) - a(i, 2) * a(j, 1)) - (a(i, 0) * a(j, 2) - a(i, 2) * a(j, 0)) +
                       (a(i, 0) * a(j, 1) - a(i, 1) * a(j, 0));
      g.pair_scalars.push_back({{i, j}, s});
      all_zero = all_zero && s == 0;
    }
  g.collinear = all_zero;
  if (n == 2) {
    auto s = g.pair_scalars[0].second;
    g.orientation = s > 0 ? Orientation::Positive : s < 0 ? Orientation::Negative : Orientation::Degenerate;
  }
  return g;
}

std::vector<std::size_t> positive_divergence_reactions(const ReactionNetwork& net) {
  std::vector<std::size_t> out;
  const std::size_t n = net.num_species();
  for (std::size_t r = 0; r < net.num_reactions(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      if (net.source()(j, r) != 2) continue;
      bool ok = net.stoich()(j, r) > 0;
      for (std::size_t i = 0; i < n && ok; ++i)
        if (i != j) ok = net.source()(i, r) == 0 && net.stoich()(i, r) >= 0;
      if (ok) out.push_back(r);
    }
  }
  return out;
}

std::string to_string(DivergenceClass d) {
  switch (d) {
    case DivergenceClass::NegativeEverywhere: return "NegativeEverywhere";
    case DivergenceClass::IdenticallyZero: return "IdenticallyZero";
    case DivergenceClass::Indefinite: return "Indefinite";
  }
  return "?";
}

DivergenceClass dulac_divergence_class(const ReactionNetwork& net) {
  bool negative = false, positive = false;
  for (std::size_t r = 0; r < net.num_reactions(); ++r)
    for (std::size_t j = 0; j < net.num_species(); ++j) {
      auto s = net.stoich()(j, r) * (net.source()(j, r) - 1);
      positive = positive || s > 0;
      negative = negative || s < 0;
    }
  if (positive) return DivergenceClass::Indefinite;
  return negative ? DivergenceClass::NegativeEverywhere : DivergenceClass::IdenticallyZero;
}

namespace {

template <class T>
bool lv_coefficients(const ReactionNetwork& net, const std::vector<T>& kappa, std::vector<T>& r, Matrix<T>& b) {
  const std::size_t n = net.num_species();
  r.assign(n, T(0));
  b = Matrix<T>(n, n, T(0));
  for (std::size_t q = 0; q < net.num_reactions(); ++q) {
    for (std::size_t j = 0; j < n; ++j) {
      auto c = net.stoich()(j, q);
      if (c == 0) continue;
      if (net.source()(j, q) != 1) return false;
      // remaining monomial after dividing by x_j
      std::optional<std::size_t> other;
      std::int64_t rest = 0;
      for (std::size_t i = 0; i < n; ++i) {
        auto e = net.source()(i, q) - (i == j ? 1 : 0);
        rest += e;
        if (e > 0) other = i;
      }
      if (rest > 1) return false;
      T term = T(static_cast<long>(c)) * kappa[q];
      if (rest == 0)
        r[j] += term;
      else
        b(j, *other) += term;
    }
  }
  return true;
}

template <class T>
std::vector<std::pair<std::string, bool>> lv_conditions(const std::vector<T>& r, const Matrix<T>& b) {
  std::vector<std::pair<std::string, bool>> out;
  if (r.size() == 2) {
    out.push_back({"r1*r2 < 0", r[0] * r[1] < 0});
    out.push_back({"r1*b12 < 0", r[0] * b(0, 1) < 0});
    out.push_back({"r2*b21 < 0", r[1] * b(1, 0) < 0});
  } else if (r.size() == 3) {
    out.push_back({"b12*b13 < 0", b(0, 1) * b(0, 2) < 0});
    out.push_back({"b21*b23 < 0", b(1, 0) * b(1, 2) < 0});
    out.push_back({"b31*b32 < 0", b(2, 0) * b(2, 1) < 0});
    out.push_back({"b12*b23*b31 + b13*b21*b32 = 0",
                   b(0, 1) * b(1, 2) * b(2, 0) + b(0, 2) * b(1, 0) * b(2, 1) == 0});
  }
  return out;
}

}  // namespace

std::optional<LotkaVolterraForm> lotka_volterra_form(const MassActionSystem& sys) {
  const auto& net = sys.network();
  LotkaVolterraForm form;
  if (sys.exact()) {
    std::vector<Rational> r;
    RatMatrix b;
    if (!lv_coefficients(net, sys.exact_kappa(), r, b)) return std::nullopt;
    form.r = to_doubles(r);
    form.b = to_real(b);
    form.conditions = lv_conditions(r, b);
    form.r_exact = r;
    form.b_exact = b;
  } else {
    if (!lv_coefficients(net, sys.kappa(), form.r, form.b)) return std::nullopt;
    form.conditions = lv_conditions(form.r, form.b);
  }
  return form;
}

}  // namespace crnosc
