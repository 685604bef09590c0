#include "crnosc/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crnosc/stoich.hpp"

namespace crnosc {

const std::array<std::array<std::array<int, 2>, 3>, 10>& ten_source_triples() {
  static const std::array<std::array<std::array<int, 2>, 3>, 10> t = {{
      {{{1, 0}, {0, 1}, {0, 0}}},
      {{{1, 0}, {1, 1}, {0, 0}}},
      {{{2, 0}, {0, 1}, {0, 0}}},
      {{{2, 0}, {0, 1}, {1, 0}}},
      {{{2, 0}, {0, 2}, {0, 0}}},
      {{{2, 0}, {0, 2}, {1, 0}}},
      {{{1, 0}, {1, 1}, {0, 1}}},
      {{{2, 0}, {1, 1}, {1, 0}}},
      {{{2, 0}, {1, 1}, {0, 1}}},
      {{{2, 0}, {1, 1}, {0, 0}}},
  }};
  return t;
}

SourceCase source_case(const ReactionNetwork& net) {
  if (net.num_species() != 2 || net.num_reactions() != 3) return {};
  const auto& triples = ten_source_triples();
  for (int id = 1; id <= 10; ++id)
    for (bool swapped : {false, true}) {
      std::array<std::size_t, 3> order = {0, 1, 2};
      do {
        bool ok = true;
        for (std::size_t i = 0; i < 3 && ok; ++i) {
          auto a = net.source()(swapped ? 1 : 0, order[i]);
          auto b = net.source()(swapped ? 0 : 1, order[i]);
          ok = a == triples[id - 1][i][0] && b == triples[id - 1][i][1];
        }
        if (ok) return {id, swapped, order};
      } while (std::next_permutation(order.begin(), order.end()));
    }
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NoPeriodicOrbit: return "NoPeriodicOrbit";
    case Verdict::CenterForAllKappa: return "CenterForAllKappa";
    case Verdict::VerticalHopf: return "VerticalHopf";
    case Verdict::SupercriticalHopf: return "SupercriticalHopf";
    case Verdict::NoAndronovHopf: return "NoAndronovHopf";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

using I = std::int64_t;

int sgn(I v) { return (v > 0) - (v < 0); }

std::optional<Rational> ratio(I p, I q) {
  if (q == 0) return std::nullopt;
  Rational r(static_cast<long>(p), static_cast<long>(q));
  r.canonicalize();
  return r;
}

struct Builder {
  std::vector<Inequality> list;
  void add(std::string text, bool holds) { list.push_back({std::move(text), holds}); }
};

// Shared sign pattern of the Hopf cases; the flags pick the variant of c3, d2 and d3.
void sign_conditions(Builder& b, const std::array<I, 3>& c, const std::array<I, 3>& d, bool c3_positive,
                     bool d2_minus_one, bool d3_nonneg) {
  b.add("c1 > 0", c[0] > 0);
  b.add("c2 = -1", c[1] == -1);
  if (c3_positive)
    b.add("c3 > 0", c[2] > 0);
  else
    b.add("c3 = 0", c[2] == 0);
  b.add("d1 > 0", d[0] > 0);
  if (d2_minus_one)
    b.add("d2 = -1", d[1] == -1);
  else
    b.add("d2 >= -1", d[1] >= -1);
  if (d3_nonneg)
    b.add("d3 >= 0", d[2] >= 0);
  else
    b.add("d3 >= -1", d[2] >= -1);
}

void hopf_ratios(Builder& b, const std::array<I, 3>& c, const std::array<I, 3>& d) {
  auto r1 = ratio(d[0], c[0]), r2 = ratio(d[1], c[1]), r3 = ratio(d[2], c[2]);
  bool lower = r1 && r2 && r3 && Rational((*r3 + *r1) / 2) < *r2;
  bool upper = r1 && r2 && *r2 < *r1;
  b.add("(d3/c3 + d1/c1)/2 < d2/c2", lower);
  b.add("d2/c2 < d1/c1", upper);
}

}  // namespace

PlanarVerdict theorem_verdict_planar(const ReactionNetwork& net) {
  if (net.num_species() != 2 || net.num_reactions() != 3)
    throw PreconditionError("NotPlanar", "theorem_verdict_planar needs two species and three reactions");
  if (!molecularity_profile(net).is_quadratic())
    throw PreconditionError("NotQuadratic", "sources must be at most bimolecular");
  PlanarVerdict v;
  v.verdict = Verdict::NoPeriodicOrbit;
  if (rank(net) != 2) {
    v.reason = "rank_not_two";
    return v;
  }
  v.source_case = source_case(net);
  if (v.source_case.id == 0) {
    v.reason = "sources_collinear";
    return v;
  }
  const auto& sc = v.source_case;
  const std::size_t sx = sc.swapped ? 1 : 0, sy = 1 - sx;
  for (std::size_t i = 0; i < 3; ++i) {
    v.c[i] = net.stoich()(sx, sc.order[i]);
    v.d[i] = net.stoich()(sy, sc.order[i]);
  }
  const auto& c = v.c;
  const auto& d = v.d;
  std::array<I, 3> u = {c[1] * d[2] - c[2] * d[1], c[2] * d[0] - c[0] * d[2], c[0] * d[1] - c[1] * d[0]};
  int su = sgn(u[0]);
  if (su == 0 || sgn(u[1]) != su || sgn(u[2]) != su) {
    v.reason = "dynamically_trivial";
    return v;
  }
  const auto& p = ten_source_triples()[sc.id - 1];
  I orient = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]);
  v.det_positive = su * sgn(orient) > 0;

  auto k = [&](int i) { return "k" + std::to_string(sc.order[i] + 1); };
  switch (sc.id) {
    case 7: {
      Builder b;
      b.add("c3 = 0", c[2] == 0);
      b.add("d1 = 0", d[0] == 0);
      b.add("c1 != 0", c[0] != 0);
      b.add("sgn c1 = -sgn c2", sgn(c[0]) == -sgn(c[1]));
      b.add("sgn c1 = -sgn d3", sgn(c[0]) == -sgn(d[2]));
      b.add("sgn c1 = sgn d2", sgn(c[0]) == sgn(d[1]));
      v.branches.push_back(b.list);
      break;
    }
    case 8: {
      Builder b;
      sign_conditions(b, c, d, true, true, true);
      b.add("d3/c3 < 1", c[2] > 0 && d[2] < c[2]);
      b.add("1 < d1/c1", c[0] > 0 && c[0] < d[0]);
      v.branches.push_back(b.list);
      std::ostringstream rel;
      rel << c[0] << "*" << k(0) << " + " << "(" << d[1] << ")*" << k(1) << " = 0";
      v.critical_relation = rel.str();
      break;
    }
    case 9: {
      Builder a;
      sign_conditions(a, c, d, true, false, false);
      hopf_ratios(a, c, d);
      v.branches.push_back(a.list);
      Builder b;
      b.add("c1 > 0", c[0] > 0);
      b.add("c2 = -1", c[1] == -1);
      b.add("c3 = 0", c[2] == 0);
      b.add("d1 > 0", d[0] > 0);
      b.add("d2 >= -1", d[1] >= -1);
      b.add("d3 = -1", d[2] == -1);
      auto r1 = ratio(d[0], c[0]), r2 = ratio(d[1], c[1]);
      b.add("d2/c2 < d1/c1", r1 && r2 && *r2 < *r1);
      v.branches.push_back(b.list);
      v.critical_relation = "trace J = 0";
      break;
    }
    case 10: {
      Builder a;
      sign_conditions(a, c, d, true, true, true);
      hopf_ratios(a, c, d);
      v.branches.push_back(a.list);
      v.critical_relation = "trace J = 0";
      break;
    }
    default: break;
  }
  v.verdict = verdict_from_witness(v);
  if (v.verdict == Verdict::NoPeriodicOrbit)
    v.reason = sc.id <= 6 ? "source_case_" + std::to_string(sc.id)
               : !v.det_positive ? "saddle"
                                 : "case_" + std::to_string(sc.id) + "_conditions";
  else if (v.verdict == Verdict::NoAndronovHopf)
    v.reason = "case_" + std::to_string(sc.id) + "_conditions";
  if (v.verdict != Verdict::VerticalHopf && v.verdict != Verdict::SupercriticalHopf) v.critical_relation.reset();
  return v;
}

Verdict verdict_from_witness(const PlanarVerdict& v) {
  bool positive = std::any_of(v.branches.begin(), v.branches.end(), [](const auto& br) {
    return std::all_of(br.begin(), br.end(), [](const Inequality& q) { return q.holds; });
  });
  switch (v.source_case.id) {
    case 7: return positive ? Verdict::CenterForAllKappa : Verdict::NoPeriodicOrbit;
    case 8: return positive ? Verdict::VerticalHopf : Verdict::NoPeriodicOrbit;
    case 9:
    case 10:
      if (positive) return Verdict::SupercriticalHopf;
      return v.det_positive ? Verdict::NoAndronovHopf : Verdict::NoPeriodicOrbit;
    default: return Verdict::NoPeriodicOrbit;
  }
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

KappaPath KappaPath::parse(const std::string& text, std::size_t num_reactions) {
  KappaPath path;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || item[0] != 'k')
      throw std::invalid_argument("path entry '" + item + "' is not of the form kj=value");
    std::string lhs = trim(item.substr(1, eq - 1)), rhs = trim(item.substr(eq + 1));
    if (lhs.empty() || !std::all_of(lhs.begin(), lhs.end(), ::isdigit))
      throw std::invalid_argument("bad reaction index in '" + item + "'");
    std::size_t j = std::stoul(lhs);
    if (j < 1 || j > num_reactions) throw std::invalid_argument("reaction index out of range in '" + item + "'");
    Entry e;
    e.reaction = j - 1;
    if (rhs == "t") {
      e.uses_t = true;
    } else if (auto star = rhs.find('*'); star != std::string::npos) {
      std::string a = trim(rhs.substr(0, star)), b = trim(rhs.substr(star + 1));
      if (b == "t")
        e.coefficient = parse_rational(a);
      else if (a == "t")
        e.coefficient = parse_rational(b);
      else
        throw std::invalid_argument("path entry '" + item + "' must be linear in t");
      e.uses_t = true;
    } else {
      e.coefficient = parse_rational(rhs);
    }
    if (e.coefficient <= 0) throw std::invalid_argument("path coefficients must be positive");
    path.entries.push_back(e);
  }
  return path;
}

std::vector<double> KappaPath::at(const std::vector<double>& base, double t) const {
  std::vector<double> k = base;
  for (const auto& e : entries) k.at(e.reaction) = e.coefficient.get_d() * (e.uses_t ? t : 1.0);
  return k;
}

std::string to_string(HopfClass h) {
  switch (h) {
    case HopfClass::Supercritical: return "supercritical";
    case HopfClass::Subcritical: return "subcritical";
    case HopfClass::Vertical: return "vertical";
  }
  return "?";
}

bool linear_after_division(const ReactionNetwork& net) {
  for (std::size_t k = 0; k < net.num_species(); ++k) {
    bool ok = true;
    for (std::size_t j = 0; j < net.num_reactions() && ok; ++j)
      ok = net.source()(k, j) >= 1 && net.source_complex(j).molecularity() <= 2;
    if (ok) return true;
  }
  return false;
}

namespace {

// Derivatives of a planar field up to third order at a point.
struct Jet {
  double j[2][2] = {};
  double h[2][2][2] = {};
  double t[2][2][2][2] = {};
};

double falling(std::int64_t a, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(a - i);
  return r;
}

// d^|beta| x^a / dx^beta at x, where beta counts derivatives per species.
double monomial_derivative(const ReactionNetwork& net, std::size_t rxn, const std::vector<int>& beta,
                           const std::vector<double>& x) {
  double r = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto a = net.source()(i, rxn);
    if (beta[i] > a) return 0;
    r *= falling(a, beta[i]) * detail::ipow(x[i], a - beta[i]);
  }
  return r;
}

Jet reduced_jet(const MassActionSystem& sys, const std::vector<double>& x, const std::vector<std::size_t>& rows,
                const RealMatrix& gt) {
  const auto& net = sys.network();
  const std::size_t n = net.num_species();
  // Directional derivatives along the columns of gt.
  auto dir = [&](std::size_t rxn, const std::vector<std::size_t>& cols) {
    // Expand product of directional derivatives into species multi-indices.
    double total = 0;
    std::vector<std::size_t> species(cols.size(), 0);
    while (true) {
      double w = 1;
      std::vector<int> beta(n, 0);
      for (std::size_t q = 0; q < cols.size(); ++q) {
        w *= gt(species[q], cols[q]);
        ++beta[species[q]];
      }
      if (w != 0) total += w * monomial_derivative(net, rxn, beta, x);
      std::size_t q = 0;
      while (q < cols.size() && ++species[q] == n) species[q++] = 0;
      if (q == cols.size()) break;
    }
    return total;
  };
  Jet jet;
  for (std::size_t rxn = 0; rxn < net.num_reactions(); ++rxn) {
    double kap = sys.kappa()[rxn];
    for (std::size_t a = 0; a < 2; ++a) {
      double coef = static_cast<double>(net.stoich()(rows[a], rxn)) * kap;
      if (coef == 0) continue;
      for (std::size_t b = 0; b < 2; ++b) {
        jet.j[a][b] += coef * dir(rxn, {b});
        for (std::size_t c = 0; c < 2; ++c) {
          jet.h[a][b][c] += coef * dir(rxn, {b, c});
          for (std::size_t e = 0; e < 2; ++e) jet.t[a][b][c][e] += coef * dir(rxn, {b, c, e});
        }
      }
    }
  }
  return jet;
}

struct GH {
  double a = 0;
  double omega = 0;
  double gain = 0;
};

GH guckenheimer_holmes(const Jet& jet) {
  const auto& J = jet.j;
  double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  double omega = std::sqrt(det);
  double p = 0.5 * (J[0][0] - J[1][1]);
  double q = J[0][1];
  double T[2][2] = {{0, q}, {omega, -p}};
  double s = 1.0 / std::sqrt(std::fabs(q * omega));
  for (auto& row : T)
    for (auto& v : row) v *= s;
  double dt = T[0][0] * T[1][1] - T[0][1] * T[1][0];
  double Ti[2][2] = {{T[1][1] / dt, -T[0][1] / dt}, {-T[1][0] / dt, T[0][0] / dt}};
  double H[2][2][2] = {}, C[2][2][2][2] = {};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c2 = 0; c2 < 2; ++c2) H[a][b][c] += Ti[a][a2] * jet.h[a2][b2][c2] * T[b2][b] * T[c2][c];
        for (int e = 0; e < 2; ++e)
          for (int a2 = 0; a2 < 2; ++a2)
            for (int b2 = 0; b2 < 2; ++b2)
              for (int c2 = 0; c2 < 2; ++c2)
                for (int e2 = 0; e2 < 2; ++e2)
                  C[a][b][c][e] += Ti[a][a2] * jet.t[a2][b2][c2][e2] * T[b2][b] * T[c2][c] * T[e2][e];
      }
  double fxx = H[0][0][0], fxy = H[0][0][1], fyy = H[0][1][1];
  double gxx = H[1][0][0], gxy = H[1][0][1], gyy = H[1][1][1];
  double fxxx = C[0][0][0][0], fxyy = C[0][0][1][1], gxxy = C[1][0][0][1], gyyy = C[1][1][1][1];
  GH out;
  out.omega = omega;
  out.a = (fxxx + fxyy + gxxy + gyyy) / 16.0 +
          (fxy * (fxx + fyy) - gxy * (gxx + gyy) - fxx * gxx + fyy * gyy) / (16.0 * omega);
  out.gain = std::hypot(Ti[0][0], Ti[1][0]);
  return out;
}

}  // namespace

LyapunovResult first_lyapunov_coefficient(const MassActionSystem& sys, const EquilibriumRecord& eq) {
  const auto& net = sys.network();
  if (rank(net) != 2) throw PreconditionError("RankNotTwo", "first Lyapunov coefficient needs rank two");
  auto rows = stoich_row_basis(net);
  RealMatrix gt = to_real(gamma_tilde(net, rows));
  Jet jet = reduced_jet(sys, eq.x_bar, rows, gt);
  double det = jet.j[0][0] * jet.j[1][1] - jet.j[0][1] * jet.j[1][0];
  double tr = jet.j[0][0] + jet.j[1][1];
  if (!(det > 0)) throw PreconditionError("NotAtHopfPoint", "reduced Jacobian determinant is not positive");
  if (std::fabs(tr) > 1e-6 * std::sqrt(det))
    throw PreconditionError("NotAtHopfPoint", "reduced Jacobian trace is not zero");
  LyapunovResult res;
  GH raw = guckenheimer_holmes(jet);
  res.raw = raw.a;
  res.omega = raw.omega;
  res.section_gain = raw.gain;
  // Dimensionless version: s = diag(s_bar) xi, time scaled by omega.
  double sb[2] = {eq.x_bar[rows[0]], eq.x_bar[rows[1]]};
  Jet norm;
  for (int a = 0; a < 2; ++a) {
    double f = 1.0 / (sb[a] * raw.omega);
    for (int b = 0; b < 2; ++b) {
      norm.j[a][b] = jet.j[a][b] * f * sb[b];
      for (int c = 0; c < 2; ++c) {
        norm.h[a][b][c] = jet.h[a][b][c] * f * sb[b] * sb[c];
        for (int e = 0; e < 2; ++e) norm.t[a][b][c][e] = jet.t[a][b][c][e] * f * sb[b] * sb[c] * sb[e];
      }
    }
  }
  res.normalized = guckenheimer_holmes(norm).a;
  res.vertical_override = linear_after_division(net);
  if (res.vertical_override) {
    res.raw = 0;
    res.normalized = 0;
  }
  if (res.normalized < -1e-10)
    res.classification = HopfClass::Supercritical;
  else if (res.normalized > 1e-10)
    res.classification = HopfClass::Subcritical;
  else
    res.classification = HopfClass::Vertical;
  return res;
}

namespace {

struct TraceSample {
  bool ok = false;
  double trace = 0;
  double det = 0;
  double scale = 1;
  EquilibriumRecord eq;
};

TraceSample trace_at(const MassActionSystem& sys, const KappaPath& path, double t) {
  TraceSample s;
  try {
    auto k = path.at(sys.kappa(), t);
    MassActionSystem st(sys.network(), k);
    s.eq = planar_equilibrium(st);
    auto rj = reduced_jacobian(st, s.eq);
    s.trace = rj.trace;
    s.det = rj.det;
    double f = 0;
    for (double v : rj.matrix.data()) f += v * v;
    s.scale = std::max(std::sqrt(f), 1e-300);
    s.ok = std::isfinite(s.trace) && std::isfinite(s.det);
  } catch (const std::exception&) {
    s.ok = false;
  }
  return s;
}

}  // namespace

std::optional<HopfPoint> find_hopf_point(const MassActionSystem& sys, const KappaPath& path, double t_lo,
                                         double t_hi, std::size_t samples) {
  const auto& net = sys.network();
  if (net.num_species() != 2 || net.num_reactions() != 3 || rank(net) != 2)
    throw PreconditionError("NotPlanar", "find_hopf_point needs a rank-two (2,3,2) network");
  if (!dynamically_nontrivial(net).nontrivial)
    throw PreconditionError("DynamicallyTrivial", "network is dynamically trivial");
  if (!(t_hi > t_lo)) throw std::invalid_argument("empty parameter range");
  samples = std::max<std::size_t>(samples, 2);
  const bool logscale = t_lo > 0;
  auto param = [&](std::size_t i) {
    double f = static_cast<double>(i) / static_cast<double>(samples - 1);
    return logscale ? t_lo * std::pow(t_hi / t_lo, f) : t_lo + (t_hi - t_lo) * f;
  };
  TraceSample prev = trace_at(sys, path, param(0));
  double tprev = param(0);
  for (std::size_t i = 1; i < samples; ++i) {
    double t = param(i);
    TraceSample cur = trace_at(sys, path, t);
    if (prev.ok && cur.ok && prev.det > 0 && cur.det > 0 &&
        (prev.trace == 0 || cur.trace == 0 || (prev.trace < 0) != (cur.trace < 0))) {
      double lo = tprev, hi = t;
      TraceSample slo = prev, mid = prev;
      double tm = lo;
      if (cur.trace == 0) {
        mid = cur;
        tm = t;
      }
      for (int it = 0; it < 300 && std::fabs(mid.trace) > 1e-12 * mid.scale; ++it) {
        tm = logscale ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (tm <= lo || tm >= hi) break;
        mid = trace_at(sys, path, tm);
        if (!mid.ok) break;
        if ((mid.trace < 0) == (slo.trace < 0)) {
          lo = tm;
          slo = mid;
        } else {
          hi = tm;
        }
      }
      if (mid.ok && mid.det > 0) {
        HopfPoint hp;
        hp.t_star = tm;
        hp.kappa_star = path.at(sys.kappa(), tm);
        hp.equilibrium = mid.eq;
        hp.trace_residual = mid.trace;
        hp.det_value = mid.det;
        MassActionSystem st(net, hp.kappa_star);
        hp.trace_residual = planar_trace(st, hp.equilibrium);
        hp.lyapunov = first_lyapunov_coefficient(st, hp.equilibrium);
        return hp;
      }
    }
    prev = cur;
    tprev = t;
  }
  return std::nullopt;
}

std::optional<std::vector<double>> hopf_kappa(const ReactionNetwork& net) {
  if (net.num_species() != 2 || net.num_reactions() != 3 || rank(net) != 2) return std::nullopt;
  auto u = kernel_cross_product(net, 0, 1);
  int su = sgn(u[0]);
  if (su == 0 || sgn(u[1]) != su || sgn(u[2]) != su) return std::nullopt;
  double A = 0, B = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    A += static_cast<double>(net.source()(0, i) * net.stoich()(0, i) * u[i]);
    B += static_cast<double>(net.source()(1, i) * net.stoich()(1, i) * u[i]);
  }
  if (A == 0 || B == 0) return std::nullopt;
  double y = -B / A;
  if (!(y > 0)) return std::nullopt;
  std::vector<double> k(3);
  for (std::size_t i = 0; i < 3; ++i)
    k[i] = su * static_cast<double>(u[i]) / detail::ipow(y, net.source()(1, i));
  return k;
}

BogdanovTakensResidual bogdanov_takens_residual(double kappa2, double C, double kappa1_factor) {
  if (!(C < 0) || !(kappa2 > 0)) throw PreconditionError("BadParameters", "needs C < 0 and kappa2 > 0");
  static const ReactionNetwork net = parse_network("2X -> 4X + 3Y + Z; X + Y -> 0; Z -> X");
  const double s6 = std::sqrt(6.0);
  BogdanovTakensResidual out;
  double k1 = kappa1_factor * kappa2 * (3 + s6) / 3, k3 = -2 * C * kappa2 / (3 + s6);
  out.kappa = {k1, kappa2, k3};
  // Equilibria (t, 3 k1 t/k2, k1 t^2/k3) on x - y + z = C.
  double a = k1 / k3, b = 1 - 3 * k1 / kappa2, c = -C;
  double disc = b * b - 4 * a * c;
  if (disc < -1e-12 * (b * b + std::fabs(4 * a * c)))
    throw PreconditionError("NoPositiveEquilibrium", "no positive equilibrium on the class");
  disc = std::max(disc, 0.0);
  MassActionSystem sys(net, out.kappa);
  bool found = false;
  for (double sgn_root : {-1.0, 1.0}) {
    double t = (-b + sgn_root * std::sqrt(disc)) / (2 * a);
    if (!(t > 0)) continue;
    std::vector<double> x = {t, 3 * k1 * t / kappa2, k1 * t * t / k3};
    auto rj = reduced_jacobian(sys, make_record(sys, x));
    if (!found || std::fabs(rj.det) < std::fabs(out.det)) {
      out.trace = std::fabs(rj.trace);
      out.det = std::fabs(rj.det);
      out.equilibrium = x;
      found = true;
    }
  }
  if (!found) throw PreconditionError("NoPositiveEquilibrium", "no positive equilibrium on the class");
  return out;
}

std::vector<ReactionNetwork> planar_networks_with_sources(const std::array<std::array<int, 2>, 3>& sources,
                                                          int max_target) {
  std::vector<std::array<int, 2>> targets;
  for (int p = 0; p <= max_target; ++p)
    for (int q = 0; p + q <= max_target; ++q) targets.push_back({p, q});
  std::vector<ReactionNetwork> out;
  for (const auto& t1 : targets)
    for (const auto& t2 : targets)
      for (const auto& t3 : targets) {
        std::array<std::array<int, 2>, 3> t = {t1, t2, t3};
        bool ok = true;
        for (int i = 0; i < 3; ++i) ok = ok && t[i] != sources[i];
        if (!ok) continue;
        IntMatrix src(2, 3), st(2, 3);
        for (int i = 0; i < 3; ++i)
          for (int s = 0; s < 2; ++s) {
            src(s, i) = sources[i][s];
            st(s, i) = t[i][s] - sources[i][s];
          }
        out.emplace_back(std::vector<std::string>{"X", "Y"}, src, st);
      }
  return out;
}

}  // namespace crnosc
