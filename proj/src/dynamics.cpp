#include "crnosc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <ostream>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "crnosc/stoich.hpp"

namespace crnosc {

namespace odeint = boost::numeric::odeint;

namespace {

double norm_inf(const State& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

bool nonnegative(const State& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0; });
}

}  // namespace

Trajectory integrate_field(const VectorField& f, const State& x0, double T, const IntegratorOptions& opt,
                           const StepObserver& observer) {
  if (!(T > 0)) throw std::invalid_argument("integration time must be positive");
  if (x0.size() != f.dim) throw std::invalid_argument("initial state has the wrong dimension");
  Trajectory tr;
  tr.tol = opt.tol;
  auto sys = [&](const State& x, State& dx, double) { f.rhs(x, dx); };
  auto stepper = odeint::make_dense_output(opt.abs_tol, opt.tol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(x0, 0.0, std::min(opt.initial_step, T));

  std::size_t next_sample = 0;
  const auto& samples = opt.sample_times;
  auto record = [&](double t, const State& x) {
    tr.times.push_back(t);
    tr.states.push_back(x);
  };
  if (samples.empty()) {
    record(0, x0);
  } else {
    while (next_sample < samples.size() && samples[next_sample] <= 0) record(samples[next_sample++], x0);
  }
  State tmp(f.dim);
  auto dense = [&](double t) {
    stepper.calc_state(t, tmp);
    return tmp;
  };

  State prev = x0;
  double t_prev = 0;
  while (t_prev < T) {
    if (tr.steps >= opt.max_steps) {
      tr.truncated = true;
      break;
    }
    auto [t0, t1] = stepper.do_step(sys);
    State cur = stepper.current_state();
    if (f.admissible && !f.admissible(cur)) {
      const double h = (t1 - t0) / 2;
      if (h > 1e-14 * (1 + t0)) {
        ++tr.rejected;
        stepper.initialize(prev, t_prev, h);
        continue;
      }
      for (auto& v : cur) v = std::max(v, 0.0);
      stepper.initialize(cur, t1, h);
    }
    ++tr.steps;
    if (samples.empty()) {
      if (t1 <= T) {
        record(t1, cur);
      } else {
        State end = dense(T);
        if (f.admissible && !f.admissible(end))
          for (auto& v : end) v = std::max(v, 0.0);
        record(T, end);
      }
    } else {
      while (next_sample < samples.size() && samples[next_sample] <= std::min(t1, T)) {
        State s = dense(samples[next_sample]);
        if (f.admissible && !f.admissible(s))
          for (auto& v : s) v = std::max(v, 0.0);
        record(samples[next_sample++], s);
      }
    }
    if (norm_inf(cur) > opt.blowup || !std::all_of(cur.begin(), cur.end(), [](double v) { return std::isfinite(v); })) {
      tr.blow_up = tr.truncated = true;
      break;
    }
    if (observer && !observer(t0, prev, t1, cur, dense)) break;
    prev = cur;
    t_prev = t1;
  }
  return tr;
}

Trajectory integrate(const MassActionSystem& sys, const State& x0, double T, const IntegratorOptions& opt) {
  if (!nonnegative(x0)) throw PreconditionError("NegativeState", "initial state must be nonnegative");
  VectorField f;
  f.dim = sys.network().num_species();
  f.rhs = [&sys](const State& x, State& dx) { dx = mass_action_rhs(sys, x); };
  f.admissible = nonnegative;
  return integrate_field(f, x0, T, opt);
}

VectorField class_field(const MassActionSystem& sys, const StoichiometricClass& cls) {
  VectorField f;
  f.dim = cls.dimension();
  f.rhs = [&sys, &cls](const State& s, State& ds) {
    auto full = mass_action_rhs(sys, cls.point(s));
    ds.resize(cls.dimension());
    for (std::size_t k = 0; k < ds.size(); ++k) ds[k] = full[cls.basis_rows()[k]];
  };
  f.admissible = [&cls](const State& s) { return nonnegative(cls.point(s)); };
  return f;
}

void write_csv(std::ostream& os, const Trajectory& tr, const std::vector<std::string>& names) {
  os << "t";
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  os.precision(12);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    os << tr.times[k];
    for (double v : tr.states[k]) os << ',' << v;
    os << '\n';
  }
}

// ---------------------------------------------------------------------------

namespace {

struct SingleReturn {
  std::vector<double> radii;
  std::vector<double> times;
  double min_speed = std::numeric_limits<double>::infinity();
};

SingleReturn follow(const VectorField& f, const State& sbar, double r, const ReturnMapOptions& opt) {
  SingleReturn out;
  State s0 = sbar;
  s0[0] += r;
  if (f.admissible && !f.admissible(s0)) return out;
  State v(2);
  f.rhs(s0, v);
  out.min_speed = std::abs(v[1]);
  if (out.min_speed < opt.min_normal_speed) return out;
  const double sigma = v[1] > 0 ? 1 : -1;
  auto h = [&](const State& s) { return sigma * (s[1] - sbar[1]); };
  auto observer = [&](double t0, const State& x0, double t1, const State& x1,
                      const std::function<State(double)>& dense) {
    if (!(h(x0) < 0 && h(x1) >= 0)) return true;
    double a = t0, b = t1;
    for (int it = 0; it < 200 && b - a > 1e-15 * (1 + b); ++it) {
      double m = 0.5 * (a + b);
      (h(dense(m)) < 0 ? a : b) = m;
    }
    State sc = dense(b);
    if (sc[0] - sbar[0] <= 0) return true;
    State vc(2);
    f.rhs(sc, vc);
    out.min_speed = std::min(out.min_speed, std::abs(vc[1]));
    if (std::abs(vc[1]) < opt.min_normal_speed) return false;
    out.radii.push_back(sc[0] - sbar[0]);
    out.times.push_back(b);
    return out.radii.size() < opt.returns;
  };
  integrate_field(f, s0, opt.max_time, opt.integrator, observer);
  return out;
}

}  // namespace

ReturnMapSample return_map(const MassActionSystem& sys, const EquilibriumRecord& eq, const std::vector<double>& radii,
                           const ReturnMapOptions& opt) {
  const auto& net = sys.network();
  auto cls = StoichiometricClass::from_point(net, eq.x_bar);
  if (cls.dimension() != 2) throw PreconditionError("NotPlanar", "return maps need a two-dimensional class");
  auto f = class_field(sys, cls);
  ReturnMapSample s;
  s.anchor = cls.coordinates(eq.x_bar);
  s.direction = {1, 0};
  s.basis_rows = cls.basis_rows();
  s.radii_in = radii;
  std::vector<SingleReturn> runs(radii.size());
  if (opt.workers > 1) {
    std::vector<std::future<SingleReturn>> fut;
    for (double r : radii) fut.push_back(std::async(std::launch::async, [&, r] { return follow(f, s.anchor, r, opt); }));
    for (std::size_t k = 0; k < radii.size(); ++k) runs[k] = fut[k].get();
  } else {
    for (std::size_t k = 0; k < radii.size(); ++k) runs[k] = follow(f, s.anchor, radii[k], opt);
  }
  for (const auto& run : runs) {
    s.returned.push_back(!run.radii.empty());
    s.radii_out.push_back(run.radii.empty() ? std::nan("") : run.radii.front());
    s.returns.push_back(run.radii);
    s.crossing_times.push_back(run.times);
    s.min_normal_speed.push_back(run.min_speed);
  }
  return s;
}

std::vector<double> section_radii(const MassActionSystem& sys, const EquilibriumRecord& eq,
                                  const std::vector<double>& fractions) {
  auto cls = StoichiometricClass::from_point(sys.network(), eq.x_bar);
  auto s = cls.coordinates(eq.x_bar);
  s[0] += 1;
  auto unit = cls.point(s);
  double reach = *std::max_element(eq.x_bar.begin(), eq.x_bar.end());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    const double d = unit[i] - eq.x_bar[i];
    if (d < 0) reach = std::min(reach, eq.x_bar[i] / -d);
  }
  std::vector<double> out;
  for (double f : fractions) out.push_back(f * reach);
  return out;
}

std::string OrbitStructure::label() const {
  char buf[64];
  switch (kind) {
    case Kind::Center: return "Center";
    case Kind::StableCycle:
      std::snprintf(buf, sizeof buf, "StableCycle(r=%.6g)", radius);
      return buf;
    case Kind::Spiral: return direction == Direction::In ? "Spiral(in)" : "Spiral(out)";
    case Kind::NonReturning: return "NonReturning";
    case Kind::Indeterminate: return "Indeterminate";
  }
  return "?";
}

OrbitStructure classify_orbit_structure(const ReturnMapSample& s, double tol) {
  OrbitStructure o;
  std::vector<std::size_t> idx(s.radii_in.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return s.radii_in[a] < s.radii_in[b]; });

  std::size_t returned = 0;
  bool every_chain_long = true;
  for (auto k : idx) {
    if (!s.returned[k]) {
      every_chain_long = false;
      continue;
    }
    ++returned;
    double prev = s.radii_in[k];
    for (double r : s.returns[k]) {
      o.max_relative_change = std::max(o.max_relative_change, std::abs(r - prev) / prev);
      prev = r;
    }
    every_chain_long = every_chain_long && s.returns[k].size() >= 3;
  }
  if (returned == 0) {
    o.kind = OrbitStructure::Kind::NonReturning;
    o.detail = "no start returned to the section";
    return o;
  }
  if (returned == s.radii_in.size() && returned >= 5 && every_chain_long && o.max_relative_change < tol) {
    o.kind = OrbitStructure::Kind::Center;
    return o;
  }

  std::vector<double> r_in, delta;
  for (auto k : idx)
    if (s.returned[k]) {
      r_in.push_back(s.radii_in[k]);
      delta.push_back(s.radii_out[k] - s.radii_in[k]);
    }
  const bool all_in = std::all_of(delta.begin(), delta.end(), [](double d) { return d < 0; });
  const bool all_out = std::all_of(delta.begin(), delta.end(), [](double d) { return d > 0; });
  if (all_out) {
    o.kind = OrbitStructure::Kind::Spiral;
    o.direction = OrbitStructure::Direction::Out;
    if (returned < s.radii_in.size()) o.detail = "outer starts escaped";
    return o;
  }
  if (returned < s.radii_in.size()) {
    o.detail = "some starts did not return";
    return o;
  }
  if (all_in) {
    o.kind = OrbitStructure::Kind::Spiral;
    o.direction = OrbitStructure::Direction::In;
    return o;
  }
  std::size_t changes = 0, at = 0;
  for (std::size_t k = 0; k + 1 < delta.size(); ++k)
    if ((delta[k] > 0) != (delta[k + 1] > 0)) {
      ++changes;
      at = k;
    }
  if (changes == 1 && delta[at] > 0 && delta[at + 1] < 0) {
    o.kind = OrbitStructure::Kind::StableCycle;
    o.radius = r_in[at] + (r_in[at + 1] - r_in[at]) * delta[at] / (delta[at] - delta[at + 1]);
    return o;
  }
  o.detail = changes == 1 ? "repelling cycle" : "several sign changes of the return displacement";
  return o;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> template_kappa_of(const FamilyTag& tag, const std::vector<double>& kappa) {
  std::vector<double> k(tag.order.size());
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = kappa.at(tag.order[j]);
  return k;
}

State template_state(const FamilyTag& tag, const State& x) {
  State t(tag.perm.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = x.at(tag.perm[i]);
  return t;
}

PredatorPrey make_predator_prey(const FamilyTag& tag, const std::vector<double>& kappa, double C) {
  PredatorPrey p;
  p.tag = tag;
  auto k = template_kappa_of(tag, kappa);
  p.k1 = k[0];
  p.k2 = k[1];
  p.k3 = k[2];
  p.C = C;
  const double d = static_cast<double>(tag.d);
  p.r0 = d * p.k2 - p.k1;
  p.b00 = p.k2 - p.k3;
  p.b01 = -p.k3 * C;
  p.r1 = -p.k1;
  p.b10 = p.k2;
  if (C > 0 && d * p.k2 * p.k2 > p.k1 * p.k3) {
    const double v = p.k1 / p.k2;
    p.equilibrium = std::make_pair(v, (p.r0 + p.b00 * v) / (p.k3 * C));
  }
  return p;
}

}  // namespace

double conserved_quantity(const FamilyTag& tag, const std::vector<double>& kappa, const State& x) {
  auto t = template_state(tag, x);
  if (std::any_of(t.begin(), t.end(), [](double v) { return !(v > 0); }))
    throw PreconditionError("NonPositiveState", "first integrals need a positive state");
  switch (tag.kind) {
    case FamilyKind::GeneralisedLotka: {
      auto k = template_kappa_of(tag, kappa);
      const double c = static_cast<double>(tag.c), d = static_cast<double>(tag.d);
      return d * k[1] * t[0] + k[1] * t[1] - k[2] * std::log(t[0]) - c * k[0] * std::log(t[1]);
    }
    case FamilyKind::Ivanova: {
      auto k = template_kappa_of(tag, kappa);
      return k[2] * std::log(t[0]) + k[0] * std::log(t[1]) + k[1] * std::log(t[2]);
    }
    case FamilyKind::ThreeSpeciesFamily: {
      auto k = template_kappa_of(tag, kappa);
      const double d = static_cast<double>(tag.d);
      return d * k[2] * std::log(t[0]) - k[0] * std::log(t[1]) + k[1] * std::log(t[2]);
    }
    case FamilyKind::LiftedLVA: {
      auto p = make_predator_prey(tag, kappa, t[2] - t[1]);
      auto [v, w] = p.to_vw(x);
      return p.lyapunov(v, w);
    }
    default: break;
  }
  throw PreconditionError("FamilyMismatch", "no first integral for " + tag.name());
}

double lotka_volterra_integral(const MassActionSystem& sys, const State& x) {
  auto form = lotka_volterra_form(sys);
  const std::size_t n = sys.network().num_species();
  if (!form || (n != 2 && n != 3)) throw PreconditionError("FamilyMismatch", "not a two- or three-species Lotka-Volterra system");
  const auto& r = form->r;
  const auto& b = form->b;
  if (n == 2) return r[0] * std::log(x[1]) - r[1] * std::log(x[0]) + b(0, 1) * x[1] - b(1, 0) * x[0];
  auto w = left_kernel(to_rational(sys.network().stoich()));
  if (w.rows() != 1) throw PreconditionError("FamilyMismatch", "expected one linear conservation law");
  const double d1 = w(0, 0).get_d(), d2 = w(0, 1).get_d(), d3 = w(0, 2).get_d();
  return d1 * d2 * b(1, 2) * std::log(x[0]) + d2 * d3 * b(2, 0) * std::log(x[1]) + d1 * d3 * b(0, 1) * std::log(x[2]);
}

double drift(const Trajectory& tr, const std::function<double(const State&)>& v) {
  if (tr.states.empty()) return 0;
  const double v0 = v(tr.states.front());
  double m = 0;
  for (const auto& x : tr.states) m = std::max(m, std::abs(v(x) - v0));
  return m;
}

double linear_drift(const ReactionNetwork& net, const Trajectory& tr) {
  auto w = to_real(left_kernel(to_rational(net.stoich())));
  double m = 0;
  for (std::size_t k = 0; k < w.rows(); ++k) {
    auto dot = [&](const State& x) {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += w(k, i) * x[i];
      return s;
    };
    m = std::max(m, drift(tr, dot));
  }
  return m;
}

// ---------------------------------------------------------------------------

State PredatorPrey::rhs(const State& vw) const {
  const double v = vw[0], w = vw[1];
  return {v * (r0 + b00 * v + b01 * w), w * (r1 + b10 * v)};
}

VectorField PredatorPrey::field() const {
  VectorField f;
  f.dim = 2;
  f.rhs = [this](const State& s, State& ds) { ds = rhs(s); };
  f.admissible = nonnegative;
  return f;
}

std::pair<double, double> PredatorPrey::to_vw(const State& x) const {
  const double X = x.at(tag.perm[0]), Y = x.at(tag.perm[1]);
  return {Y / X, 1 / X};
}

State PredatorPrey::from_vw(double v, double w) const {
  State x(3);
  x[tag.perm[0]] = 1 / w;
  x[tag.perm[1]] = v / w;
  x[tag.perm[2]] = v / w + C;
  return x;
}

double PredatorPrey::lyapunov(double v, double w) const {
  if (!equilibrium) throw PreconditionError("NoPositiveEquilibrium", "the transformed system has no positive equilibrium");
  const auto [vb, wb] = *equilibrium;
  return k2 * (v - vb * std::log(v)) + k3 * C * (w - wb * std::log(w));
}

PredatorPrey predator_prey_transform(const MassActionSystem& sys, double C) {
  auto tag = match_family(sys.network(), FamilyKind::LiftedLVA);
  if (!tag) throw PreconditionError("FamilyMismatch", "network is not in the Lifted LVA family");
  return make_predator_prey(*tag, sys.kappa(), C);
}

// ---------------------------------------------------------------------------

AmplitudeScan hopf_amplitude_scan(const MassActionSystem& base, const KappaPath& path, double t_star,
                                  const std::vector<double>& ts, const AmplitudeScanOptions& opt) {
  if (base.network().num_species() != 2) throw PreconditionError("NotPlanar", "amplitude scans need two species");
  AmplitudeScan scan;
  scan.t_star = t_star;
  auto rm = opt.return_map;
  rm.returns = 1;
  for (double t : ts) {
    AmplitudePoint pt;
    pt.t = t;
    pt.offset = std::abs(t - t_star);
    auto sys = base.with_kappa(path.at(base.kappa(), t));
    auto eq = planar_equilibrium(sys);
    const double scale = norm_inf(eq.x_bar);
    std::vector<double> radii;
    const double lo = opt.r_min_fraction * scale, hi = opt.r_max_fraction * scale;
    for (std::size_t k = 0; k < opt.coarse; ++k)
      radii.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(opt.coarse - 1)));
    auto sample = return_map(sys, eq, radii, rm);
    auto orbit = classify_orbit_structure(sample, 1e-9);
    pt.orbit = orbit.label();
    if (orbit.kind == OrbitStructure::Kind::StableCycle) {
      auto cls = StoichiometricClass::from_point(sys.network(), eq.x_bar);
      auto f = class_field(sys, cls);
      const State sbar = cls.coordinates(eq.x_bar);
      auto displacement = [&](double r) {
        auto run = follow(f, sbar, r, rm);
        return run.radii.empty() ? std::nan("") : run.radii.front() - r;
      };
      std::size_t k = 0;
      while (k + 1 < radii.size() && !(sample.radii_out[k] > radii[k] && sample.radii_out[k + 1] < radii[k + 1])) ++k;
      std::uintmax_t iters = 100;
      auto [a, b] = boost::math::tools::toms748_solve(displacement, radii[k], radii[k + 1],
                                                      boost::math::tools::eps_tolerance<double>(40), iters);
      pt.radius = 0.5 * (a + b);
    }
    scan.points.push_back(pt);
  }
  double sxy = 0, sxx = 0;
  scan.all_cycles_found = !scan.points.empty();
  for (const auto& p : scan.points) {
    if (!p.radius) {
      scan.all_cycles_found = false;
      continue;
    }
    sxy += p.offset * *p.radius * *p.radius;
    sxx += p.offset * p.offset;
  }
  if (sxx > 0) {
    scan.slope = sxy / sxx;
    double worst = 0, res2 = 0, y2 = 0;
    for (const auto& p : scan.points)
      if (p.radius) {
        const double r2 = *p.radius * *p.radius;
        const double e = r2 - scan.slope * p.offset;
        worst = std::max(worst, std::abs(e) / r2);
        res2 += e * e;
        y2 += r2 * r2;
      }
    scan.max_relative_residual = worst;
    scan.relative_residual = std::sqrt(res2 / y2);
  }
  return scan;
}

}  // namespace crnosc
