#include "crnosc/report.hpp"

#include <algorithm>
#include <cmath>

#include "crnosc/classifier.hpp"
#include "crnosc/dynamics.hpp"
#include "crnosc/family.hpp"
#include "crnosc/hopf.hpp"
#include "crnosc/jacobian.hpp"
#include "crnosc/report_format.hpp"
#include "crnosc/stoich.hpp"

namespace crnosc {

using nlohmann::json;

json to_json_vector(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json rounded(const json& j) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) return nullptr;
    return round_sig(v, 12);
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

std::string dump_report(const json& j) { return rounded(j).dump(2) + "\n"; }

namespace {

json error_entry(const std::string& block, const PreconditionError& e) {
  return {{"block", block}, {"code", e.code()}, {"message", e.what()}};
}

json matrix_rows(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json_vector(m.row(i)));
  return a;
}

json structural_block(const MassActionSystem& sys) {
  const auto& net = sys.network();
  json s;
  const auto r = rank(net);
  s["rank"] = r;
  auto prof = molecularity_profile(net);
  s["molecularity"] = {{"max_source", prof.max_source},
                       {"max_target", prof.max_target},
                       {"quadratic", prof.is_quadratic()},
                       {"trimolecular", prof.is_trimolecular()}};
  json triv = json::array();
  for (auto i : trivial_species(net)) triv.push_back(net.species()[i]);
  s["trivial_species"] = triv;
  if (net.num_reactions() <= 8) {
    auto cert = dynamically_nontrivial(net);
    json c{{"nontrivial", cert.nontrivial}, {"method", cert.method}, {"verified", verify_certificate(net, cert)}};
    c["positive_kernel_vector"] = cert.positive_kernel_vector ? to_json_vector(*cert.positive_kernel_vector) : json();
    c["stiemke_dual"] = cert.stiemke_dual ? to_json_vector(*cert.stiemke_dual) : json();
    s["nontriviality"] = c;
  }
  if (net.num_reactions() == 3) {
    auto g = source_geometry(net);
    json pg = json::array();
    for (const auto& [pair, v] : g.pair_scalars)
      pg.push_back({{"species", {net.species()[pair.first], net.species()[pair.second]}}, {"value", v}});
    s["source_geometry"] = {{"collinear", g.collinear},
                            {"orientation", g.orientation ? json(to_string(*g.orientation)) : json()},
                            {"pair_scalars", pg}};
    s["divergence_class"] = to_string(dulac_divergence_class(net));
    s["positive_divergence_reactions"] = positive_divergence_reactions(net);
  }
  s["lotka_volterra_form"] = lotka_volterra_form(sys).has_value();
  return s;
}

json equilibrium_json(const EquilibriumRecord& e) {
  json j{{"x_bar", e.x_bar}, {"mu", e.mu}, {"u", e.u}, {"residual", e.residual}, {"degenerate", e.degenerate}};
  j["x_exact"] = e.x_exact ? to_json_vector(*e.x_exact) : json();
  j["mu_exact"] = e.mu_exact ? json(to_string(*e.mu_exact)) : json();
  return j;
}

json jacobian_json(const MassActionSystem& sys, const EquilibriumRecord& e) {
  auto rj = reduced_jacobian(sys, e);
  json j{{"rows", rj.rows}, {"det", rj.det}, {"trace", rj.trace}, {"saddle", is_saddle(rj)}};
  json m = json::array();
  for (std::size_t i = 0; i < rj.matrix.rows(); ++i) m.push_back(rj.matrix.row(i));
  j["matrix"] = m;
  j["det_exact"] = rj.det_exact ? json(to_string(*rj.det_exact)) : json();
  j["trace_exact"] = rj.trace_exact ? json(to_string(*rj.trace_exact)) : json();
  if (sys.network().num_reactions() == 3) j["det_formula"] = reduced_det_formula(sys, e);
  return j;
}

json planar_json(const PlanarVerdict& v) {
  json j{{"source_case", v.source_case.id},
         {"swapped", v.source_case.swapped},
         {"order", v.source_case.order},
         {"verdict", to_string(v.verdict)},
         {"c", v.c},
         {"d", v.d},
         {"det_positive", v.det_positive},
         {"reason", v.reason},
         {"witness_verdict", to_string(verdict_from_witness(v))}};
  json br = json::array();
  for (const auto& b : v.branches) {
    json one = json::array();
    for (const auto& q : b) one.push_back({{"text", q.text}, {"holds", q.holds}});
    br.push_back(one);
  }
  j["branches"] = br;
  j["critical_relation"] = v.critical_relation ? json(*v.critical_relation) : json();
  return j;
}

json periodic_json(const PeriodicVerdict& v) {
  return {{"admits_periodic", to_string(v.admits_periodic)},
          {"kappa_condition", v.kappa_condition},
          {"matched_family", v.matched_family ? json(v.matched_family->name()) : json()},
          {"reduced_network", render(v.reduced_network)},
          {"reason", v.reason}};
}

}  // namespace

AnalysisOutcome analyze(const MassActionSystem& sys, const AnalysisOptions& opt) {
  const auto& net = sys.network();
  AnalysisOutcome out;
  json& rep = out.report;
  json errors = json::array();
  rep["report_kind"] = "analysis";
  json reactions = json::array();
  for (std::size_t j = 0; j < net.num_reactions(); ++j) reactions.push_back(render_reaction(net, j));
  rep["network"] = {{"species", net.species()},
                    {"reactions", reactions},
                    {"kappa", sys.kappa()},
                    {"n", net.num_species()},
                    {"m", net.num_reactions()}};
  if (net.num_species() <= 9) rep["network"]["canonical"] = canonical_string(net);
  rep["structural"] = structural_block(sys);
  const auto r = rank(net);

  std::vector<EquilibriumRecord> eqs;
  try {
    json eb{{"tol", opt.solver.tol}};
    if (net.num_species() == 2 && net.num_reactions() == 3 && r == 2) {
      eb["method"] = "planar_log_linear";
      eqs.push_back(planar_equilibrium(sys));
    } else if (r > 0) {
      eb["method"] = "damped_newton_grid";
      eb["starts_per_dim"] = opt.solver.starts_per_dim;
      std::vector<double> x0 = opt.x0.value_or(std::vector<double>(net.num_species(), 1.0));
      auto cls = StoichiometricClass::from_point(net, x0);
      eb["class"] = {{"conservation", matrix_rows(cls.conservation())}, {"values", cls.values()}};
      eqs = equilibria_on_class(sys, cls, opt.solver);
    }
    json recs = json::array();
    for (const auto& e : eqs) recs.push_back(equilibrium_json(e));
    eb["records"] = recs;
    rep["equilibria"] = eb;
  } catch (const PreconditionError& e) {
    errors.push_back(error_entry("equilibria", e));
  }

  if (r == 2 && !eqs.empty()) {
    json jb = json::array();
    for (const auto& e : eqs) {
      try {
        jb.push_back(jacobian_json(sys, e));
      } catch (const PreconditionError& ex) {
        errors.push_back(error_entry("jacobian", ex));
      }
    }
    rep["jacobian"] = {{"tol", opt.solver.tol}, {"records", jb}};
  }

  json vb;
  auto prof = molecularity_profile(net);
  if (net.num_species() == 2 && net.num_reactions() == 3) {
    try {
      auto pv = theorem_verdict_planar(net);
      vb["planar"] = planar_json(pv);
      vb["summary"] = to_string(pv.verdict);
    } catch (const PreconditionError& e) {
      errors.push_back(error_entry("verdict.planar", e));
    }
  }
  if (net.num_reactions() == 3 && prof.is_quadratic() && prof.is_trimolecular()) {
    auto pv = classify_trimolecular(net);
    vb["periodic"] = periodic_json(pv);
    if (!vb.contains("summary")) vb["summary"] = to_string(pv.admits_periodic);
  }
  if (vb.contains("summary")) {
    auto tag = match_family(net);
    vb["family"] = tag ? json(tag->name()) : json();
    rep["verdict"] = vb;
  } else {
    errors.push_back({{"block", "verdict"},
                      {"code", "NoApplicableClassifier"},
                      {"message", "needs three reactions with either two species and bimolecular sources or "
                                  "quadratic sources and trimolecular complexes"}});
    out.exit_code = ExitPrecondition;
  }

  if (opt.orbit && !eqs.empty()) {
    try {
      const auto& e = eqs.front();
      auto radii = section_radii(sys, e, opt.orbit_radii);
      ReturnMapOptions ro;
      ro.integrator.tol = opt.integrator_tol;
      auto sample = return_map(sys, e, radii, ro);
      auto o = classify_orbit_structure(sample, opt.orbit_tol);
      rep["dynamics"] = {{"tol", opt.orbit_tol},
                         {"integrator_tol", opt.integrator_tol},
                         {"orbit_structure", o.label()},
                         {"max_relative_change", o.max_relative_change},
                         {"radii_in", sample.radii_in},
                         {"radii_out", sample.radii_out},
                         {"detail", o.detail},
                         {"sampled_only", true}};
    } catch (const PreconditionError& e) {
      errors.push_back(error_entry("dynamics", e));
    }
  }
  rep["errors"] = errors;
  rep["seed"] = opt.seed;
  return out;
}

}  // namespace crnosc
