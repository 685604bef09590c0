#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "crnosc/equilibria.hpp"
#include "crnosc/family.hpp"
#include "crnosc/hopf.hpp"
#include "crnosc/network.hpp"

namespace crnosc {

using State = std::vector<double>;

struct IntegratorOptions {
  double tol = 1e-10;           // relative per-step tolerance
  double abs_tol = std::numeric_limits<double>::min();  // absolute floor; relative control near zero
  double initial_step = 1e-3;
  double blowup = 1e12;
  std::size_t max_steps = 20'000'000;
  std::vector<double> sample_times;  // when nonempty, only these times are recorded
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::size_t steps = 0;
  std::size_t rejected = 0;  // steps halved to keep the state nonnegative
  double tol = 0;
  bool blow_up = false;
  bool truncated = false;  // stopped before T (blow-up or step budget)
};

/// Autonomous vector field with an admissibility test applied after each step.
struct VectorField {
  std::size_t dim = 0;
  std::function<void(const State&, State&)> rhs;
  std::function<bool(const State&)> admissible;  // empty: every state allowed
};

/// Called after every accepted step with the step endpoints and a dense
/// interpolant valid on [t0, t1]. Returning false stops the integration.
using StepObserver = std::function<bool(double t0, const State& x0, double t1, const State& x1,
                                        const std::function<State(double)>& dense)>;

/// Dormand-Prince 5(4) with dense output. Steps that leave the admissible set
/// are retried from the previous state with half the step.
Trajectory integrate_field(const VectorField& f, const State& x0, double T, const IntegratorOptions& opt = {},
                           const StepObserver& observer = {});

/// Mass-action integration on the closed nonnegative orthant. Requires x0 >= 0, T > 0.
Trajectory integrate(const MassActionSystem& sys, const State& x0, double T, const IntegratorOptions& opt = {});

/// Field in class coordinates s = x[basis_rows] of a stoichiometric class.
VectorField class_field(const MassActionSystem& sys, const StoichiometricClass& cls);

void write_csv(std::ostream& os, const Trajectory& tr, const std::vector<std::string>& names);

// ---------------------------------------------------------------------------

struct ReturnMapOptions {
  std::size_t returns = 3;
  double max_time = 2000;
  double min_normal_speed = 1e-8;
  IntegratorOptions integrator{};
  unsigned workers = 1;
};

struct ReturnMapSample {
  State anchor;     // equilibrium in class coordinates
  State direction;  // section direction in class coordinates
  std::vector<std::size_t> basis_rows;
  std::vector<double> radii_in;
  std::vector<double> radii_out;  // first return; NaN when none
  std::vector<std::vector<double>> returns;       // successive return radii per start
  std::vector<std::vector<double>> crossing_times;
  std::vector<double> min_normal_speed;  // smallest |normal velocity| over recorded crossings
  std::vector<bool> returned;
};

/// Section: half-line from the equilibrium along the first class coordinate.
ReturnMapSample return_map(const MassActionSystem& sys, const EquilibriumRecord& eq, const std::vector<double>& radii,
                           const ReturnMapOptions& opt = {});

/// Start radii f * min(max x_bar, distance from the equilibrium to the orthant
/// boundary along the section) for each fraction f.
std::vector<double> section_radii(const MassActionSystem& sys, const EquilibriumRecord& eq,
                                  const std::vector<double>& fractions);

struct OrbitStructure {
  enum class Kind { Center, StableCycle, Spiral, NonReturning, Indeterminate };
  enum class Direction { None, In, Out };
  Kind kind = Kind::Indeterminate;
  Direction direction = Direction::None;
  double radius = 0;           // StableCycle
  double max_relative_change = 0;
  std::string detail;
  std::string label() const;  // "Center", "StableCycle(r=...)", "Spiral(in)", ...
};

/// Center needs at least five radii and three returns per radius below tol.
OrbitStructure classify_orbit_structure(const ReturnMapSample& s, double tol);

// ---------------------------------------------------------------------------

/// First integral or Lyapunov function of a matched family, evaluated at the
/// network's state x with the network's rate vector. Supports
/// GeneralisedLotka, Ivanova, ThreeSpeciesFamily and LiftedLVA (the latter
/// returns V(v, w) on the class through x).
double conserved_quantity(const FamilyTag& tag, const std::vector<double>& kappa, const State& x);

/// First integral of a diagonal-free Lotka-Volterra system with n = 2 or 3.
double lotka_volterra_integral(const MassActionSystem& sys, const State& x);

double drift(const Trajectory& tr, const std::function<double(const State&)>& v);
/// Largest change of any primitive left-kernel combination w.x along tr.
double linear_drift(const ReactionNetwork& net, const Trajectory& tr);

// ---------------------------------------------------------------------------

/// v = y/x, w = 1/x on the class z - y = C, with time rescaled by dtau = x dt:
///   v' = v (r0 + b00 v + b01 w),  w' = w (r1 + b10 v).
struct PredatorPrey {
  FamilyTag tag;
  double k1 = 0, k2 = 0, k3 = 0, C = 0;
  double r0 = 0, b00 = 0, b01 = 0, r1 = 0, b10 = 0;
  std::optional<std::pair<double, double>> equilibrium;

  State rhs(const State& vw) const;
  VectorField field() const;
  std::pair<double, double> to_vw(const State& x) const;
  State from_vw(double v, double w) const;  // network species order
  /// Requires an equilibrium.
  double lyapunov(double v, double w) const;
};

PredatorPrey predator_prey_transform(const MassActionSystem& sys, double C);

// ---------------------------------------------------------------------------

struct AmplitudePoint {
  double t = 0;
  double offset = 0;  // |t - t*|
  std::optional<double> radius;
  std::string orbit;  // orbit-structure label at this parameter
};

struct AmplitudeScan {
  double t_star = 0;
  std::vector<AmplitudePoint> points;
  double slope = 0;  // least-squares fit radius^2 = slope * offset
  double relative_residual = std::numeric_limits<double>::infinity();      // ||r^2 - fit|| / ||r^2||
  double max_relative_residual = std::numeric_limits<double>::infinity();  // max |r^2 - fit| / r^2
  bool all_cycles_found = false;
};

struct AmplitudeScanOptions {
  double r_min_fraction = 1e-3;  // radii relative to the equilibrium norm
  double r_max_fraction = 0.9;
  std::size_t coarse = 24;
  ReturnMapOptions return_map{};
};

/// For each parameter value, the stable cycle radius on the section (return-map
/// fixed point with contracting slope), then a fit of radius^2 against |t - t*|.
/// Planar systems only.
AmplitudeScan hopf_amplitude_scan(const MassActionSystem& base, const KappaPath& path, double t_star,
                                  const std::vector<double>& ts, const AmplitudeScanOptions& opt = {});

}  // namespace crnosc
