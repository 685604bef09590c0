#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "crnosc/equilibria.hpp"
#include "crnosc/jacobian.hpp"
#include "crnosc/network.hpp"

namespace crnosc {

/// Which of the ten bimolecular source triples a planar network realizes.
/// Template reaction i is network reaction order[i], after swapping the two
/// species when swapped is set. id = 0 means not applicable.
struct SourceCase {
  int id = 0;
  bool swapped = false;
  std::array<std::size_t, 3> order = {0, 1, 2};
};

/// Source points (x, y) of the ten cases, in template order.
const std::array<std::array<std::array<int, 2>, 3>, 10>& ten_source_triples();

SourceCase source_case(const ReactionNetwork& net);

enum class Verdict { NoPeriodicOrbit, CenterForAllKappa, VerticalHopf, SupercriticalHopf, NoAndronovHopf, Undetermined };
std::string to_string(Verdict v);

struct Inequality {
  std::string text;
  bool holds = false;
};

struct PlanarVerdict {
  SourceCase source_case;
  Verdict verdict = Verdict::Undetermined;
  std::array<std::int64_t, 3> c = {0, 0, 0};
  std::array<std::int64_t, 3> d = {0, 0, 0};
  // A positive verdict needs every inequality of some branch.
  std::vector<std::vector<Inequality>> branches;
  bool det_positive = false;  // u > 0, so the equilibrium is not a saddle
  std::optional<std::string> critical_relation;
  std::string reason;
};

/// Requires n = 2, m = 3 and bimolecular sources.
PlanarVerdict theorem_verdict_planar(const ReactionNetwork& net);
/// Recomputes the verdict from the recorded witness data only.
Verdict verdict_from_witness(const PlanarVerdict& v);

/// kappa_j as a function of t: unset entries keep the base value.
struct KappaPath {
  struct Entry {
    std::size_t reaction = 0;
    Rational coefficient = 1;
    bool uses_t = false;
  };
  std::vector<Entry> entries;

  /// "k1=t,k2=1,k3=2*t" style, reactions numbered from one.
  static KappaPath parse(const std::string& text, std::size_t num_reactions);
  std::vector<double> at(const std::vector<double>& base, double t) const;
};

enum class HopfClass { Supercritical, Subcritical, Vertical };
std::string to_string(HopfClass h);

struct LyapunovResult {
  double raw = 0;         // in the original coordinates, transform with |det T| = 1
  double normalized = 0;  // after scaling by the equilibrium and by omega
  double omega = 0;
  double section_gain = 0;  // |T^{-1} e_1|: normal-form radius per unit section radius
  bool vertical_override = false;
  HopfClass classification = HopfClass::Vertical;
};

/// Requires rank two, det J_red > 0 and trace J_red = 0 at eq.
LyapunovResult first_lyapunov_coefficient(const MassActionSystem& sys, const EquilibriumRecord& eq);

/// True when some species occurs in every source and the field divided by it is affine.
bool linear_after_division(const ReactionNetwork& net);

struct HopfPoint {
  std::vector<double> kappa_star;
  double t_star = 0;
  EquilibriumRecord equilibrium;
  double trace_residual = 0;
  double det_value = 0;
  LyapunovResult lyapunov;
};

/// Planar systems only. Brackets trace J = 0 on [t_lo, t_hi] and bisects.
std::optional<HopfPoint> find_hopf_point(const MassActionSystem& sys, const KappaPath& path, double t_lo,
                                         double t_hi, std::size_t samples = 64);

/// Rate constants with trace J = 0 at x = (1, y), mu = 1 (Cases 9 and 10).
std::optional<std::vector<double>> hopf_kappa(const ReactionNetwork& net);

struct BogdanovTakensResidual {
  double trace = 0;
  double det = 0;
  std::vector<double> kappa;
  std::vector<double> equilibrium;
};

/// The octomolecular network 2X -> 4X+3Y+Z, X+Y -> 0, Z -> X on the class
/// x - y + z = C at kappa1 = factor * kappa2 (3+sqrt6)/3, kappa3 = -2 C kappa2/(3+sqrt6).
BogdanovTakensResidual bogdanov_takens_residual(double kappa2, double C, double kappa1_factor = 1.0);

/// Every network with the given sources (one reaction each, in order) and targets of
/// molecularity at most max_target.
std::vector<ReactionNetwork> planar_networks_with_sources(const std::array<std::array<int, 2>, 3>& sources,
                                                          int max_target);

}  // namespace crnosc
