#pragma once

#include <optional>
#include <vector>

#include "crnosc/family.hpp"
#include "crnosc/network.hpp"

namespace crnosc {

/// A positive state with kappa o x^{Gamma_l^T} = mu u.
struct EquilibriumRecord {
  std::vector<double> x_bar;
  double mu = 0;
  std::vector<double> u;
  std::optional<std::vector<double>> class_constant;
  std::optional<std::vector<Rational>> x_exact;
  std::optional<Rational> mu_exact;
  double residual = 0;      // max-norm of the right-hand side at x_bar
  bool degenerate = false;  // restricted Jacobian singular at the root
};

/// Gamma~ with Gamma = Gamma~ Gamma[rows, :]; rows must index a basis of the row space.
RatMatrix gamma_tilde(const ReactionNetwork& net, const std::vector<std::size_t>& rows);

/// The affine set (x0 + im Gamma), parametrized by the coordinates of the
/// basis species R: x(s)[R] = s.
class StoichiometricClass {
 public:
  static StoichiometricClass from_point(const ReactionNetwork& net, const std::vector<double>& x0);
  /// W has rows w with w^T Gamma = 0 spanning the left kernel; values = W x.
  static StoichiometricClass from_conserved(const ReactionNetwork& net, const RatMatrix& w,
                                            const std::vector<double>& values);
  /// Uses the primitive left-kernel basis of Gamma.
  static StoichiometricClass from_conserved(const ReactionNetwork& net, const std::vector<double>& values);

  std::size_t dimension() const { return rows_.size(); }
  const std::vector<std::size_t>& basis_rows() const { return rows_; }
  const RatMatrix& conservation() const { return w_; }
  const std::vector<double>& values() const { return values_; }
  const RatMatrix& gamma_tilde() const { return gt_; }
  /// Columns spanning im Gamma.
  RealMatrix basis() const { return to_real(gt_); }

  std::vector<double> point(const std::vector<double>& s) const;
  std::vector<double> coordinates(const std::vector<double>& x) const;
  std::vector<double> conserved(const std::vector<double>& x) const;

 private:
  std::vector<std::size_t> rows_;
  RatMatrix w_;
  RatMatrix gt_;
  std::vector<double> values_;
  std::vector<double> base_;  // base_[R] = 0
};

struct SolverOptions {
  std::size_t starts_per_dim = 32;
  double lo = 1e-3;
  double hi = 1e3;
  double tol = 1e-10;
  std::size_t max_iter = 100;
  double dedup_tol = 1e-9;
};

/// Requires n = 2, m = 3, rank 2. Throws PreconditionError("SourcesCollinear")
/// or PreconditionError("NoPositiveEquilibrium").
EquilibriumRecord planar_equilibrium(const MassActionSystem& sys);

std::vector<EquilibriumRecord> equilibria_on_class(const MassActionSystem& sys, const StoichiometricClass& cls,
                                                   const SolverOptions& opts = {});

/// Fills mu and u for a state: u = c x d for rank-two three-reaction networks,
/// otherwise the primitive kernel vector when ker Gamma is a line, otherwise the rates.
EquilibriumRecord make_record(const MassActionSystem& sys, const std::vector<double>& x);

struct EquilibriumRay {
  std::vector<double> direction;
  std::optional<std::vector<Rational>> direction_exact;
  double t_min = 0;  // open interval (t_min, infinity)
};

/// LiftedLVA and ThreeSpeciesFamily only; kappa is in the matched network's reaction order.
EquilibriumRay equilibrium_ray(const FamilyTag& tag, const std::vector<double>& kappa);
EquilibriumRay equilibrium_ray(const FamilyTag& tag, const std::vector<Rational>& kappa);

}  // namespace crnosc
