#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "crnosc/equilibria.hpp"
#include "crnosc/network.hpp"

namespace crnosc {

enum ExitCode : int { ExitOk = 0, ExitInputError = 1, ExitPrecondition = 2 };

struct AnalysisOptions {
  SolverOptions solver{};
  std::optional<std::vector<double>> x0;  // picks the class when the network is not planar
  bool orbit = false;                     // add a return-map orbit-structure block
  std::vector<double> orbit_radii = {0.05, 0.1, 0.2, 0.3, 0.5};  // fractions of the section reach
  double orbit_tol = 1e-5;
  double integrator_tol = 1e-10;
  std::uint64_t seed = 1;
};

struct AnalysisOutcome {
  nlohmann::json report;
  int exit_code = ExitOk;
};

/// Structural, equilibrium, Jacobian and verdict blocks; exit code 2 when no
/// verdict applies.
AnalysisOutcome analyze(const MassActionSystem& sys, const AnalysisOptions& opt = {});

/// Rounds every floating value to 12 significant digits; NaN and infinities become null.
nlohmann::json rounded(const nlohmann::json& j);
std::string dump_report(const nlohmann::json& j);

nlohmann::json to_json_vector(const std::vector<Rational>& v);

}  // namespace crnosc
