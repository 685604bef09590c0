#pragma once

#include <optional>
#include <string>

#include "crnosc/family.hpp"
#include "crnosc/network.hpp"

namespace crnosc {

struct PeriodicVerdict {
  enum class Admits { ForSomeKappa, Never };
  Admits admits_periodic = Admits::Never;
  std::string kappa_condition;  // "all kappa", "k2=k3>k1", or empty
  std::optional<FamilyTag> matched_family;
  ReactionNetwork reduced_network;
  std::string reason;  // set when Never
};

std::string to_string(PeriodicVerdict::Admits a);

/// Requires three reactions, quadratic sources and trimolecular complexes.
PeriodicVerdict classify_trimolecular(const ReactionNetwork& net);

/// Independent route: structural dispatch on the positive-divergence reaction
/// and the species count, then comparison of the ODE with the three
/// oscillating forms over all species and reaction relabelings.
PeriodicVerdict::Admits classify_trimolecular_slow(const ReactionNetwork& net);

/// Splits every reaction whose target has molecularity >= 4 into unit-step
/// reactions, one per changed species, with rate kappa |c_i|.
MassActionSystem expand_to_trimolecular(const MassActionSystem& sys);
ReactionNetwork expand_to_trimolecular(const ReactionNetwork& net);

}  // namespace crnosc
