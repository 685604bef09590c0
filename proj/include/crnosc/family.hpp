#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnosc/network.hpp"

namespace crnosc {

// Listed in matching priority order.
enum class FamilyKind {
  GeneralisedLotka,    // X -> (1+c)X, X+Y -> (1+d)Y, Y -> 0
  Ivanova,             // Z+X -> 2X, X+Y -> 2Y, Y+Z -> 2Z
  ThreeSpeciesFamily,  // Z+X -> (1+c)X, X+Y -> 0, Y+Z -> (1+cd)Y + (1+d)Z
  GeneralisedLVA,      // 2X -> 3X, X+Y -> (1+d)Y, Y -> 0
  LiftedLVA,           // 2X -> 3X, X+Y -> (d+1)Y + dZ, Y+Z -> 0
  TetraFamily,         // 2X -> 3X+Y, X+Y -> (1+d)Y, Y -> 0
  HeptaFamily,         // 2X -> 4X+3Y, X+Y -> 0, 0 -> cX+dY
  PentaCase8,          // 2X -> 3X+2Y, X+Y -> 0, X -> (1+c)X+dY
};

std::string to_string(FamilyKind k);
std::optional<FamilyKind> family_kind_from_string(const std::string& s);
const std::vector<FamilyKind>& all_family_kinds();

struct FamilyTag {
  FamilyKind kind = FamilyKind::GeneralisedLotka;
  std::int64_t c = 0;
  std::int64_t d = 0;
  // Template species i is species perm[i] of the matched network and
  // template reaction j is reaction order[j].
  std::vector<std::size_t> perm;
  std::vector<std::size_t> order;

  std::string name() const;  // e.g. "GeneralisedLotka(c=1,d=2)"
};

std::size_t family_species_count(FamilyKind k);
bool family_uses_c(FamilyKind k);
bool family_uses_d(FamilyKind k);
/// Whether (c, d) lies in the family's parameter domain.
bool family_parameters_valid(FamilyKind k, std::int64_t c, std::int64_t d);

/// The template network on species X, Y(, Z). Throws std::invalid_argument
/// outside the parameter domain.
ReactionNetwork family_network(FamilyKind k, std::int64_t c = 0, std::int64_t d = 0);

/// First template (in priority order, then species permutation and reaction
/// order in lexicographic order) that reproduces the network exactly.
std::optional<FamilyTag> match_family(const ReactionNetwork& net);
std::optional<FamilyTag> match_family(const ReactionNetwork& net, FamilyKind only);

/// Re-applies the tag's permutations and compares with the template.
bool verify_family_tag(const ReactionNetwork& net, const FamilyTag& tag);

/// Rate vector of the template's reaction order: kappa_template[j] = kappa[order[j]].
std::vector<double> template_kappa(const FamilyTag& tag, const std::vector<double>& kappa);

}  // namespace crnosc
