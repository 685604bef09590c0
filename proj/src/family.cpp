#include "crnosc/family.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace crnosc {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::GeneralisedLotka: return "GeneralisedLotka";
    case FamilyKind::Ivanova: return "Ivanova";
    case FamilyKind::ThreeSpeciesFamily: return "ThreeSpeciesFamily";
    case FamilyKind::GeneralisedLVA: return "GeneralisedLVA";
    case FamilyKind::LiftedLVA: return "LiftedLVA";
    case FamilyKind::TetraFamily: return "TetraFamily";
    case FamilyKind::HeptaFamily: return "HeptaFamily";
    case FamilyKind::PentaCase8: return "PentaCase8";
  }
  return "?";
}

const std::vector<FamilyKind>& all_family_kinds() {
  static const std::vector<FamilyKind> kinds = {
      FamilyKind::GeneralisedLotka, FamilyKind::Ivanova,     FamilyKind::ThreeSpeciesFamily,
      FamilyKind::GeneralisedLVA,   FamilyKind::LiftedLVA,   FamilyKind::TetraFamily,
      FamilyKind::HeptaFamily,      FamilyKind::PentaCase8};
  return kinds;
}

std::optional<FamilyKind> family_kind_from_string(const std::string& s) {
  for (auto k : all_family_kinds())
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::size_t family_species_count(FamilyKind k) {
  switch (k) {
    case FamilyKind::Ivanova:
    case FamilyKind::ThreeSpeciesFamily:
    case FamilyKind::LiftedLVA: return 3;
    default: return 2;
  }
}

bool family_uses_c(FamilyKind k) {
  return k == FamilyKind::GeneralisedLotka || k == FamilyKind::ThreeSpeciesFamily ||
         k == FamilyKind::HeptaFamily || k == FamilyKind::PentaCase8;
}

bool family_uses_d(FamilyKind k) { return k != FamilyKind::Ivanova; }

bool family_parameters_valid(FamilyKind k, std::int64_t c, std::int64_t d) {
  if (!family_uses_c(k) && c != 0) return false;
  if (!family_uses_d(k) && d != 0) return false;
  switch (k) {
    case FamilyKind::GeneralisedLotka:
    case FamilyKind::ThreeSpeciesFamily: return c >= 1 && d >= 1;
    case FamilyKind::Ivanova: return true;
    case FamilyKind::GeneralisedLVA:
    case FamilyKind::LiftedLVA: return d >= 1;
    case FamilyKind::TetraFamily: return d >= 0;
    case FamilyKind::HeptaFamily: return c >= 0 && d >= 0 && c + d > 0;
    case FamilyKind::PentaCase8: return c >= -1 && d >= 0 && (c != 0 || d != 0);
  }
  return false;
}

std::string FamilyTag::name() const {
  std::string s = to_string(kind);
  if (family_uses_c(kind))
    s += "(c=" + std::to_string(c) + ",d=" + std::to_string(d) + ")";
  else if (family_uses_d(kind))
    s += "(d=" + std::to_string(d) + ")";
  return s;
}

namespace {

// Columns given as (source, target) over the template species.
ReactionNetwork from_columns(std::size_t n, const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>& cols) {
  IntMatrix src(n, cols.size(), 0), st(n, cols.size(), 0);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      src(i, j) = cols[j].first[i];
      st(i, j) = cols[j].second[i] - cols[j].first[i];
    }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(generic_species_name(i));
  return ReactionNetwork(names, src, st);
}

}  // namespace

ReactionNetwork family_network(FamilyKind k, std::int64_t c, std::int64_t d) {
  if (!family_parameters_valid(k, c, d))
    throw std::invalid_argument("parameters outside the domain of " + to_string(k));
  switch (k) {
    case FamilyKind::GeneralisedLotka:
      return from_columns(2, {{{1, 0}, {1 + c, 0}}, {{1, 1}, {0, 1 + d}}, {{0, 1}, {0, 0}}});
    case FamilyKind::Ivanova:
      return from_columns(3, {{{1, 0, 1}, {2, 0, 0}}, {{1, 1, 0}, {0, 2, 0}}, {{0, 1, 1}, {0, 0, 2}}});
    case FamilyKind::ThreeSpeciesFamily:
      return from_columns(3, {{{1, 0, 1}, {1 + c, 0, 0}}, {{1, 1, 0}, {0, 0, 0}}, {{0, 1, 1}, {0, 1 + c * d, 1 + d}}});
    case FamilyKind::GeneralisedLVA:
      return from_columns(2, {{{2, 0}, {3, 0}}, {{1, 1}, {0, 1 + d}}, {{0, 1}, {0, 0}}});
    case FamilyKind::LiftedLVA:
      return from_columns(3, {{{2, 0, 0}, {3, 0, 0}}, {{1, 1, 0}, {0, d + 1, d}}, {{0, 1, 1}, {0, 0, 0}}});
    case FamilyKind::TetraFamily:
      return from_columns(2, {{{2, 0}, {3, 1}}, {{1, 1}, {0, 1 + d}}, {{0, 1}, {0, 0}}});
    case FamilyKind::HeptaFamily:
      return from_columns(2, {{{2, 0}, {4, 3}}, {{1, 1}, {0, 0}}, {{0, 0}, {c, d}}});
    case FamilyKind::PentaCase8:
      return from_columns(2, {{{2, 0}, {3, 2}}, {{1, 1}, {0, 0}}, {{1, 0}, {1 + c, d}}});
  }
  throw std::invalid_argument("unknown family");
}

namespace {

// Parameters read off a candidate already arranged in template order.
std::pair<std::int64_t, std::int64_t> extract(FamilyKind k, const IntMatrix& g) {
  switch (k) {
    case FamilyKind::GeneralisedLotka: return {g(0, 0), g(1, 1)};
    case FamilyKind::Ivanova: return {0, 0};
    case FamilyKind::ThreeSpeciesFamily: return {g(0, 0), g(2, 2)};
    case FamilyKind::GeneralisedLVA:
    case FamilyKind::LiftedLVA:
    case FamilyKind::TetraFamily: return {0, g(1, 1)};
    case FamilyKind::HeptaFamily:
    case FamilyKind::PentaCase8: return {g(0, 2), g(1, 2)};
  }
  return {0, 0};
}

bool same_matrices(const ReactionNetwork& a, const ReactionNetwork& b) {
  return a.source() == b.source() && a.stoich() == b.stoich();
}

std::optional<FamilyTag> match_kind(const ReactionNetwork& net, FamilyKind k) {
  const std::size_t n = net.num_species();
  if (net.num_reactions() != 3 || n != family_species_count(k)) return std::nullopt;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    auto ps = permute_species(net, perm);
    std::vector<std::size_t> order = {0, 1, 2};
    do {
      auto cand = permute_reactions(ps, order);
      auto [c, d] = extract(k, cand.stoich());
      if (!family_parameters_valid(k, c, d)) continue;
      if (same_matrices(cand, family_network(k, c, d))) return FamilyTag{k, c, d, perm, order};
    } while (std::next_permutation(order.begin(), order.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace

std::optional<FamilyTag> match_family(const ReactionNetwork& net, FamilyKind only) { return match_kind(net, only); }

std::optional<FamilyTag> match_family(const ReactionNetwork& net) {
  for (auto k : all_family_kinds())
    if (auto tag = match_kind(net, k)) return tag;
  return std::nullopt;
}

bool verify_family_tag(const ReactionNetwork& net, const FamilyTag& tag) {
  if (!family_parameters_valid(tag.kind, tag.c, tag.d)) return false;
  if (tag.perm.size() != net.num_species() || tag.order.size() != net.num_reactions()) return false;
  auto cand = permute_reactions(permute_species(net, tag.perm), tag.order);
  return same_matrices(cand, family_network(tag.kind, tag.c, tag.d));
}

std::vector<double> template_kappa(const FamilyTag& tag, const std::vector<double>& kappa) {
  std::vector<double> out;
  for (auto j : tag.order) out.push_back(kappa.at(j));
  return out;
}

}  // namespace crnosc
