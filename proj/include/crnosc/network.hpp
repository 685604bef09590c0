#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crnosc/errors.hpp"
#include "crnosc/matrix.hpp"
#include "crnosc/rational.hpp"

namespace crnosc {

struct Complex {
  std::vector<std::int64_t> coefficients;

  std::int64_t molecularity() const;
  friend bool operator==(const Complex&, const Complex&) = default;
};

/// Species list with integer source matrix and stoichiometric matrix (n x m).
/// Construction enforces: nonnegative sources and targets, every reaction
/// changes something, distinct species names.
class ReactionNetwork {
 public:
  ReactionNetwork() = default;
  ReactionNetwork(std::vector<std::string> species, IntMatrix source, IntMatrix stoich);

  std::size_t num_species() const { return species_.size(); }
  std::size_t num_reactions() const { return source_.cols(); }

  const std::vector<std::string>& species() const { return species_; }
  const IntMatrix& source() const { return source_; }
  const IntMatrix& stoich() const { return stoich_; }
  IntMatrix target() const;

  Complex source_complex(std::size_t j) const;
  Complex target_complex(std::size_t j) const;

  /// True when two reactions share both source and target.
  bool has_duplicate_reactions() const;

  friend bool operator==(const ReactionNetwork&, const ReactionNetwork&) = default;

 private:
  std::vector<std::string> species_;
  IntMatrix source_;
  IntMatrix stoich_;
};

/// A network with positive rate constants. Each rate keeps its exact rational
/// value when one is known; `kappa()` always holds the floating value.
class MassActionSystem {
 public:
  MassActionSystem() = default;
  MassActionSystem(ReactionNetwork net, std::vector<double> kappa);
  MassActionSystem(ReactionNetwork net, std::vector<Rational> kappa);

  const ReactionNetwork& network() const { return net_; }
  const std::vector<double>& kappa() const { return kappa_; }
  bool exact() const;
  /// Throws std::logic_error unless exact().
  std::vector<Rational> exact_kappa() const;
  const std::vector<std::optional<Rational>>& kappa_exact() const { return exact_; }

  MassActionSystem with_kappa(std::vector<double> kappa) const { return {net_, std::move(kappa)}; }
  MassActionSystem with_kappa(std::vector<Rational> kappa) const { return {net_, std::move(kappa)}; }

 private:
  ReactionNetwork net_;
  std::vector<double> kappa_;
  std::vector<std::optional<Rational>> exact_;
};

struct ParsedSystem {
  ReactionNetwork network;
  std::vector<Rational> kappa;
  std::vector<std::string> warnings;

  MassActionSystem system() const { return {network, kappa}; }
};

/// Grammar: statements separated by ';' or newlines, '#' starts a comment.
///   reaction := complex "->" complex ["@" rational]
///   complex  := "0" | term ("+" term)*
///   term     := [integer] name
/// An optional leading statement "species A, B, C" fixes the species order;
/// otherwise species are ordered by first appearance. Throws ParseError.
ParsedSystem parse_system(std::string_view text);
ReactionNetwork parse_network(std::string_view text);

/// Inverse of parse_system: parse_system(render(...)) reproduces the input.
std::string render(const ReactionNetwork& net);
std::string render(const MassActionSystem& sys);
std::string render_reaction(const ReactionNetwork& net, std::size_t j);

nlohmann::json to_json(const ReactionNetwork& net);
nlohmann::json to_json(const MassActionSystem& sys);
MassActionSystem system_from_json(const nlohmann::json& j);

/// Species relabeling: row i of the result is row perm[i] of the input.
ReactionNetwork permute_species(const ReactionNetwork& net, const std::vector<std::size_t>& perm);
/// Column j of the result is column order[j] of the input.
ReactionNetwork permute_reactions(const ReactionNetwork& net, const std::vector<std::size_t>& order);

/// Least encoding of (source, target) columns over all species permutations and
/// reaction orders; species are renamed X, Y, Z, W, V, U, ... in canonical order.
ReactionNetwork canonical_form(const ReactionNetwork& net);
std::string canonical_string(const ReactionNetwork& net);
/// Canonical form together with the species permutation that produced it.
std::pair<ReactionNetwork, std::vector<std::size_t>> canonical_form_with_permutation(
    const ReactionNetwork& net);

std::string generic_species_name(std::size_t i);

struct MolecularityProfile {
  std::int64_t max_source = 0;
  std::int64_t max_target = 0;

  bool is_quadratic() const { return max_source <= 2; }
  bool is_trimolecular() const { return std::max(max_source, max_target) <= 3; }
};

MolecularityProfile molecularity_profile(const ReactionNetwork& net);

std::vector<std::size_t> trivial_species(const ReactionNetwork& net);
/// Removes trivial species, then any reaction whose source now equals its target.
ReactionNetwork drop_trivial_species(const ReactionNetwork& net);

namespace detail {
inline double ipow(double x, std::int64_t e) {
  double r = 1;
  for (std::int64_t k = 0; k < e; ++k) r *= x;
  return r;
}
inline Rational ipow(const Rational& x, std::int64_t e) {
  Rational r = 1;
  for (std::int64_t k = 0; k < e; ++k) r *= x;
  return r;
}
}  // namespace detail

/// kappa_j * x^{a_j} for every reaction, with 0^0 = 1.
template <class T>
std::vector<T> reaction_rates(const ReactionNetwork& net, const std::vector<T>& kappa,
                              const std::vector<T>& x) {
  if (kappa.size() != net.num_reactions() || x.size() != net.num_species())
    throw std::invalid_argument("reaction_rates: dimension mismatch");
  std::vector<T> v(net.num_reactions());
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    T r = kappa[j];
    for (std::size_t i = 0; i < net.num_species(); ++i) {
      auto a = net.source()(i, j);
      if (a != 0) r *= detail::ipow(x[i], a);
    }
    v[j] = r;
  }
  return v;
}

/// Gamma (kappa o x^{Gamma_l^T}).
template <class T>
std::vector<T> mass_action_rhs(const ReactionNetwork& net, const std::vector<T>& kappa,
                               const std::vector<T>& x) {
  auto v = reaction_rates(net, kappa, x);
  std::vector<T> f(net.num_species(), T(0));
  for (std::size_t i = 0; i < net.num_species(); ++i)
    for (std::size_t j = 0; j < net.num_reactions(); ++j) {
      auto c = net.stoich()(i, j);
      if (c != 0) f[i] += T(static_cast<long>(c)) * v[j];
    }
  return f;
}

std::vector<double> mass_action_rhs(const MassActionSystem& sys, const std::vector<double>& x);
/// Exact evaluation; requires sys.exact().
std::vector<Rational> mass_action_rhs(const MassActionSystem& sys, const std::vector<Rational>& x);

}  // namespace crnosc
