#include "crnosc/classifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "crnosc/stoich.hpp"

namespace crnosc {

std::string to_string(PeriodicVerdict::Admits a) {
  return a == PeriodicVerdict::Admits::ForSomeKappa ? "ForSomeKappa" : "Never";
}

namespace {

void require_trimolecular(const ReactionNetwork& net) {
  auto prof = molecularity_profile(net);
  if (net.num_reactions() != 3 || !prof.is_quadratic() || !prof.is_trimolecular())
    throw PreconditionError("NotTrimolecular", "needs three reactions, quadratic sources and trimolecular complexes");
}

bool has_two_to_three(const ReactionNetwork& net) {
  for (std::size_t j = 0; j < net.num_reactions(); ++j)
    for (std::size_t i = 0; i < net.num_species(); ++i) {
      bool ok = net.source()(i, j) == 2 && net.stoich()(i, j) == 1;
      for (std::size_t k = 0; k < net.num_species() && ok; ++k)
        if (k != i) ok = net.source()(k, j) == 0 && net.stoich()(k, j) == 0;
      if (ok) return true;
    }
  return false;
}

}  // namespace

PeriodicVerdict classify_trimolecular(const ReactionNetwork& net) {
  require_trimolecular(net);
  PeriodicVerdict v;
  v.reduced_network = drop_trivial_species(net);
  const auto& red = v.reduced_network;
  auto never = [&](std::string reason) {
    v.admits_periodic = PeriodicVerdict::Admits::Never;
    v.reason = std::move(reason);
    return v;
  };
  if (red.num_reactions() != 3 || rank(red) != 2) return never("rank_not_two");
  if (!dynamically_nontrivial(red).nontrivial) return never("dynamically_trivial");
  v.matched_family = match_family(red);
  if (v.matched_family) {
    const auto& tag = *v.matched_family;
    auto k = [&](std::size_t i) { return "k" + std::to_string(tag.order[i] + 1); };
    switch (tag.kind) {
      case FamilyKind::GeneralisedLotka:
        if (tag.c <= 2 && tag.d <= 2) {
          v.admits_periodic = PeriodicVerdict::Admits::ForSomeKappa;
          v.kappa_condition = "all kappa";
          return v;
        }
        break;
      case FamilyKind::Ivanova:
        v.admits_periodic = PeriodicVerdict::Admits::ForSomeKappa;
        v.kappa_condition = "all kappa";
        return v;
      case FamilyKind::LiftedLVA:
        if (tag.d == 1) {
          v.admits_periodic = PeriodicVerdict::Admits::ForSomeKappa;
          v.kappa_condition = k(1) + "=" + k(2) + ">" + k(0);
          return v;
        }
        break;
      case FamilyKind::GeneralisedLVA: return never("generalised_lva");
      default: break;
    }
  }
  if (source_geometry(red).collinear) return never("sources_collinear");
  switch (dulac_divergence_class(red)) {
    case DivergenceClass::NegativeEverywhere: return never("divergence_negative");
    case DivergenceClass::IdenticallyZero: return never("no_family_match");
    case DivergenceClass::Indefinite: break;
  }
  const std::size_t n = red.num_species();
  if (n == 2 || n == 4) return never("saddle");
  if (n >= 5) return never("no_positive_equilibrium");
  return never("no_family_match");
}

namespace {

// A mass-action ODE as a set of terms: (species, source monomial, rate label) -> coefficient.
using OdeTerms = std::map<std::tuple<std::size_t, std::vector<std::int64_t>, std::size_t>, std::int64_t>;

OdeTerms ode_terms(const ReactionNetwork& net, const std::vector<std::size_t>& sigma,
                   const std::vector<std::size_t>& pi, const std::vector<std::size_t>& rate_label) {
  // Species i of the result is species sigma[i] of net; reaction j is reaction pi[j].
  OdeTerms t;
  const std::size_t n = net.num_species();
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    std::vector<std::int64_t> mono(n);
    for (std::size_t i = 0; i < n; ++i) mono[i] = net.source()(sigma[i], pi[j]);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = net.stoich()(sigma[i], pi[j]);
      if (c != 0) t[{i, mono, rate_label[j]}] += c;
    }
  }
  for (auto it = t.begin(); it != t.end();)
    it = it->second == 0 ? t.erase(it) : std::next(it);
  return t;
}

OdeTerms make_terms(std::initializer_list<std::tuple<std::size_t, std::vector<std::int64_t>, std::size_t, std::int64_t>> l) {
  OdeTerms t;
  for (const auto& [i, m, k, c] : l) t[{i, m, k}] += c;
  return t;
}

// (I): x' = x(k1 c - k2 y), y' = y(k2 d x - k3)
OdeTerms form_one(std::int64_t c, std::int64_t d) {
  return make_terms({{0, {1, 0}, 0, c}, {0, {1, 1}, 1, -1}, {1, {1, 1}, 1, d}, {1, {0, 1}, 2, -1}});
}

// (II): x' = x(k1 z - k2 y), y' = y(k2 x - k3 z), z' = z(k3 y - k1 x)
OdeTerms form_two() {
  return make_terms({{0, {1, 0, 1}, 0, 1},
                     {0, {1, 1, 0}, 1, -1},
                     {1, {1, 1, 0}, 1, 1},
                     {1, {0, 1, 1}, 2, -1},
                     {2, {0, 1, 1}, 2, 1},
                     {2, {1, 0, 1}, 0, -1}});
}

// (III) before imposing k2 = k3: x' = x(k1 x - k2 y), y' = z' = k2 xy - k3 yz
OdeTerms form_three() {
  return make_terms({{0, {2, 0, 0}, 0, 1},
                     {0, {1, 1, 0}, 1, -1},
                     {1, {1, 1, 0}, 1, 1},
                     {1, {0, 1, 1}, 2, -1},
                     {2, {1, 1, 0}, 1, 1},
                     {2, {0, 1, 1}, 2, -1}});
}

bool matches_any(const ReactionNetwork& net, const std::vector<OdeTerms>& forms) {
  const std::size_t n = net.num_species();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  const std::vector<std::size_t> labels = {0, 1, 2};
  do {
    std::vector<std::size_t> pi = {0, 1, 2};
    do {
      auto t = ode_terms(net, sigma, pi, labels);
      for (const auto& f : forms)
        if (t == f) return true;
    } while (std::next_permutation(pi.begin(), pi.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

}  // namespace

PeriodicVerdict::Admits classify_trimolecular_slow(const ReactionNetwork& net) {
  require_trimolecular(net);
  using A = PeriodicVerdict::Admits;
  // Remove trivial species by hand.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < net.num_species(); ++i) {
    bool trivial = true;
    for (std::size_t j = 0; j < 3; ++j) trivial = trivial && net.stoich()(i, j) == 0;
    if (!trivial) keep.push_back(i);
  }
  IntMatrix src(keep.size(), 3), st(keep.size(), 3);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < keep.size(); ++a) {
    names.push_back(net.species()[keep[a]]);
    for (std::size_t j = 0; j < 3; ++j) {
      src(a, j) = net.source()(keep[a], j);
      st(a, j) = net.stoich()(keep[a], j);
    }
  }
  ReactionNetwork red(names, src, st);
  if (rank(red.stoich()) != 2) return A::Never;
  auto cert = nontrivial_by_fourier_motzkin(red);
  if (!cert.nontrivial) return A::Never;
  const std::size_t n = red.num_species();
  if (!has_two_to_three(red)) {
    if (n == 2) {
      std::vector<OdeTerms> forms;
      for (std::int64_t c : {1, 2})
        for (std::int64_t d : {1, 2}) forms.push_back(form_one(c, d));
      return matches_any(red, forms) ? A::ForSomeKappa : A::Never;
    }
    if (n == 3) return matches_any(red, {form_two()}) ? A::ForSomeKappa : A::Never;
    return A::Never;
  }
  if (n == 3) return matches_any(red, {form_three()}) ? A::ForSomeKappa : A::Never;
  return A::Never;
}

ReactionNetwork expand_to_trimolecular(const ReactionNetwork& net) {
  std::vector<double> ones(net.num_reactions(), 1.0);
  return expand_to_trimolecular(MassActionSystem(net, ones)).network();
}

MassActionSystem expand_to_trimolecular(const MassActionSystem& sys) {
  const auto& net = sys.network();
  if (!molecularity_profile(net).is_quadratic())
    throw PreconditionError("NotQuadratic", "expansion needs quadratic sources");
  const std::size_t n = net.num_species();
  std::vector<std::vector<std::int64_t>> src_cols, st_cols;
  std::vector<std::optional<Rational>> exact;
  std::vector<double> kap;
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    auto src = net.source().col(j), st = net.stoich().col(j);
    if (net.target_complex(j).molecularity() <= 3) {
      src_cols.push_back(src);
      st_cols.push_back(st);
      kap.push_back(sys.kappa()[j]);
      exact.push_back(sys.kappa_exact()[j]);
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (st[i] == 0) continue;
      std::vector<std::int64_t> unit(n, 0);
      unit[i] = st[i] > 0 ? 1 : -1;
      src_cols.push_back(src);
      st_cols.push_back(unit);
      auto mult = std::llabs(st[i]);
      kap.push_back(sys.kappa()[j] * static_cast<double>(mult));
      if (sys.kappa_exact()[j])
        exact.push_back(*sys.kappa_exact()[j] * Rational(static_cast<long>(mult)));
      else
        exact.push_back(std::nullopt);
    }
  }
  IntMatrix a(n, src_cols.size()), g(n, src_cols.size());
  for (std::size_t j = 0; j < src_cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      a(i, j) = src_cols[j][i];
      g(i, j) = st_cols[j][i];
    }
  ReactionNetwork out(net.species(), a, g);
  bool all_exact = std::all_of(exact.begin(), exact.end(), [](const auto& q) { return q.has_value(); });
  if (all_exact) {
    std::vector<Rational> q;
    for (const auto& e : exact) q.push_back(*e);
    return MassActionSystem(out, q);
  }
  return MassActionSystem(out, kap);
}

}  // namespace crnosc
