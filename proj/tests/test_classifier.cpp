#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "crnosc/classifier.hpp"
#include "crnosc/enumerate.hpp"
#include "crnosc/family.hpp"
#include "crnosc/stoich.hpp"

using namespace crnosc;

namespace {

const std::vector<std::string>& reference_list() {
  static const std::vector<std::string> list = {
      "X -> 2X; X+Y -> 2Y; Y -> 0",          "X -> 2X; X+Y -> 3Y; Y -> 0",
      "X -> 2X; X+Y -> 2Y; Y+Z -> Z",        "X -> 2X; X+Y -> 3Y; Y+Z -> Z",
      "X -> 3X; X+Y -> 2Y; Y -> 0",          "X -> 3X; X+Y -> 3Y; Y -> 0",
      "X -> 3X; X+Y -> 2Y; Y+Z -> Z",        "X -> 3X; X+Y -> 3Y; Y+Z -> Z",
      "X+Z -> 2X+Z; X+Y -> 2Y; Y -> 0",      "X+Z -> 2X+Z; X+Y -> 3Y; Y -> 0",
      "X+Z -> 2X+Z; X+Y -> 2Y; Y+Z -> Z",    "X+Z -> 2X+Z; X+Y -> 3Y; Y+Z -> Z",
      "X+Z -> 2X+Z; X+Y -> 2Y; Y+W -> W",    "X+Z -> 2X+Z; X+Y -> 3Y; Y+W -> W",
      "Z+X -> 2X; X+Y -> 2Y; Y+Z -> 2Z",     "2X -> 3X; X+Y -> 2Y+Z; Y+Z -> 0",
  };
  return list;
}

}  // namespace

TEST_SUITE("classifier") {
  TEST_CASE("family matching") {
    auto lotka = match_family(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0"));
    REQUIRE(lotka);
    CHECK(lotka->name() == "GeneralisedLotka(c=1,d=1)");
    auto lifted = match_family(parse_network("2X -> 3X; X + Y -> 2Y + Z; Y + Z -> 0"));
    REQUIRE(lifted);
    CHECK(lifted->kind == FamilyKind::LiftedLVA);
    CHECK(lifted->d == 1);
    auto iv = match_family(parse_network("species Y, Z, X; Y + X -> 2Y; Y + Z -> 2Z; Z + X -> 2X"));
    REQUIRE(iv);
    CHECK(iv->kind == FamilyKind::Ivanova);
  }

  TEST_CASE("property: family tags verify and templates round trip") {
    testing::Rng rng(13);
    for (auto kind : all_family_kinds())
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d) {
          if (!family_parameters_valid(kind, c, d)) continue;
          auto net = family_network(kind, c, d);
          std::vector<std::size_t> sp(net.num_species()), rx = {0, 1, 2};
          std::iota(sp.begin(), sp.end(), 0);
          std::shuffle(sp.begin(), sp.end(), rng);
          std::shuffle(rx.begin(), rx.end(), rng);
          auto shuffled = permute_reactions(permute_species(net, sp), rx);
          auto tag = match_family(shuffled);
          REQUIRE(tag);
          CHECK(verify_family_tag(shuffled, *tag));
          CHECK(family_network(tag->kind, tag->c, tag->d).num_species() == net.num_species());
        }
  }

  TEST_CASE("trimolecular verdicts") {
    auto lotka = classify_trimolecular(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0"));
    CHECK(lotka.admits_periodic == PeriodicVerdict::Admits::ForSomeKappa);
    CHECK(lotka.kappa_condition == "all kappa");

    auto lifted = classify_trimolecular(parse_network("2X -> 3X; X + Y -> 2Y + Z; Y + Z -> 0"));
    CHECK(lifted.admits_periodic == PeriodicVerdict::Admits::ForSomeKappa);
    CHECK(lifted.kappa_condition == "k2=k3>k1");

    auto lva = classify_trimolecular(family_network(FamilyKind::GeneralisedLVA, 0, 1));
    CHECK(lva.admits_periodic == PeriodicVerdict::Admits::Never);
    CHECK(lva.reason == "generalised_lva");

    auto saddle = classify_trimolecular(parse_network("2X -> 3X; X + Y -> Z + W; Z + W -> Y"));
    CHECK(saddle.admits_periodic == PeriodicVerdict::Admits::Never);

    auto trivial_species_net = classify_trimolecular(parse_network("X + Z -> 2X + Z; X + Y -> 2Y; Y -> 0"));
    CHECK(trivial_species_net.admits_periodic == PeriodicVerdict::Admits::ForSomeKappa);
    CHECK(trivial_species_net.reduced_network == parse_network("X -> 2X; X + Y -> 2Y; Y -> 0"));

    CHECK_THROWS_AS(classify_trimolecular(parse_network("2X -> 3X + Y; X + Y -> Y; Y -> 0")), PreconditionError);
  }

  TEST_CASE("trimolecularization") {
    auto tetra = expand_to_trimolecular(parse_system("2X -> 3X + Y @ 2; X + Y -> Y @ 3; Y -> 0 @ 5").system());
    CHECK(tetra.network() == parse_network("2X -> 3X; 2X -> 2X + Y; X + Y -> Y; Y -> 0"));
    CHECK(tetra.exact_kappa() == std::vector<Rational>{2, 2, 3, 5});

    auto octo = expand_to_trimolecular(parse_system("2X -> 4X + 3Y + Z; X + Y -> 0; Z -> X").system());
    CHECK(octo.network().num_reactions() == 5);
    CHECK(octo.exact_kappa() == std::vector<Rational>{2, 3, 1, 1, 1});

    auto lotka = parse_system("X -> 2X; X + Y -> 2Y; Y -> 0").system();
    CHECK(expand_to_trimolecular(lotka).network() == lotka.network());

    CHECK_THROWS_AS(expand_to_trimolecular(parse_network("3X -> 4X")), PreconditionError);
  }

  TEST_CASE("property: expansion preserves the right-hand side exactly") {
    testing::Rng rng(19);
    for (int k = 0; k < 200; ++k) {
      auto net = testing::random_network(rng, 3, 3, 2, 6);
      std::vector<Rational> kappa = {testing::random_rational(rng), testing::random_rational(rng),
                                     testing::random_rational(rng)};
      MassActionSystem sys(net, kappa);
      auto ex = expand_to_trimolecular(sys);
      CHECK(molecularity_profile(ex.network()).is_trimolecular());
      for (int p = 0; p < 5; ++p) {
        std::vector<Rational> x = {testing::random_rational(rng), testing::random_rational(rng),
                                   testing::random_rational(rng)};
        CHECK(mass_action_rhs(sys, x) == mass_action_rhs(ex, x));
      }
    }
  }

  TEST_CASE("property: fast and slow classifiers agree") {
    testing::Rng rng(29);
    for (int k = 0; k < 3000; ++k) {
      std::uniform_int_distribution<std::size_t> nn(2, 4);
      auto net = testing::random_network(rng, nn(rng), 3);
      CHECK(classify_trimolecular(net).admits_periodic == classify_trimolecular_slow(net));
    }
  }
}

TEST_SUITE("enumeration") {
  TEST_CASE("two species: the four Lotka family members") {
    auto rep = enumerate_trimolecular(2);
    CHECK(rep.hits.size() == 4);
    for (const auto& h : rep.hits) {
      REQUIRE(h.verdict.matched_family);
      CHECK(h.verdict.matched_family->kind == FamilyKind::GeneralisedLotka);
    }
  }

  TEST_CASE("up to four species: the reference list") {
    EnumerationOptions opt;
    opt.cross_check = true;
    auto rep = enumerate_trimolecular(4, opt);
    CHECK(rep.slow_path_disagreements.empty());
    std::multiset<std::string> got, want;
    for (const auto& h : rep.hits) got.insert(canonical_string(h.network));
    for (const auto& s : reference_list()) want.insert(canonical_string(parse_network(s)));
    CHECK(got == want);
    CHECK(std::set<std::string>(want.begin(), want.end()).size() == 16);

    std::set<std::uint64_t> keys;
    for (const auto& h : rep.hits) {
      CHECK(keys.insert(canonical_key(h.network)).second);
      CHECK(rank(h.network) == 2);
      CHECK(dynamically_nontrivial(h.network).nontrivial);
      CHECK(match_family(drop_trivial_species(h.network)));
      std::size_t matches = 0;
      for (const auto& s : reference_list())
        if (canonical_form(parse_network(s)) == canonical_form(h.network)) ++matches;
      CHECK(matches == 1);
    }
    std::size_t per_n[5] = {};
    for (const auto& h : rep.hits) ++per_n[h.n];
    CHECK(per_n[2] == 4);
    CHECK(per_n[3] == 10);
    CHECK(per_n[4] == 2);
  }

  TEST_CASE("level counts are monotone") {
    auto rep = enumerate_trimolecular(3);
    for (const auto& l : rep.levels) {
      CHECK(l.covering <= l.candidates);
      CHECK(l.rank_two <= l.covering);
      CHECK(l.nontrivial <= l.rank_two);
      CHECK(l.distinct <= l.nontrivial);
      CHECK(l.for_some_kappa <= l.distinct);
    }
    CHECK(rep.levels.front().reactions == 9);
  }

  TEST_CASE("worker count does not change the result") {
    EnumerationOptions one, many;
    one.workers = 1;
    many.workers = 3;
    CHECK(to_json(enumerate_trimolecular(3, one))["hits"] == to_json(enumerate_trimolecular(3, many))["hits"]);
  }

  TEST_CASE("n_max out of range") {
    CHECK_THROWS_AS(enumerate_trimolecular(1), PreconditionError);
    CHECK_THROWS_AS(enumerate_trimolecular(6), PreconditionError);
  }
}
