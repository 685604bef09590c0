#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

#include "crnosc/network.hpp"

using namespace crnosc;

TEST_SUITE("network_core") {
  TEST_CASE("parse Lotka") {
    auto net = parse_network("X -> 2X; X + Y -> 2Y; Y -> 0");
    CHECK(net.species() == std::vector<std::string>{"X", "Y"});
    CHECK(net.stoich() == IntMatrix{{1, -1, 0}, {0, 1, -1}});
    CHECK(net.source() == IntMatrix{{1, 1, 0}, {0, 1, 1}});
  }

  TEST_CASE("single reaction") {
    auto net = parse_network("2X -> 3X");
    CHECK(net.num_species() == 1);
    CHECK(net.num_reactions() == 1);
    CHECK(net.stoich() == IntMatrix{{1}});
  }

  TEST_CASE("negative target coefficient is a parse error") {
    CHECK_THROWS_AS(parse_network("X -> -Y"), ParseError);
    try {
      parse_network("X -> 2X\nY -> -Y");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() >= 1);
    }
  }

  TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_AS(parse_network("X -> "), ParseError);
    CHECK_THROWS_AS(parse_network("X => Y"), ParseError);
    CHECK_THROWS_AS(parse_network("X -> X"), ParseError);
    CHECK_THROWS_AS(parse_network("X -> Y @ -1"), ParseError);
  }

  TEST_CASE("duplicate reactions are flagged, not rejected") {
    auto p = parse_system("X -> 2X @ 1; X -> 2X @ 2");
    CHECK(p.network.has_duplicate_reactions());
    CHECK_FALSE(p.warnings.empty());
  }

  TEST_CASE("rational literals") {
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("007/010") == Rational(7, 10));
    CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
    CHECK(parse_rational(" 12 ") == Rational(12));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("0x10"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("."), std::invalid_argument);
  }

  TEST_CASE("rates default to one and stay exact") {
    auto p = parse_system("X -> 2X @ 3/2; X + Y -> 2Y; Y -> 0 @ 0.25");
    CHECK(p.kappa == std::vector<Rational>{Rational(3, 2), Rational(1), Rational(1, 4)});
    CHECK(p.system().exact());
  }

  TEST_CASE("species directive fixes the order") {
    auto net = parse_network("species Y, X; X -> 2X; X + Y -> 2Y; Y -> 0");
    CHECK(net.species() == std::vector<std::string>{"Y", "X"});
  }

  TEST_CASE("canonical form: swapped Lotka") {
    auto a = parse_network("X -> 2X; X + Y -> 2Y; Y -> 0");
    auto b = parse_network("Y -> 2Y; Y + X -> 2X; X -> 0");
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(canonical_string(a) == canonical_string(b));
  }

  TEST_CASE("canonical form: Ivanova under every species permutation") {
    auto net = parse_network("X + Z -> 2X; X + Y -> 2Y; Y + Z -> 2Z");
    std::vector<std::size_t> p = {0, 1, 2};
    auto ref = canonical_form(net);
    do {
      CHECK(canonical_form(permute_species(net, p)) == ref);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  TEST_CASE("canonical form is idempotent and permutation invariant") {
    testing::Rng rng(7);
    for (int k = 0; k < 100; ++k) {
      std::uniform_int_distribution<std::size_t> nn(1, 4);
      auto net = testing::random_network(rng, nn(rng), 3);
      auto c = canonical_form(net);
      CHECK(canonical_form(c) == c);
      std::vector<std::size_t> sp(net.num_species()), rx = {2, 0, 1};
      std::iota(sp.begin(), sp.end(), 0);
      std::shuffle(sp.begin(), sp.end(), rng);
      CHECK(canonical_form(permute_reactions(permute_species(net, sp), rx)) == c);
    }
  }

  TEST_CASE("molecularity profile") {
    auto lotka = molecularity_profile(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0"));
    CHECK(lotka.max_source == 2);
    CHECK(lotka.max_target == 2);
    auto tetra = molecularity_profile(parse_network("2X -> 3X + Y; X + Y -> Y; Y -> 0"));
    CHECK(tetra.max_source == 2);
    CHECK(tetra.max_target == 4);
    CHECK(tetra.is_quadratic());
    CHECK_FALSE(tetra.is_trimolecular());
    auto empty = molecularity_profile(parse_network("# nothing"));
    CHECK(empty.max_source == 0);
    CHECK(empty.max_target == 0);
  }

  TEST_CASE("trivial species") {
    CHECK(trivial_species(parse_network("X + Z -> 2X + Z; X + Y -> 2Y; Y -> 0")) == std::vector<std::size_t>{1});
    CHECK(trivial_species(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0")).empty());
    CHECK(trivial_species(parse_network("0 -> X; 0 -> Y")).empty());
    auto reduced = drop_trivial_species(parse_network("X + Z -> 2X + Z; X + Y -> 2Y; Y -> 0"));
    CHECK(reduced == parse_network("X -> 2X; X + Y -> 2Y; Y -> 0"));
  }

  TEST_CASE("mass-action right-hand side") {
    auto lotka = parse_system("X -> 2X; X + Y -> 2Y; Y -> 0").system();
    CHECK(mass_action_rhs(lotka, std::vector<double>{1, 1}) == std::vector<double>{0, 0});
    CHECK(mass_action_rhs(lotka, std::vector<double>{2, 3}) == std::vector<double>{2 - 6, 6 - 3});

    testing::Rng rng(11);
    auto iv = parse_network("X + Z -> 2X; X + Y -> 2Y; Y + Z -> 2Z");
    for (int k = 0; k < 50; ++k) {
      MassActionSystem sys(iv, std::vector<Rational>{testing::random_rational(rng), testing::random_rational(rng),
                                                     testing::random_rational(rng)});
      std::vector<Rational> x = {testing::random_rational(rng), testing::random_rational(rng),
                                 testing::random_rational(rng)};
      auto f = mass_action_rhs(sys, x);
      CHECK(f[0] + f[1] + f[2] == 0);
    }

    auto tetra = parse_system("2X -> 3X + Y; X + Y -> Y; Y -> 0").system();
    CHECK(mass_action_rhs(tetra, std::vector<double>{0, 0}) == std::vector<double>{0, 0});
    auto inflow = parse_system("0 -> X; X -> 0").system();
    CHECK(mass_action_rhs(inflow, std::vector<double>{0}) == std::vector<double>{1});
  }

  TEST_CASE("dimension mismatch") {
    auto lotka = parse_system("X -> 2X; X + Y -> 2Y; Y -> 0").system();
    CHECK_THROWS(mass_action_rhs(lotka, std::vector<double>{1, 1, 1}));
  }

  TEST_CASE("property: targets nonnegative, render round trip, equivariance, boundary tangency") {
    testing::Rng rng(3);
    for (int k = 0; k < 300; ++k) {
      std::uniform_int_distribution<std::size_t> nn(1, 4), mm(1, 4);
      auto net = testing::random_network(rng, nn(rng), mm(rng), 2, 4);
      auto tgt = net.target();
      CHECK(std::all_of(tgt.data().begin(), tgt.data().end(), [](auto v) { return v >= 0; }));

      MassActionSystem sys(net, testing::random_kappa(rng, net.num_reactions()));
      auto back = parse_system(render(MassActionSystem(net, std::vector<Rational>(net.num_reactions(), Rational(3, 2)))));
      CHECK(back.network == net);
      CHECK(back.kappa == std::vector<Rational>(net.num_reactions(), Rational(3, 2)));

      std::vector<double> x(net.num_species());
      for (auto& v : x) v = testing::log_uniform(rng, 0.1, 10);
      std::vector<std::size_t> p(net.num_species());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      auto pnet = permute_species(net, p);
      std::vector<double> px(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) px[i] = x[p[i]];
      auto f = mass_action_rhs(sys, x);
      auto pf = mass_action_rhs(MassActionSystem(pnet, sys.kappa()), px);
      bool direct = true;
      for (std::size_t i = 0; i < x.size(); ++i) direct = direct && testing::rel_err(pf[i], f[p[i]]) < 1e-12;
      CHECK(direct);

      std::uniform_int_distribution<std::size_t> pick(0, net.num_species() - 1);
      auto y = x;
      const auto z = pick(rng);
      y[z] = 0;
      CHECK(mass_action_rhs(sys, y)[z] >= 0);
    }
  }

  TEST_CASE("JSON encoding round trip") {
    auto sys = parse_system("X -> 2X @ 2; X + Y -> 2Y; Y -> 0 @ 1/3").system();
    auto j = to_json(sys);
    CHECK(j.contains("species"));
    CHECK(j.contains("source"));
    CHECK(j.contains("stoich"));
    CHECK(j.contains("kappa"));
    auto back = system_from_json(j);
    CHECK(back.network() == sys.network());
    CHECK(back.exact_kappa() == sys.exact_kappa());
  }
}
