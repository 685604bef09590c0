#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "crnosc/equilibria.hpp"
#include "crnosc/family.hpp"
#include "crnosc/hopf.hpp"
#include "crnosc/stoich.hpp"

using namespace crnosc;

TEST_SUITE("equilibria") {
  TEST_CASE("planar closed form") {
    auto lotka = planar_equilibrium(parse_system("X -> 2X; X + Y -> 2Y; Y -> 0").system());
    CHECK(lotka.x_bar == std::vector<double>{1, 1});
    CHECK(lotka.mu == 1);
    REQUIRE(lotka.x_exact);
    CHECK(*lotka.x_exact == std::vector<Rational>{1, 1});

    auto tetra = planar_equilibrium(parse_system("2X -> 3X + Y @ 1; X + Y -> Y @ 2; Y -> 0 @ 3").system());
    REQUIRE(tetra.x_exact);
    CHECK(*tetra.x_exact == std::vector<Rational>{Rational(3, 2), Rational(3, 4)});

    try {
      planar_equilibrium(parse_system("0 -> Y; X -> 2X + Y; 2X -> X").system());
      FAIL("expected SourcesCollinear");
    } catch (const PreconditionError& e) {
      CHECK(e.code() == "SourcesCollinear");
    }
    try {
      planar_equilibrium(parse_system("X -> 2X; Y -> 2Y; X + Y -> 2X + 2Y").system());
      FAIL("expected NoPositiveEquilibrium");
    } catch (const PreconditionError& e) {
      CHECK(e.code() == "NoPositiveEquilibrium");
    }
  }

  TEST_CASE("fold example: 0, 1, 2 equilibria") {
    auto sys = parse_system("X + Y -> 2Z; 2Z -> 2X; Z -> Y").system();
    CHECK(equilibria_on_class(sys, StoichiometricClass::from_conserved(sys.network(), {1.0})).empty());
    auto two = equilibria_on_class(sys, StoichiometricClass::from_conserved(sys.network(), {3.0}));
    REQUIRE(two.size() == 2);
    // x (C - 1/2 - x) = 1/2 with C = 3
    const double disc = std::sqrt(2.5 * 2.5 - 2);
    std::vector<double> xs = {two[0].x_bar[0], two[1].x_bar[0]};
    std::sort(xs.begin(), xs.end());
    CHECK(xs[0] == doctest::Approx((2.5 - disc) / 2).epsilon(1e-9));
    CHECK(xs[1] == doctest::Approx((2.5 + disc) / 2).epsilon(1e-9));
    for (const auto& e : two) {
      CHECK(e.x_bar[0] * e.x_bar[1] == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(e.x_bar[2] == doctest::Approx(0.5).epsilon(1e-9));
      CHECK_FALSE(e.degenerate);
    }
    auto one = equilibria_on_class(sys, StoichiometricClass::from_conserved(sys.network(), {0.5 + std::sqrt(2.0)}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].degenerate);
    CHECK(std::abs(one[0].x_bar[0] - 1 / std::sqrt(2.0)) < 1e-8);
  }

  TEST_CASE("equilibrium rays") {
    auto lifted = family_network(FamilyKind::LiftedLVA, 0, 1);
    auto tag = match_family(lifted);
    REQUIRE(tag);
    auto ray = equilibrium_ray(*tag, std::vector<Rational>{1, 2, 3});
    REQUIRE(ray.direction_exact);
    auto dir = *ray.direction_exact;
    // (t, t/2, 2t/3) up to scale
    CHECK(dir[1] / dir[0] == Rational(1, 2));
    CHECK(dir[2] / dir[0] == Rational(2, 3));

    auto three = family_network(FamilyKind::ThreeSpeciesFamily, 1, 1);
    auto tag3 = match_family(three);
    REQUIRE(tag3);
    auto ray3 = equilibrium_ray(*tag3, std::vector<Rational>{1, 1, 1});
    REQUIRE(ray3.direction_exact);
    CHECK((*ray3.direction_exact)[0] == (*ray3.direction_exact)[1]);
    CHECK((*ray3.direction_exact)[1] == (*ray3.direction_exact)[2]);

    testing::Rng rng(1);
    for (int k = 0; k < 20; ++k) {
      std::vector<Rational> kappa = {testing::random_rational(rng), testing::random_rational(rng),
                                     testing::random_rational(rng)};
      for (const auto& [net, t] : {std::pair{lifted, *tag}, std::pair{three, *tag3}}) {
        auto r = equilibrium_ray(t, kappa);
        REQUIRE(r.direction_exact);
        std::vector<Rational> x = *r.direction_exact;
        for (auto& v : x) v *= Rational(7, 3);
        CHECK(mass_action_rhs(MassActionSystem(net, kappa), x) == std::vector<Rational>(3, 0));
      }
    }
    CHECK_THROWS(equilibrium_ray(*match_family(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0")),
                                 std::vector<double>{1, 1, 1}));
  }

  TEST_CASE("property: residual, class membership, sign law") {
    testing::Rng rng(17);
    std::size_t checked = 0;
    for (int k = 0; checked < 100 && k < 200000; ++k) {
      auto net = testing::random_network(rng, 3, 3);
      if (rank(net) != 2 || !dynamically_nontrivial(net).nontrivial) continue;
      MassActionSystem sys(net, testing::random_kappa(rng, 3));
      std::vector<double> x0(3);
      for (auto& v : x0) v = testing::log_uniform(rng, 0.2, 5);
      auto cls = StoichiometricClass::from_point(net, x0);
      SolverOptions opt;
      opt.starts_per_dim = 16;
      for (const auto& e : equilibria_on_class(sys, cls, opt)) {
        ++checked;
        auto rates = reaction_rates(net, sys.kappa(), e.x_bar);
        double scale = std::max(1.0, *std::max_element(rates.begin(), rates.end()));
        auto f = mass_action_rhs(sys, e.x_bar);
        for (double v : f) CHECK(std::abs(v) < 1e-10 * scale);
        auto w0 = cls.conserved(x0), w1 = cls.conserved(e.x_bar);
        for (std::size_t i = 0; i < w0.size(); ++i) CHECK(std::abs(w0[i] - w1[i]) < 1e-12 * std::max(1.0, std::abs(w0[i])));
        for (double u : e.u) CHECK((u > 0) == (e.mu > 0));
      }
    }
    CHECK(checked >= 100);
  }

  TEST_CASE("property: planar uniqueness") {
    testing::Rng rng(23);
    std::size_t checked = 0;
    for (int k = 0; checked < 1000 && k < 200000; ++k) {
      auto net = testing::random_network(rng, 2, 3);
      if (rank(net) != 2 || source_geometry(net).collinear || !dynamically_nontrivial(net).nontrivial) continue;
      MassActionSystem sys(net, testing::random_kappa(rng, 3));
      auto eq = planar_equilibrium(sys);
      if (*std::max_element(eq.x_bar.begin(), eq.x_bar.end()) > 300 ||
          *std::min_element(eq.x_bar.begin(), eq.x_bar.end()) < 3e-3)
        continue;  // outside the default start box
      ++checked;
      SolverOptions opt;
      opt.starts_per_dim = 8;
      auto all = equilibria_on_class(sys, StoichiometricClass::from_point(net, eq.x_bar), opt);
      REQUIRE(all.size() == 1);
      CHECK(testing::rel_err(all[0].x_bar[0], eq.x_bar[0]) < 1e-8);
      CHECK(testing::rel_err(all[0].x_bar[1], eq.x_bar[1]) < 1e-8);
    }
    CHECK(checked == 1000);
  }
}
