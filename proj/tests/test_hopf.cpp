#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "crnosc/dynamics.hpp"
#include "crnosc/family.hpp"
#include "crnosc/hopf.hpp"
#include "crnosc/stoich.hpp"

using namespace crnosc;

namespace {

ReactionNetwork swap_xy(const ReactionNetwork& net) { return permute_species(net, {1, 0}); }

}  // namespace

TEST_SUITE("hopf") {
  TEST_CASE("source cases") {
    CHECK(source_case(parse_network("2X -> 3X; X + Y -> 2Y; Y -> 0")).id == 9);
    CHECK(source_case(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0")).id == 7);
    CHECK(source_case(parse_network("0 -> Y; X -> 2X + Y; 2X -> X")).id == 0);
    CHECK(source_case(parse_network("2Y -> 3Y; X + Y -> 2X; X -> 0")).id == 9);
    for (std::size_t k = 0; k < 10; ++k) {
      const auto& t = ten_source_triples()[k];
      for (const auto& net : planar_networks_with_sources(t, 2)) {
        auto sc = source_case(net);
        CHECK(sc.id == int(k) + 1);
        if (sc.id != int(k) + 1) break;
      }
    }
  }

  TEST_CASE("planar verdicts") {
    CHECK(theorem_verdict_planar(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0")).verdict == Verdict::CenterForAllKappa);
    for (int d = 0; d <= 3; ++d)
      CHECK(theorem_verdict_planar(family_network(FamilyKind::TetraFamily, 0, d)).verdict == Verdict::SupercriticalHopf);
    auto open = theorem_verdict_planar(parse_network("2X -> 3X + 2Y; X + Y -> 0; Y -> X + Y"));
    CHECK(open.source_case.id == 9);
    CHECK(open.verdict == Verdict::NoAndronovHopf);
    CHECK(theorem_verdict_planar(family_network(FamilyKind::GeneralisedLVA, 0, 1)).verdict == Verdict::NoAndronovHopf);
    CHECK(theorem_verdict_planar(family_network(FamilyKind::PentaCase8, 2, 1)).verdict == Verdict::VerticalHopf);
  }

  TEST_CASE("property: witness consistency and X/Y symmetry") {
    for (const auto& t : ten_source_triples())
      for (const auto& net : planar_networks_with_sources(t, 4)) {
        auto v = theorem_verdict_planar(net);
        CHECK(verdict_from_witness(v) == v.verdict);
        CHECK(theorem_verdict_planar(swap_xy(net)).verdict == v.verdict);
      }
  }

  TEST_CASE("Hopf point on the tetra path") {
    auto sys = parse_system("2X -> 3X + Y; X + Y -> Y; Y -> 0").system();
    auto hp = find_hopf_point(sys, KappaPath::parse("k1=t", 3), 0.1, 10);
    REQUIRE(hp);
    CHECK(hp->t_star == doctest::Approx(1).epsilon(1e-10));
    CHECK(hp->det_value > 0);
    CHECK(std::abs(planar_trace(MassActionSystem(sys.network(), hp->kappa_star), hp->equilibrium)) < 1e-10);
    CHECK(hp->lyapunov.classification == HopfClass::Supercritical);
    CHECK(hp->lyapunov.raw < 0);
  }

  TEST_CASE("Selkov locus k2 = k3^3 / k1^2") {
    auto base = parse_system("0 -> X; X + 2Y -> 3Y; Y -> 0").system();
    for (auto [k1, k3] : std::vector<std::pair<double, double>>{{1, 2}, {2, 3}, {0.5, 1}}) {
      auto sys = base.with_kappa(std::vector<double>{k1, 1, k3});
      const double want = k3 * k3 * k3 / (k1 * k1);
      auto hp = find_hopf_point(sys, KappaPath::parse("k2=t", 3), want / 10, want * 10);
      REQUIRE(hp);
      CHECK(hp->t_star == doctest::Approx(want).epsilon(1e-9));
    }
  }

  TEST_CASE("generalised LVA has no Hopf point") {
    MassActionSystem sys(family_network(FamilyKind::GeneralisedLVA, 0, 1), std::vector<double>{1, 1, 1});
    for (const char* path : {"k1=t", "k2=t", "k3=t"})
      CHECK_FALSE(find_hopf_point(sys, KappaPath::parse(path, 3), 0.01, 100));
  }

  TEST_CASE("Case 8 critical point is vertical") {
    auto net = family_network(FamilyKind::PentaCase8, 2, 1);
    CHECK(linear_after_division(net));
    MassActionSystem sys(net, std::vector<double>{1, 1, 1});
    for (const char* path : {"k1=t", "k2=t", "k3=t"}) {
      auto hp = find_hopf_point(sys, KappaPath::parse(path, 3), 0.01, 100);
      if (!hp) continue;
      CHECK(hp->lyapunov.classification == HopfClass::Vertical);
      CHECK(hp->lyapunov.vertical_override);
      CHECK(hp->lyapunov.normalized == 0);
    }
  }

  TEST_CASE("first focal value against the return map") {
    // near the Hopf point the section return map is r -> r + 2 pi l1 g^2 / omega r^3 + ...
    auto base = parse_system("2X -> 3X + Y; X + Y -> Y; Y -> 0").system();
    auto eq = planar_equilibrium(base);
    auto l1 = first_lyapunov_coefficient(base, eq);
    const double g = l1.section_gain;
    const double predicted = 2 * M_PI * l1.raw * g * g / l1.omega;
    std::vector<double> radii = {0.01, 0.015, 0.02};
    ReturnMapOptions ro;
    ro.returns = 1;
    ro.integrator.tol = 1e-12;
    auto s = return_map(base, eq, radii, ro);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      REQUIRE(s.returned[k]);
      const double alpha = (s.radii_out[k] - radii[k]) / std::pow(radii[k], 3);
      CHECK(alpha == doctest::Approx(predicted).epsilon(0.05));
    }
  }

  TEST_CASE("property: L1 sign robust under perturbation along the trace-zero surface") {
    for (const auto& src : {ten_source_triples()[8], ten_source_triples()[9]})
      for (const auto& net : planar_networks_with_sources(src, 7)) {
        if (theorem_verdict_planar(net).verdict != Verdict::SupercriticalHopf) continue;
        auto kappa = hopf_kappa(net);
        REQUIRE(kappa);
        for (double f : {-1e-8, 1e-8}) {
          auto k = *kappa;
          k[1] *= 1 + f;
          // restore trace zero through k1
          auto hp = find_hopf_point(MassActionSystem(net, k), KappaPath::parse("k1=t", 3), k[0] * (1 - 1e-4),
                                    k[0] * (1 + 1e-4), 8);
          REQUIRE(hp);
          CHECK(hp->lyapunov.normalized < -1e-8);
        }
      }
  }

  TEST_CASE("Hopf points satisfy det > 0 and trace = 0") {
    for (const auto& net : planar_networks_with_sources(ten_source_triples()[8], 4)) {
      if (theorem_verdict_planar(net).verdict != Verdict::SupercriticalHopf) continue;
      MassActionSystem sys(net, std::vector<double>{1, 1, 1});
      for (const char* path : {"k1=t", "k2=t", "k3=t"}) {
        auto hp = find_hopf_point(sys, KappaPath::parse(path, 3), 1e-3, 1e3, 128);
        if (!hp) continue;
        CHECK(hp->det_value > 0);
        MassActionSystem at(net, hp->kappa_star);
        CHECK(std::abs(planar_trace(at, hp->equilibrium)) < 1e-9 * std::max(1.0, hp->det_value));
      }
    }
  }

  TEST_CASE("Bogdanov-Takens residuals") {
    for (auto [k2, C] : std::vector<std::pair<double, double>>{{1, -1}, {2, -3}}) {
      auto bt = bogdanov_takens_residual(k2, C);
      CHECK(std::abs(bt.trace) < 1e-9);
      CHECK(std::abs(bt.det) < 1e-9);
      auto off = bogdanov_takens_residual(k2, C, 1.01);
      CHECK(std::max(std::abs(off.trace), std::abs(off.det)) > 1e-3);
    }
  }
}
