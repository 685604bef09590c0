#include "doctest.h"
#include "support.hpp"

#include "crnosc/classifier.hpp"
#include "crnosc/family.hpp"
#include "crnosc/stoich.hpp"

using namespace crnosc;

namespace {

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Gamma v and Gamma^T w evaluated exactly, independent of the library.
std::vector<Rational> times(const IntMatrix& g, const std::vector<Rational>& v) {
  std::vector<Rational> out(g.rows(), 0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out[i] += Rational(static_cast<long>(g(i, j))) * v[j];
  return out;
}

std::vector<Rational> times_transpose(const IntMatrix& g, const std::vector<Rational>& w) {
  std::vector<Rational> out(g.cols(), 0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out[j] += Rational(static_cast<long>(g(i, j))) * w[i];
  return out;
}

}  // namespace

TEST_SUITE("stoich_analysis") {
  TEST_CASE("rank") {
    CHECK(rank(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0")) == 2);
    CHECK(rank(parse_network("X + Z -> 2X; X + Y -> 2Y; Y + Z -> 2Z")) == 2);
    CHECK(rank(parse_network("2X -> 3X")) == 1);
  }

  TEST_CASE("nontriviality certificates") {
    auto lotka = dynamically_nontrivial(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0"));
    CHECK(lotka.nontrivial);
    REQUIRE(lotka.positive_kernel_vector);
    CHECK(*lotka.positive_kernel_vector == ints({1, 1, 1}));

    auto net = parse_network("X -> 2X; Y -> 2Y; X + Y -> 2X + 2Y");
    auto triv = dynamically_nontrivial(net);
    CHECK_FALSE(triv.nontrivial);
    REQUIRE(triv.stiemke_dual);
    CHECK(*triv.stiemke_dual == ints({1, 1}));
    CHECK(times_transpose(net.stoich(), *triv.stiemke_dual) == ints({1, 1, 2}));

    for (int d = 1; d <= 4; ++d) {
      auto lva = dynamically_nontrivial(family_network(FamilyKind::GeneralisedLVA, 0, d));
      REQUIRE(lva.positive_kernel_vector);
      CHECK(*lva.positive_kernel_vector == ints({1, 1, d}));
    }
  }

  TEST_CASE("source geometry") {
    CHECK(source_geometry(parse_network("0 -> Y; X -> Y; 2X -> Y")).collinear);
    auto case9 = source_geometry(parse_network("2X -> 3X; X + Y -> 2Y; Y -> 0"));
    CHECK_FALSE(case9.collinear);
    REQUIRE(case9.orientation);
    CHECK(*case9.orientation == Orientation::Positive);
    auto lotka = source_geometry(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0"));
    CHECK_FALSE(lotka.collinear);
    auto reversed = source_geometry(parse_network("species X, Y; Y -> 0; X + Y -> 2Y; 2X -> 3X"));
    REQUIRE(reversed.orientation);
    CHECK(*reversed.orientation == Orientation::Negative);
  }

  TEST_CASE("positive-divergence reactions") {
    CHECK(positive_divergence_reactions(parse_network("2X -> 3X")) == std::vector<std::size_t>{0});
    CHECK(positive_divergence_reactions(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0")).empty());
    CHECK(positive_divergence_reactions(parse_network("2X -> X + Y")).empty());
    CHECK(positive_divergence_reactions(parse_network("X + Y -> Y; 2Y -> 4Y + X")) == std::vector<std::size_t>{1});
  }

  TEST_CASE("Dulac divergence class") {
    CHECK(dulac_divergence_class(parse_network("X -> 2X; X + Y -> 2Y; Y -> 0")) == DivergenceClass::IdenticallyZero);
    CHECK(dulac_divergence_class(family_network(FamilyKind::GeneralisedLVA, 0, 1)) == DivergenceClass::Indefinite);
    CHECK(dulac_divergence_class(parse_network("X + Y -> 2Y; Y -> 0; 0 -> X")) == DivergenceClass::NegativeEverywhere);
  }

  TEST_CASE("Lotka-Volterra form") {
    auto lotka = lotka_volterra_form(parse_system("X -> 2X; X + Y -> 2Y; Y -> 0").system());
    REQUIRE(lotka);
    CHECK(lotka->r == std::vector<double>{1, -1});
    CHECK(lotka->b(0, 1) == -1);
    CHECK(lotka->b(1, 0) == 1);
    REQUIRE(lotka->conditions.size() == 3);
    for (const auto& [text, holds] : lotka->conditions) CHECK_MESSAGE(holds, text);

    auto iv = lotka_volterra_form(parse_system("X + Z -> 2X; X + Y -> 2Y; Y + Z -> 2Z").system());
    REQUIRE(iv);
    CHECK(iv->r == std::vector<double>{0, 0, 0});
    const auto& b = iv->b;
    CHECK(b(0, 1) * b(1, 2) * b(2, 0) + b(0, 2) * b(1, 0) * b(2, 1) == doctest::Approx(0));
    REQUIRE(iv->conditions.size() == 4);
    for (const auto& [text, holds] : iv->conditions) CHECK_MESSAGE(holds, text);

    CHECK_FALSE(lotka_volterra_form(MassActionSystem(family_network(FamilyKind::GeneralisedLVA, 0, 1),
                                                     std::vector<double>{1, 1, 1})));
  }

  TEST_CASE("property: certificate soundness and cross-product agreement") {
    testing::Rng rng(2024);
    std::size_t rank_two = 0;
    for (int k = 0; k < 10000; ++k) {
      std::uniform_int_distribution<std::size_t> nn(2, 4);
      auto net = testing::random_network(rng, nn(rng), 3);
      auto fm = nontrivial_by_fourier_motzkin(net);
      CHECK(verify_certificate(net, fm));
      if (fm.positive_kernel_vector) {
        auto v = *fm.positive_kernel_vector;
        CHECK(std::all_of(v.begin(), v.end(), [](const Rational& q) { return q > 0; }));
        CHECK(times(net.stoich(), v) == std::vector<Rational>(net.num_species(), 0));
      } else {
        REQUIRE(fm.stiemke_dual);
        auto g = times_transpose(net.stoich(), *fm.stiemke_dual);
        CHECK(std::all_of(g.begin(), g.end(), [](const Rational& q) { return q >= 0; }));
        CHECK(std::any_of(g.begin(), g.end(), [](const Rational& q) { return q > 0; }));
      }
      if (rank(net) == 2) {
        ++rank_two;
        auto cp = nontrivial_by_cross_product(net);
        CHECK(cp.nontrivial == fm.nontrivial);
        CHECK(verify_certificate(net, cp));
      }
    }
    CHECK(rank_two > 1000);
  }

  TEST_CASE("property: Indefinite iff a positive-divergence reaction exists") {
    testing::Rng rng(5);
    for (int k = 0; k < 2000; ++k) {
      std::uniform_int_distribution<std::size_t> nn(1, 4);
      auto net = testing::random_network(rng, nn(rng), 3);
      CHECK((dulac_divergence_class(net) == DivergenceClass::Indefinite) ==
            !positive_divergence_reactions(net).empty());
    }
  }

  TEST_CASE("property: collinear sources are never classified periodic") {
    testing::Rng rng(9);
    std::size_t seen = 0;
    for (int k = 0; k < 20000 && seen < 200; ++k) {
      auto net = testing::random_network(rng, 3, 3);
      if (!source_geometry(net).collinear) continue;
      ++seen;
      CHECK(classify_trimolecular(net).admits_periodic == PeriodicVerdict::Admits::Never);
    }
    CHECK(seen >= 100);
  }
}
