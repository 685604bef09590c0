#include <Eigen/Dense>

#include "doctest.h"
#include "support.hpp"

#include "crnosc/equilibria.hpp"
#include "crnosc/family.hpp"
#include "crnosc/jacobian.hpp"
#include "crnosc/stoich.hpp"

using namespace crnosc;

namespace {

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

// Product of the two eigenvalues of largest modulus (the rest vanish for rank two).
double nontrivial_eigen_product(const RealMatrix& j) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(j));
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + j.rows());
  std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
  return (ev[0] * ev[1]).real();
}

struct Instance {
  MassActionSystem sys;
  EquilibriumRecord eq;
};

// Random rank-two three-reaction systems with a positive equilibrium on a random class.
std::vector<Instance> random_instances(testing::Rng& rng, std::size_t n, std::size_t count) {
  std::vector<Instance> out;
  for (int k = 0; out.size() < count && k < 2000000; ++k) {
    auto net = testing::random_network(rng, n, 3);
    if (rank(net) != 2 || !dynamically_nontrivial(net).nontrivial || !trivial_species(net).empty()) continue;
    MassActionSystem sys(net, testing::random_kappa(rng, 3));
    std::vector<double> x0(n);
    for (auto& v : x0) v = testing::log_uniform(rng, 0.3, 3);
    SolverOptions opt;
    opt.starts_per_dim = 6;
    auto eqs = equilibria_on_class(sys, StoichiometricClass::from_point(net, x0), opt);
    for (const auto& e : eqs)
      if (!e.degenerate) {
        out.push_back({sys, e});
        break;
      }
  }
  return out;
}

}  // namespace

TEST_SUITE("jacobian") {
  TEST_CASE("Lotka Jacobian") {
    auto sys = parse_system("X -> 2X; X + Y -> 2Y; Y -> 0").system();
    CHECK(jacobian_at(sys, std::vector<double>{1, 1}) == RealMatrix{{0, -1}, {1, 0}});
    CHECK(jacobian_at(sys, std::vector<Rational>{1, 1}) == RatMatrix{{0, -1}, {1, 0}});
  }

  TEST_CASE("Ivanova Jacobian columns sum to zero") {
    testing::Rng rng(4);
    auto net = parse_network("X + Z -> 2X; X + Y -> 2Y; Y + Z -> 2Z");
    for (int k = 0; k < 20; ++k) {
      MassActionSystem sys(net, testing::random_kappa(rng, 3));
      std::vector<double> x = {testing::log_uniform(rng, .1, 10), testing::log_uniform(rng, .1, 10),
                               testing::log_uniform(rng, .1, 10)};
      auto j = jacobian_at(sys, x);
      for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(j(0, c) + j(1, c) + j(2, c)) < 1e-12);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(j));
      CHECK(lu.rank() <= 2);
    }
  }

  TEST_CASE("four-species saddle") {
    auto sys = parse_system("2X -> 3X; X + Y -> Z + W; Z + W -> Y").system();
    auto eqs = equilibria_on_class(sys, StoichiometricClass::from_point(sys.network(), {1, 1, 1, 1}));
    REQUIRE(eqs.size() == 1);
    const auto& e = eqs[0];
    auto rj = reduced_jacobian(sys, e);
    const auto& x = e.x_bar;
    const double expected = e.mu * std::abs(e.mu) * (2 / (x[0] * x[1]) + 1 / (x[0] * x[2]) + 1 / (x[0] * x[3]));
    CHECK(e.mu < 0);
    CHECK(testing::rel_err(rj.det, expected) < 1e-9);
    CHECK(is_saddle(rj));
  }

  TEST_CASE("planar reduced Jacobian is the Jacobian") {
    auto sys = parse_system("X -> 2X @ 2; X + Y -> 2Y @ 3; Y -> 0 @ 5").system();
    auto eq = planar_equilibrium(sys);
    auto rj = reduced_jacobian(sys, eq);
    auto j = jacobian_at(sys, eq.x_bar);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) CHECK(rj.matrix(a, b) == doctest::Approx(j(a, b)));
    CHECK_FALSE(is_saddle(rj));
    // det J = mu |mu| |u1 u2 u3| / (x y) * orientation
    const double u = std::abs(eq.u[0] * eq.u[1] * eq.u[2]);
    CHECK(testing::rel_err(rj.det, eq.mu * std::abs(eq.mu) * u / (eq.x_bar[0] * eq.x_bar[1])) < 1e-12);
  }

  TEST_CASE("generalised LVA: det and trace positive") {
    for (int d = 1; d <= 3; ++d) {
      MassActionSystem sys(family_network(FamilyKind::GeneralisedLVA, 0, d), std::vector<double>{1.3, 0.7, 2.1});
      auto eq = planar_equilibrium(sys);
      CHECK(reduced_det_formula(sys, eq) > 0);
      CHECK(planar_trace(sys, eq) > 0);
    }
  }

  TEST_CASE("tetra trace vanishes at k1 = k2") {
    auto base = parse_system("2X -> 3X + Y; X + Y -> Y; Y -> 0").system();
    for (double k : {0.5, 1.0, 3.0}) {
      auto sys = base.with_kappa(std::vector<double>{k, k, 1.7});
      CHECK(std::abs(planar_trace(sys, planar_equilibrium(sys))) < 1e-12);
      auto exact = base.with_kappa(std::vector<Rational>{Rational(3, 2), Rational(3, 2), 2});
      CHECK(planar_trace_exact(exact, planar_equilibrium(exact)) == Rational(0));
    }
  }

  TEST_CASE("reversed LVA is a saddle") {
    auto sys = parse_system("2X -> 3X; X + Y -> 0; Y -> 2Y").system();
    CHECK(is_saddle(reduced_jacobian(sys, planar_equilibrium(sys))));
  }

  TEST_CASE("property: determinant against eigenvalues and the closed form") {
    testing::Rng rng(31);
    for (std::size_t n : {2, 3, 4, 5}) {
      auto inst = random_instances(rng, n, n == 2 ? 1000 : 250);
      const std::size_t want[] = {1000, 100, 25, 3};
      CHECK(inst.size() >= want[n - 2]);
      for (const auto& [sys, eq] : inst) {
        auto rj = reduced_jacobian(sys, eq);
        CHECK(testing::rel_err(rj.det, nontrivial_eigen_product(jacobian_at(sys, eq.x_bar))) < 1e-9);
        CHECK(testing::rel_err(reduced_det_formula(sys, eq), rj.det) < 1e-9);
        if (n == 2) {
          auto j = jacobian_at(sys, eq.x_bar);
          const double scale = std::abs(j(0, 0)) + std::abs(j(0, 1)) + std::abs(j(1, 0)) + std::abs(j(1, 1));
          CHECK(std::abs(planar_trace(sys, eq) - (j(0, 0) + j(1, 1))) < 1e-9 * scale);
        }
      }
    }
  }

  TEST_CASE("property: basis independence") {
    testing::Rng rng(37);
    for (const auto& [sys, eq] : random_instances(rng, 4, 100)) {
      auto ref = reduced_jacobian(sys, eq);
      const auto& g = sys.network().stoich();
      const std::size_t n = g.rows();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          IntMatrix two(2, 3);
          for (std::size_t j = 0; j < 3; ++j) {
            two(0, j) = g(a, j);
            two(1, j) = g(b, j);
          }
          if (rank(two) != 2) continue;
          auto other = reduced_jacobian(sys, eq, std::vector<std::size_t>{a, b});
          CHECK(testing::rel_err(other.det, ref.det) < 1e-12);
          CHECK(std::abs(other.trace - ref.trace) < 1e-12 * std::max(1.0, std::abs(ref.trace)));
        }
    }
  }

  TEST_CASE("property: finite differences") {
    testing::Rng rng(41);
    for (int s = 0; s < 20; ++s) {
      auto net = testing::random_network(rng, 3, 3);
      MassActionSystem sys(net, testing::random_kappa(rng, 3));
      for (int k = 0; k < 100; ++k) {
        std::vector<double> x(3);
        for (auto& v : x) v = testing::log_uniform(rng, 0.2, 5);
        auto j = jacobian_at(sys, x);
        for (std::size_t c = 0; c < 3; ++c) {
          auto xp = x, xm = x;
          xp[c] += 1e-6;
          xm[c] -= 1e-6;
          auto fp = mass_action_rhs(sys, xp), fm = mass_action_rhs(sys, xm);
          for (std::size_t r = 0; r < 3; ++r) {
            const double fd = (fp[r] - fm[r]) / 2e-6;
            CHECK(std::abs(fd - j(r, c)) <= 1e-5 * std::max(1.0, std::abs(j(r, c))));
          }
        }
      }
    }
  }

  TEST_CASE("property: planar orientation law") {
    testing::Rng rng(43);
    std::size_t checked = 0;
    for (int k = 0; checked < 500 && k < 100000; ++k) {
      auto net = testing::random_network(rng, 2, 3);
      if (rank(net) != 2 || source_geometry(net).collinear || !dynamically_nontrivial(net).nontrivial) continue;
      ++checked;
      MassActionSystem sys(net, testing::random_kappa(rng, 3));
      auto rj = reduced_jacobian(sys, planar_equilibrium(sys));
      // reaction-vector triangle orientation: sign of det[c2 - c1, c3 - c1] over Gamma columns
      const auto& g = net.stoich();
      const auto& a = net.source();
      auto orient = [](const IntMatrix& m) {
        const double v = double(m(0, 1) - m(0, 0)) * double(m(1, 2) - m(1, 0)) -
                         double(m(1, 1) - m(1, 0)) * double(m(0, 2) - m(0, 0));
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
      };
      CHECK((rj.det > 0) == (orient(g) == orient(a)));
    }
    CHECK(checked == 500);
  }
}
