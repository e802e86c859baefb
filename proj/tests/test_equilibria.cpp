#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nlqm/dynamics.hpp"
#include "nlqm/equilibria.hpp"

using namespace nlqm;

namespace {

// Coupled rates in (y, x) ordering, without the x >= 0 check of PhaseState.
Eigen::Vector2d rates_yx(const ModelParams& p, double y, double x) {
  return {p.mu() * (p.N() * p.N() - y * y) + 4 * p.b() * x, -2 * (p.b() + p.mu()) * y * x};
}

}  // namespace

TEST_CASE("find_equilibria") {
  auto pts = find_equilibria(ModelParams(1, 1, 1));
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].x == 0.0);
  CHECK(pts[0].y == 1.0);
  CHECK(pts[1].y == -1.0);
  CHECK(pts[2].x == -0.25);
  CHECK(pts[2].y == 0.0);

  pts = find_equilibria(ModelParams(0, 1, 1));
  REQUIRE(pts.size() == 3);
  CHECK(pts[2].x == 0.0);
  CHECK(pts[2].y == 0.0);

  pts = find_equilibria(ModelParams(1, 0, 2));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].y == 2.0);
  CHECK(pts[1].y == -2.0);

  for (const auto& p : {ModelParams(1, 1, 1), ModelParams(0.3, -2, 1.7), ModelParams(2, 0.5, 3)}) {
    for (const auto& f : find_equilibria(p)) {
      CHECK(rates_yx(p, f.y, f.x).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("classify at (mu, b, N) = (1, 1, 1)") {
  const ModelParams p(1, 1, 1);
  const auto stable = classify(p, {0.0, 1.0});
  CHECK(stable.classification == StabilityClass::stable_node);
  const double l0 = stable.eigenvalues[0].real();
  const double l1 = stable.eigenvalues[1].real();
  CHECK(std::min(l0, l1) == doctest::Approx(-4.0));
  CHECK(std::max(l0, l1) == doctest::Approx(-2.0));
  CHECK(stable.eigenvalues[0].imag() == 0.0);
  CHECK(stable.jacobian(0, 1) == 4.0);

  CHECK(classify(p, {0.0, -1.0}).classification == StabilityClass::unstable_node);
  const auto saddle = classify(p, {-0.25, 0.0});
  CHECK(saddle.classification == StabilityClass::saddle);
  CHECK(saddle.det < 0.0);
}

TEST_CASE("classify rejects non-equilibria with the residual") {
  try {
    classify(ModelParams(1, 1, 1), {0.1, 0.5});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
}

TEST_CASE("trace and determinant at (0, +-N)") {
  for (double N : {1.0, 2.0}) {
    const ModelParams p(0.7, 1.3, N);
    for (double s : {1.0, -1.0}) {
      const auto r = classify(p, {0.0, s * N});
      CHECK(r.trace == doctest::Approx(-s * 2 * N * (p.b() + 2 * p.mu())).epsilon(1e-12));
      CHECK(r.det == doctest::Approx(4 * N * N * p.mu() * (p.b() + p.mu())).epsilon(1e-12));
    }
  }
}

TEST_CASE("stability grid") {
  int cells = 0;
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double b : {0.5, 1.0, 2.0}) {
      for (double N : {1.0, 2.0}) {
        const ModelParams p(mu, b, N);
        const auto pts = find_equilibria(p);
        REQUIRE(pts.size() == 3);
        const auto up = classify(p, pts[0]).classification;
        const auto down = classify(p, pts[1]).classification;
        CHECK(up == StabilityClass::stable_node);
        CHECK(down == StabilityClass::unstable_node);
        CHECK(classify(p, pts[2]).classification == StabilityClass::saddle);
        ++cells;
      }
    }
  }
  CHECK(cells == 18);
}

TEST_CASE("analytic Jacobian matches central differences") {
  const double h = 1e-6;
  for (const auto& p : {ModelParams(1, 1, 1), ModelParams(0.5, 2, 2), ModelParams(2, -0.7, 1.3)}) {
    for (const auto& f : find_equilibria(p)) {
      const auto J = coupled_jacobian(p, f);
      const Eigen::Vector2d dy = (rates_yx(p, f.y + h, f.x) - rates_yx(p, f.y - h, f.x)) / (2 * h);
      const Eigen::Vector2d dx = (rates_yx(p, f.y, f.x + h) - rates_yx(p, f.y, f.x - h)) / (2 * h);
      CHECK(std::abs(J(0, 0) - dy[0]) <= 1e-6);
      CHECK(std::abs(J(1, 0) - dy[1]) <= 1e-6);
      CHECK(std::abs(J(0, 1) - dx[0]) <= 1e-6);
      CHECK(std::abs(J(1, 1) - dx[1]) <= 1e-6);
    }
  }
}

TEST_CASE("eigenvalues reproduce trace and determinant") {
  for (const auto& p : {ModelParams(1, 1, 1), ModelParams(0.5, 2, 2), ModelParams(2, -0.7, 1.3),
                        ModelParams(1, -3, 1)}) {
    for (const auto& f : find_equilibria(p)) {
      const auto r = classify(p, f);
      const auto sum = r.eigenvalues[0] + r.eigenvalues[1];
      const auto prod = r.eigenvalues[0] * r.eigenvalues[1];
      CHECK(std::abs(sum.real() - r.trace) <= 1e-10 * std::max(1.0, std::abs(r.trace)));
      CHECK(std::abs(sum.imag()) <= 1e-10 * std::max(1.0, std::abs(r.trace)));
      CHECK(std::abs(prod.real() - r.det) <= 1e-10 * std::max(1.0, std::abs(r.det)));
      CHECK(std::abs(prod.imag()) <= 1e-10 * std::max(1.0, std::abs(r.det)));
      CHECK(std::abs(r.trace - r.jacobian.trace()) <= 1e-15);
      CHECK(std::abs(r.det - r.jacobian.determinant()) <= 1e-12);
    }
  }
}

TEST_CASE("classify_linear sign patterns") {
  CHECK(classify_linear(-3, 2) == StabilityClass::stable_node);
  CHECK(classify_linear(3, 2) == StabilityClass::unstable_node);
  CHECK(classify_linear(0.5, -2) == StabilityClass::saddle);
  CHECK(classify_linear(-1, 2) == StabilityClass::stable_spiral);
  CHECK(classify_linear(1, 2) == StabilityClass::unstable_spiral);
  CHECK(classify_linear(0, 2) == StabilityClass::center);
  CHECK(classify_linear(1, 0) == StabilityClass::degenerate);
  CHECK(classify_linear(2, 1) == StabilityClass::degenerate);  // repeated eigenvalue
  CHECK(std::string(to_string(StabilityClass::stable_spiral)) == "stable-spiral");
}

TEST_CASE("dynamical confirmation") {
  IntegratorConfig cfg;
  cfg.t_end = 30.0;
  for (const auto& p : {ModelParams(1, 1, 1), ModelParams(0.5, 2, 2), ModelParams(2, 0.5, 1)}) {
    const double N = p.N();
    // Perturb along x > 0 and along y; distance 1e-3.
    for (const Eigen::Vector2d d : {Eigen::Vector2d(1e-3, 0.0), Eigen::Vector2d(0.0, -1e-3),
                                    Eigen::Vector2d(0.6e-3, 0.8e-3)}) {
      const auto tr = integrate(SystemForm::coupled_xy, p, Eigen::Vector2d(0.0, N) + d, cfg);
      CHECK((tr.back() - Eigen::Vector2d(0.0, N)).norm() <= 1e-6);
    }
    // Near (0, -N) with x > 0 the orbit leaves.
    const auto away = integrate(SystemForm::coupled_xy, p, Eigen::Vector2d(1e-3, -N), cfg);
    CHECK((away.back() - Eigen::Vector2d(0.0, -N)).norm() > 1e-1);
  }
}

TEST_CASE("report JSON") {
  const auto j = report_to_json(classify(ModelParams(1, 1, 1), {0.0, 1.0}));
  for (const char* key : {"point", "jacobian", "trace", "det", "eigenvalues", "class"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["class"] == "stable-node");
  CHECK(j["eigenvalues"].size() == 2);
  CHECK(j["eigenvalues"][0].size() == 2);
}
