#include "nlqm/transforms.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlqm/errors.hpp"

namespace nlqm {

double abel_rhs(const ModelParams& p, double y, double w) {
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  const double k = 2.0 * mu * (mu + b);
  return -2.0 * (2.0 * mu + b) * y * w - k * y * y * y + k * N * N * y;
}

double abel_shift(const ModelParams& p) { return -2.0 / 3.0 * (2.0 * p.mu() + p.b()); }

double abel_yz_coefficient(const ModelParams& p, double a) {
  return 3.0 * a + 2.0 * (2.0 * p.mu() + p.b());
}

double reduced_y2_coefficient(const ModelParams& p) {
  const double a = abel_shift(p);
  const double c = 2.0 * p.mu() + p.b();
  return -(2.0 * a * a + 2.0 * c * a + 2.0 * p.mu() * (p.mu() + p.b()));
}

double bernoulli_gate(const ModelParams& p) {
  return 4.0 / 9.0 * (p.b() + 0.5 * p.mu()) * (p.b() - p.mu());
}

AbelState AbelState::from_yw(const ModelParams& p, double y, double w) {
  if (y == 0.0) {
    throw SingularityError("w = y z + a y^2 cannot be solved for z at y = 0", y);
  }
  return {y, w, (w - abel_shift(p) * y * y) / y};
}

namespace {

constexpr double kDenominatorFloor = 1e-12;

}  // namespace

double reduced_dy_dz(const ModelParams& p, double y, double z) {
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  const double den = -z * z + 2.0 * mu * (mu + b) * N * N + bernoulli_gate(p) * y * y;
  if (std::abs(den) < kDenominatorFloor) {
    throw SingularityError("reduced Abel equation is singular", z);
  }
  return (y * z + abel_shift(p) * y * y) / den;
}

const char* to_string(BernoulliBranch branch) {
  switch (branch) {
    case BernoulliBranch::b_eq_minus_half_mu: return "b=-mu/2";
    case BernoulliBranch::b_eq_mu: return "b=mu";
  }
  return "?";
}

void require_branch(const ModelParams& p, BernoulliBranch branch) {
  const bool ok = branch == BernoulliBranch::b_eq_minus_half_mu
                      ? nearly_equal(p.b(), -0.5 * p.mu())
                      : nearly_equal(p.b(), p.mu());
  if (!ok) {
    throw BranchError(std::string("Bernoulli branch ") + to_string(branch) +
                      " does not match the parameters");
  }
}

double bernoulli_rhs(const ModelParams& p, BernoulliBranch branch, double y, double z) {
  require_branch(p, branch);
  const double scale = branch == BernoulliBranch::b_eq_minus_half_mu ? 1.0 : 2.0;
  const double m = scale * p.mu();
  const double den = -z * z + m * m * p.N() * p.N();
  if (std::abs(den) < kDenominatorFloor) {
    throw SingularityError("Bernoulli equation is singular at z = +-scale mu N", z);
  }
  return (y * z - m * y * y) / den;
}

double bernoulli_z_of_xi(const ModelParams& p, BernoulliBranch branch, double xi) {
  const double scale = branch == BernoulliBranch::b_eq_minus_half_mu ? 1.0 : 2.0;
  return scale * p.mu() * p.N() * xi;
}

namespace {

void require_positive_x(double x) {
  if (!(x > 0.0)) {
    throw DomainError("PDM quantities are defined only for x > 0");
  }
}

}  // namespace

double pdm_mass(const ModelParams& p, double x) {
  const double lambda = p.lambda_exp();
  require_positive_x(x);
  return std::pow(x, -2.0 * lambda);
}

double pdm_potential(const ModelParams& p, double x) {
  p.lambda_exp();
  require_positive_x(x);
  const double s = p.mu() + p.b();
  const double N = p.N();
  return -2.0 * s * s * (N * N * std::pow(x, -p.mu() / s) - 4.0 * std::pow(x, p.b() / s));
}

double first_integral(const ModelParams& p, double x, double xdot) {
  return 0.5 * pdm_mass(p, x) * xdot * xdot + pdm_potential(p, x);
}

FirstIntegral::FirstIntegral(const ModelParams& p) : p_(p), lambda_(p.lambda_exp()) {}

const char* to_string(LevelBranch branch) {
  switch (branch) {
    case LevelBranch::general: return "general";
    case LevelBranch::b0: return "b0";
    case LevelBranch::mu0: return "mu0";
  }
  return "?";
}

namespace {

void require_level_branch(const ModelParams& p, LevelBranch branch) {
  switch (branch) {
    case LevelBranch::general:
      p.lambda_exp();
      return;
    case LevelBranch::b0:
      if (!nearly_equal(p.b(), 0.0)) throw BranchError("b0 level branch requires b = 0");
      if (nearly_equal(p.mu(), 0.0)) throw BranchError("b0 level branch requires mu != 0");
      return;
    case LevelBranch::mu0:
      if (!nearly_equal(p.mu(), 0.0)) throw BranchError("mu0 level branch requires mu = 0");
      if (nearly_equal(p.b(), 0.0)) throw BranchError("mu0 level branch requires b != 0");
      return;
  }
}

// Radicand written as cq x^q + c2 x^2 + c3 x^3 (cq = 0 off the general branch).
struct RadicandTerms {
  double cq, q, c2, c3;

  double at(double x) const {
    const double lead = cq == 0.0 ? 0.0 : cq * std::pow(x, q);
    return lead + c2 * x * x + c3 * x * x * x;
  }

  // R(e + d) - R(e) without cancellation for small |d|.
  double shift(double e, double d) const {
    const double lead = cq == 0.0 ? 0.0 : cq * std::pow(e, q) * std::expm1(q * std::log1p(d / e));
    return lead + c2 * d * (2.0 * e + d) + c3 * d * (3.0 * e * e + 3.0 * e * d + d * d);
  }

  // (R(e + d) - R(e)) / d, continuous at d = 0.
  double slope(double e, double d) const {
    if (d == 0.0) {
      const double lead = cq == 0.0 ? 0.0 : cq * q * std::pow(e, q - 1.0);
      return lead + 2.0 * c2 * e + 3.0 * c3 * e * e;
    }
    return shift(e, d) / d;
  }

  // Sum of |terms|; the rounding floor for "zero".
  double scale(double x) const {
    const double lead = cq == 0.0 ? 0.0 : std::abs(cq * std::pow(x, q));
    return lead + std::abs(c2) * x * x + std::abs(c3) * x * x * x;
  }
};

RadicandTerms radicand_terms(const ModelParams& p, double E, LevelBranch branch) {
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  switch (branch) {
    case LevelBranch::general: {
      const double s = mu + b;
      return {2.0 * E, (3.0 * mu + 2.0 * b) / s, 4.0 * s * s * N * N, -16.0 * s * s};
    }
    case LevelBranch::b0:
      return {0.0, 0.0, 4.0 * mu * mu * N * N, 2.0 * E - 16.0 * mu * mu};
    case LevelBranch::mu0:
      return {0.0, 0.0, 2.0 * E + 4.0 * b * b * N * N, -16.0 * b * b};
  }
  return {};
}

[[noreturn]] void turning_point(double x, double r) {
  std::ostringstream os;
  os << "level-surface radicand " << r << " <= 0 at x = " << x << " (turning point)";
  throw TurningPointError(os.str(), x);
}

}  // namespace

double level_surface_radicand(const ModelParams& p, double E, LevelBranch branch, double x) {
  require_level_branch(p, branch);
  if (!(x > 0.0)) {
    throw DomainError("level-surface radicand requires x > 0");
  }
  return radicand_terms(p, E, branch).at(x);
}

double level_surface_time(const ModelParams& p, double E, LevelBranch branch, double x_from,
                          double x_to) {
  require_level_branch(p, branch);
  if (!(x_to > 0.0) || !std::isfinite(x_from)) {
    throw DomainError("level_surface_time requires x_to > 0");
  }
  if (x_from < x_to) {
    throw DomainError("level_surface_time follows decreasing x: x_from >= x_to required");
  }
  if (x_from == x_to) return 0.0;

  const RadicandTerms terms = radicand_terms(p, E, branch);

  // Endpoints may sit on a turning point up to rounding; the interior may not.
  for (double x : {x_from, x_to}) {
    const double r = terms.at(x);
    if (r < -64.0 * std::numeric_limits<double>::epsilon() * terms.scale(x)) {
      turning_point(x, r);
    }
  }
  constexpr int kScan = 256;
  for (int i = 1; i < kScan; ++i) {
    const double x = x_to + (x_from - x_to) * i / kScan;
    const double r = terms.at(x);
    if (!(r > 0.0)) turning_point(x, r);
  }

  // x = end + dir * s^2, dx = 2 s ds: the integrand 2s / sqrt(R) stays bounded
  // when R vanishes linearly at `end`. R - R(end) is evaluated without
  // cancellation and R(end) at rounding level is taken as an exact turning
  // point, so the integrand is smooth down to s = 0. Tanh-sinh copes with the
  // steep layer near s = 0 that a small x_to produces.
  auto half = [&](double end, double dir, double length) {
    const bool turning = terms.at(end) <= 1e-12 * terms.scale(end);
    const double r_end = turning ? 0.0 : terms.at(end);
    auto integrand = [&](double s) {
      const double d = dir * s * s;
      if (turning) {
        const double rate = dir * terms.slope(end, d);  // R / s^2
        if (!(rate > 0.0)) turning_point(end + d, rate * s * s);
        return 2.0 / std::sqrt(rate);
      }
      const double r = r_end + terms.shift(end, d);
      if (!(r > 0.0)) turning_point(end + d, r);
      return 2.0 * s / std::sqrt(r);
    };
    return boost::math::quadrature::tanh_sinh<double>().integrate(integrand, 0.0,
                                                                  std::sqrt(length), 1e-13);
  };
  const double mid = 0.5 * (x_from + x_to);
  return half(x_from, -1.0, x_from - mid) + half(x_to, 1.0, mid - x_to);
}

}  // namespace nlqm
