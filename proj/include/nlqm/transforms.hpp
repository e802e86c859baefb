#pragma once

#include "nlqm/params.hpp"

namespace nlqm {

// ---------------------------------------------------------------------------
// Lienard -> Abel -> Bernoulli chain
// ---------------------------------------------------------------------------

/// Right-hand side of the Abel form obtained from the Lienard equation with
/// w(y) = dy/dt:
///   w dw/dy = -2(2mu + b) y w - 2mu(mu + b) y^3 + 2mu(mu + b) N^2 y.
double abel_rhs(const ModelParams& p, double y, double w);

/// Shift a = -(2/3)(2mu + b) in w = y z + a y^2 that removes the y z term.
double abel_shift(const ModelParams& p);

/// Coefficient 3a + 2(2mu + b) of y z after substituting w = y z + a y^2.
/// Vanishes identically at a = abel_shift(p).
double abel_yz_coefficient(const ModelParams& p, double a);

/// y^2 coefficient of the bracket multiplying dy/dz once the y z term is gone,
/// obtained by expanding the substituted Abel equation:
///   -(2a^2 + 2(2mu + b)a + 2mu(mu + b)) with a = abel_shift(p).
double reduced_y2_coefficient(const ModelParams& p);

/// Same coefficient in factored form, (4/9)(b + mu/2)(b - mu). Its zeros are
/// the two Bernoulli cases.
double bernoulli_gate(const ModelParams& p);

/// (y, w, z) with w = dy/dt and w = y z + a y^2.
struct AbelState {
  double y;
  double w;
  double z;

  /// Derives z from (y, w); throws SingularityError at y = 0.
  static AbelState from_yw(const ModelParams& p, double y, double w);
};

/// dy/dz of the reduced first-order equation for general (mu, b):
///   [-z^2 + 2mu(mu + b)N^2 + gate y^2] dy/dz = y z - (2/3)(2mu + b) y^2.
/// Throws SingularityError where the bracket vanishes.
double reduced_dy_dz(const ModelParams& p, double y, double z);

enum class BernoulliBranch {
  b_eq_minus_half_mu,  // dy/dz = (y z - mu y^2) / (-z^2 + mu^2 N^2)
  b_eq_mu,             // dy/dz = (y z - 2mu y^2) / (-z^2 + 4mu^2 N^2)
};

const char* to_string(BernoulliBranch branch);

/// Throws BranchError unless b matches the branch within kParamTolerance.
void require_branch(const ModelParams& p, BernoulliBranch branch);

/// Bernoulli right-hand side. Throws BranchError for an inconsistent branch
/// and SingularityError when |denominator| < 1e-12 (z = +-mu N or +-2mu N).
double bernoulli_rhs(const ModelParams& p, BernoulliBranch branch, double y, double z);

/// z = scale * mu * N * xi, with scale 1 on the b = -mu/2 branch and 2 on the
/// b = mu branch (the latter follows from mu -> 2mu).
double bernoulli_z_of_xi(const ModelParams& p, BernoulliBranch branch, double xi);

// ---------------------------------------------------------------------------
// Jacobi last multiplier, first integral and position-dependent mass
// ---------------------------------------------------------------------------

/// Position-dependent mass M(x) = x^(-2 Lambda). x > 0, b + mu != 0.
double pdm_mass(const ModelParams& p, double x);

/// V(x) = -2(mu + b)^2 [N^2 x^(-mu/(mu+b)) - 4 x^(b/(mu+b))]. x > 0, b + mu != 0.
double pdm_potential(const ModelParams& p, double x);

/// First integral of the Levinson-Smith form, 1/2 M(x) x'^2 + V(x). The
/// multiplier M = x^(-2 Lambda) is the Jacobi last multiplier.
/// Throws DomainError for x <= 0 and BranchError for b + mu = 0.
double first_integral(const ModelParams& p, double x, double xdot);

/// Bound evaluator for one parameter set.
class FirstIntegral {
 public:
  explicit FirstIntegral(const ModelParams& p);
  double lambda_exp() const noexcept { return lambda_; }
  double operator()(double x, double xdot) const { return first_integral(p_, x, xdot); }

 private:
  ModelParams p_;
  double lambda_;
};

// ---------------------------------------------------------------------------
// Level-surface quadrature
// ---------------------------------------------------------------------------

enum class LevelBranch {
  general,  // 2E x^((3mu+2b)/(mu+b)) + 4(mu+b)^2 N^2 x^2 - 16(mu+b)^2 x^3
  b0,       // 4mu^2 N^2 x^2 + (2E - 16mu^2) x^3,  b = 0, mu != 0
  mu0,      // (2E + 4b^2 N^2) x^2 - 16 b^2 x^3,  mu = 0, b != 0
};

const char* to_string(LevelBranch branch);

/// (dx/dt)^2 on the level surface E, i.e. the radicand of the time integral.
double level_surface_radicand(const ModelParams& p, double E, LevelBranch branch, double x);

/// Time for x to decrease from x_from to x_to on the level surface E,
///   t = -int_{x_from}^{x_to} dx / sqrt(radicand(x)),
/// returned as a non-negative number. Requires x_from >= x_to > 0.
///
/// Each half of the interval is mapped by x = endpoint -/+ s^2, which removes
/// the inverse-square-root singularity at a turning point (radicand = 0 at an
/// endpoint), and integrated by tanh-sinh at relative tolerance 1e-13. An
/// endpoint whose radicand is zero to rounding is treated as an exact turning
/// point.
///
/// Throws TurningPointError when the radicand is non-positive inside the
/// interval, BranchError when the parameters do not fit the branch.
double level_surface_time(const ModelParams& p, double E, LevelBranch branch, double x_from,
                          double x_to);

}  // namespace nlqm
