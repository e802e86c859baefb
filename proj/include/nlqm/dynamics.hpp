#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <iosfwd>

#include "nlqm/errors.hpp"
#include "nlqm/params.hpp"

namespace nlqm {

/// Rates of the coupled first-order system
///   dy/dt = mu (N^2 - y^2) + 4 b x
///   dx/dt = -2 (b + mu) y x
struct CoupledRates {
  double dy_dt;
  double dx_dt;
};

CoupledRates rhs_coupled(const ModelParams& p, const PhaseState& s);

/// Second derivative from the Lienard form
///   y'' + 2(2mu + b) y y' + 2mu(mu + b) y (y^2 - N^2) = 0.
double rhs_lienard_y(const ModelParams& p, double y, double yp);

/// Second derivative from the Levinson-Smith form
///   x'' - Lambda x'^2 / x + (mu + b)(2 mu N^2 x + 8 b x^2) = 0.
/// Throws SingularityError for x <= 0 and BranchError for b + mu = 0.
double rhs_levinson_x(const ModelParams& p, double x, double xp);

/// Vector field of `form` on its 2-vector state (see SystemForm for layout).
Eigen::Vector2d vector_field(SystemForm form, const ModelParams& p, const Eigen::Vector2d& s);

/// Maps a coupled state (x, y) to the initial pair of `form`: (x, y) itself,
/// (y, dy/dt) or (x, dx/dt), with the derivative taken from the coupled rates.
Eigen::Vector2d initial_state_for(SystemForm form, const ModelParams& p, double x0, double y0);

struct IntegratorConfig {
  IntegrationMethod method = IntegrationMethod::adaptive;
  double dt = 1e-3;  // rk4_fixed step
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double t_start = 0.0;
  double t_end = 1.0;
  std::size_t max_steps = 5'000'000;

  /// Throws DomainError when the configuration is unusable.
  void validate() const;
};

/// Integration stopped before t_end. Carries everything computed so far.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, Trajectory partial)
      : Error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

/// Integrates `form` from `init` at cfg.t_start to cfg.t_end.
///
/// The adaptive method is the Dormand-Prince 5(4) pair with a max-norm error
/// estimate scaled by abs_tol + rel_tol |y|, safety factor 0.9 and step ratio
/// clamped to [0.2, 5]. One trajectory row is emitted per accepted step.
/// The rk4_fixed method emits one row per dt (the last step is shortened to
/// land on t_end).
///
/// Wherever x is a state component (coupled_xy, levinson_smith_x) and starts
/// positive, a trial step that produces x <= 0 is rejected and the step halved;
/// x is never clamped.
///
/// Throws IntegrationError (with the partial trajectory) when max_steps is
/// exceeded, the step collapses, or the state turns non-finite. Singularity
/// and branch errors from the vector field propagate unchanged.
Trajectory integrate(SystemForm form, const ModelParams& p, const Eigen::Vector2d& init,
                     const IntegratorConfig& cfg);

/// CSV with header `t,x,y` (coupled) or `t,u,du` (second-order forms), one row
/// per sample, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace nlqm
