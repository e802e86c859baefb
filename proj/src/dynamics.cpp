#include "nlqm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "nlqm/format.hpp"

namespace nlqm {

CoupledRates rhs_coupled(const ModelParams& p, const PhaseState& s) {
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  return {mu * (N * N - s.y() * s.y()) + 4.0 * b * s.x(), -2.0 * (b + mu) * s.y() * s.x()};
}

double rhs_lienard_y(const ModelParams& p, double y, double yp) {
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  return -2.0 * (2.0 * mu + b) * y * yp - 2.0 * mu * (mu + b) * y * (y * y - N * N);
}

double rhs_levinson_x(const ModelParams& p, double x, double xp) {
  const double lambda = p.lambda_exp();
  if (!(x > 0.0)) {
    throw SingularityError("Levinson-Smith form is singular at x <= 0", x);
  }
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  return lambda * xp * xp / x - (mu + b) * (2.0 * mu * N * N * x + 8.0 * b * x * x);
}

Eigen::Vector2d vector_field(SystemForm form, const ModelParams& p, const Eigen::Vector2d& s) {
  switch (form) {
    case SystemForm::coupled_xy: {
      const double mu = p.mu();
      const double b = p.b();
      const double N = p.N();
      const double x = s[0];
      const double y = s[1];
      return {-2.0 * (b + mu) * y * x, mu * (N * N - y * y) + 4.0 * b * x};
    }
    case SystemForm::lienard_y:
      return {s[1], rhs_lienard_y(p, s[0], s[1])};
    case SystemForm::levinson_smith_x:
      return {s[1], rhs_levinson_x(p, s[0], s[1])};
  }
  throw DomainError("unknown system form");
}

Eigen::Vector2d initial_state_for(SystemForm form, const ModelParams& p, double x0, double y0) {
  const CoupledRates r = rhs_coupled(p, PhaseState(0.0, x0, y0));
  switch (form) {
    case SystemForm::coupled_xy: return {x0, y0};
    case SystemForm::lienard_y: return {y0, r.dy_dt};
    case SystemForm::levinson_smith_x: return {x0, r.dx_dt};
  }
  throw DomainError("unknown system form");
}

void IntegratorConfig::validate() const {
  if (!(std::isfinite(t_start) && std::isfinite(t_end) && t_end > t_start)) {
    throw DomainError("integrator: t_end must exceed t_start");
  }
  if (method == IntegrationMethod::rk4_fixed && !(dt > 0.0 && std::isfinite(dt))) {
    throw DomainError("integrator: dt must be positive");
  }
  if (method == IntegrationMethod::adaptive && !(abs_tol > 0.0 && rel_tol > 0.0)) {
    throw DomainError("integrator: tolerances must be positive");
  }
  if (max_steps == 0) {
    throw DomainError("integrator: max_steps must be positive");
  }
}

namespace {

using Vec = Eigen::Vector2d;

// Dormand-Prince 5(4) tableau. The fields are autonomous, so the c_i nodes are unused.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr int kMaxHalvings = 60;

// Integrates one form while screening trial states for x <= 0.
class Stepper {
 public:
  Stepper(SystemForm form, const ModelParams& p, bool guard_x)
      : form_(form), p_(p), guard_x_(guard_x) {}

  bool admissible(const Vec& s) const {
    return s.allFinite() && (!guard_x_ || s[0] > 0.0);
  }

  Vec f(const Vec& s) const { return vector_field(form_, p_, s); }

  // Classical RK4; returns false if any stage leaves the admissible region.
  bool rk4(const Vec& y, double h, Vec& out) const {
    const Vec k1 = f(y);
    const Vec s2 = y + 0.5 * h * k1;
    if (!admissible(s2)) return false;
    const Vec k2 = f(s2);
    const Vec s3 = y + 0.5 * h * k2;
    if (!admissible(s3)) return false;
    const Vec k3 = f(s3);
    const Vec s4 = y + h * k3;
    if (!admissible(s4)) return false;
    const Vec k4 = f(s4);
    out = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return admissible(out);
  }

  // Dormand-Prince trial step from (y, k1). Fills the fifth-order solution,
  // its derivative (FSAL) and the embedded error vector.
  bool dopri(const Vec& y, const Vec& k1, double h, Vec& out, Vec& k7, Vec& err) const {
    Vec s = y + h * a21 * k1;
    if (!admissible(s)) return false;
    const Vec k2 = f(s);
    s = y + h * (a31 * k1 + a32 * k2);
    if (!admissible(s)) return false;
    const Vec k3 = f(s);
    s = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    if (!admissible(s)) return false;
    const Vec k4 = f(s);
    s = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    if (!admissible(s)) return false;
    const Vec k5 = f(s);
    s = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    if (!admissible(s)) return false;
    const Vec k6 = f(s);
    out = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    if (!admissible(out)) return false;
    k7 = f(out);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    return err.allFinite();
  }

 private:
  SystemForm form_;
  const ModelParams& p_;
  bool guard_x_;
};

std::string at_time(const char* what, double t) {
  std::ostringstream os;
  os << what << " at t = " << format_real(t);
  return os.str();
}

Trajectory integrate_rk4(const Stepper& st, Trajectory traj, const IntegratorConfig& cfg) {
  const double span = cfg.t_end - cfg.t_start;
  const auto n_steps = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));
  std::size_t attempts = 0;
  Vec y = traj.back();
  for (std::size_t i = 1; i <= n_steps; ++i) {
    const double t0 = traj.t_back();
    const double t1 = i == n_steps ? cfg.t_end : cfg.t_start + static_cast<double>(i) * cfg.dt;
    // Cover [t0, t1] with substeps, halving on positivity violations.
    double t = t0;
    double h = t1 - t0;
    int halvings = 0;
    while (t < t1) {
      if (++attempts > cfg.max_steps) {
        throw IntegrationError(at_time("max_steps exceeded", t), std::move(traj));
      }
      h = std::min(h, t1 - t);
      Vec next;
      if (!st.rk4(y, h, next)) {
        ++traj.stats().rejected;
        if (++halvings > kMaxHalvings) {
          throw IntegrationError(at_time("step size collapsed", t), std::move(traj));
        }
        h *= 0.5;
        continue;
      }
      y = next;
      t = (t + h >= t1) ? t1 : t + h;
    }
    ++traj.stats().accepted;
    traj.append(t1, y);
  }
  return traj;
}

double error_norm(const Vec& err, const Vec& y0, const Vec& y1, const IntegratorConfig& cfg) {
  double norm = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    norm = std::max(norm, std::abs(err[i]) / scale);
  }
  return norm;
}

// Starting step after Hairer, Norsett & Wanner (II.4).
double initial_step(const Stepper& st, const Vec& y, const Vec& k1, const IntegratorConfig& cfg) {
  const double span = cfg.t_end - cfg.t_start;
  auto scaled = [&](const Vec& v) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i) {
      m = std::max(m, std::abs(v[i]) / (cfg.abs_tol + cfg.rel_tol * std::abs(y[i])));
    }
    return m;
  };
  const double d0 = scaled(y);
  const double d1 = scaled(k1);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const Vec y1 = y + h0 * k1;
  if (!st.admissible(y1)) return std::min(h0, 1e-6);
  const double d2 = scaled(st.f(y1) - k1) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, span});
}

Trajectory integrate_adaptive(const Stepper& st, Trajectory traj, const IntegratorConfig& cfg) {
  Vec y = traj.back();
  Vec k1 = st.f(y);
  double t = cfg.t_start;
  double h = initial_step(st, y, k1, cfg);
  const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cfg.t_end));
  std::size_t attempts = 0;

  while (t < cfg.t_end) {
    if (++attempts > cfg.max_steps) {
      throw IntegrationError(at_time("max_steps exceeded", t), std::move(traj));
    }
    bool last = false;
    if (t + h >= cfg.t_end) {
      h = cfg.t_end - t;
      last = true;
    }
    if (h < h_min) {
      throw IntegrationError(at_time("step size collapsed", t), std::move(traj));
    }

    Vec next;
    Vec k7;
    Vec err;
    if (!st.dopri(y, k1, h, next, k7, err)) {
      ++traj.stats().rejected;
      h *= 0.5;
      continue;
    }
    const double norm = error_norm(err, y, next, cfg);
    if (norm > 1.0) {
      ++traj.stats().rejected;
      h *= std::max(kMinFactor, kSafety * std::pow(norm, -0.2));
      continue;
    }

    t = last ? cfg.t_end : t + h;
    y = next;
    k1 = k7;
    auto& stats = traj.stats();
    ++stats.accepted;
    stats.max_local_error = std::max(stats.max_local_error, err.cwiseAbs().maxCoeff());
    traj.append(t, y);

    const double factor = norm == 0.0 ? kMaxFactor : kSafety * std::pow(norm, -0.2);
    h *= std::clamp(factor, kMinFactor, kMaxFactor);
  }
  return traj;
}

}  // namespace

Trajectory integrate(SystemForm form, const ModelParams& p, const Eigen::Vector2d& init,
                     const IntegratorConfig& cfg) {
  cfg.validate();
  if (!init.allFinite()) {
    throw DomainError("integrate: initial state must be finite");
  }
  switch (form) {
    case SystemForm::coupled_xy:
      if (init[0] < 0.0) throw DomainError("integrate: x0 = |gamma|^2 must be non-negative");
      break;
    case SystemForm::levinson_smith_x:
      p.lambda_exp();
      if (!(init[0] > 0.0)) {
        throw SingularityError("Levinson-Smith form requires x0 > 0", init[0]);
      }
      break;
    case SystemForm::lienard_y:
      break;
  }
  const bool guard_x = form != SystemForm::lienard_y && init[0] > 0.0;
  const Stepper stepper(form, p, guard_x);
  Trajectory traj(form, cfg.method, cfg.t_start, init);
  if (cfg.method == IntegrationMethod::rk4_fixed) {
    return integrate_rk4(stepper, std::move(traj), cfg);
  }
  return integrate_adaptive(stepper, std::move(traj), cfg);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << (traj.form() == SystemForm::coupled_xy ? "t,x,y\n" : "t,u,du\n");
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.state(i);
    os << format_real(traj.time(i)) << ',' << format_real(s[0]) << ',' << format_real(s[1])
       << '\n';
  }
}

}  // namespace nlqm
