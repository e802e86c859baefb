#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace nlqm {

/// Parameter tuple (mu, b, N) of the reduced two-state system, plus the
/// optional level-surface energy E.
///
/// N must be strictly positive. The exponent
/// Lambda = (2b + 3mu) / (2(b + mu)) only exists when b + mu != 0; the
/// constructor records whether that (Levinson-Smith) branch is admissible.
class ModelParams {
 public:
  ModelParams(double mu, double b, double N, std::optional<double> E = std::nullopt);

  double mu() const noexcept { return mu_; }
  double b() const noexcept { return b_; }
  double N() const noexcept { return N_; }
  const std::optional<double>& E() const noexcept { return E_; }

  /// E, or BranchError naming `what` when the energy was never supplied.
  double require_E(const char* what) const;

  bool levinson_admissible() const noexcept { return lambda_.has_value(); }
  /// Lambda, or BranchError when b + mu == 0.
  double lambda_exp() const;

  ModelParams with_E(std::optional<double> E) const { return {mu_, b_, N_, E}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double mu_;
  double b_;
  double N_;
  std::optional<double> E_;
  std::optional<double> lambda_;
};

nlohmann::json params_to_json(const ModelParams& p);
/// Reads keys "mu", "b", "N" and optional "E". Throws DomainError on a
/// missing or non-numeric key.
ModelParams params_from_json(const nlohmann::json& j);

/// Instantaneous point (t, x, y) of the coupled system. x = |gamma|^2 is
/// non-negative; constructing a state with x < 0 throws DomainError.
class PhaseState {
 public:
  PhaseState(double t, double x, double y);

  double t() const noexcept { return t_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  /// |y| > N. Reported, never rejected.
  bool exceeds_norm(double N) const noexcept;

 private:
  double t_;
  double x_;
  double y_;
};

/// Which equation a 2-vector state belongs to.
///   coupled_xy        state = (x, y)
///   lienard_y         state = (y, dy/dt)
///   levinson_smith_x  state = (x, dx/dt)
enum class SystemForm { coupled_xy, lienard_y, levinson_smith_x };

enum class IntegrationMethod { rk4_fixed, adaptive };

const char* to_string(SystemForm form);
const char* to_string(IntegrationMethod method);

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_local_error = 0.0;
};

/// Ordered time series of states of one SystemForm with integrator metadata.
/// Sample times are strictly increasing and the series is never empty.
class Trajectory {
 public:
  Trajectory(SystemForm form, IntegrationMethod method, double t0, const Eigen::Vector2d& s0);

  void append(double t, const Eigen::Vector2d& s);

  SystemForm form() const noexcept { return form_; }
  IntegrationMethod method() const noexcept { return method_; }
  std::size_t size() const noexcept { return times_.size(); }
  double time(std::size_t i) const { return times_.at(i); }
  const Eigen::Vector2d& state(std::size_t i) const { return states_.at(i); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Eigen::Vector2d>& states() const noexcept { return states_; }
  double t_back() const { return times_.back(); }
  const Eigen::Vector2d& back() const { return states_.back(); }

  /// Sample i as a PhaseState; only meaningful for coupled_xy.
  PhaseState phase_state(std::size_t i) const;

  StepStats& stats() noexcept { return stats_; }
  const StepStats& stats() const noexcept { return stats_; }

 private:
  SystemForm form_;
  IntegrationMethod method_;
  std::vector<double> times_;
  std::vector<Eigen::Vector2d> states_;
  StepStats stats_;
};

struct Admissibility {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Which equation branches a parameter set may be used with.
struct ValidationReport {
  Admissibility levinson_smith;   // b + mu != 0
  Admissibility level_b0;         // b = 0, mu != 0
  Admissibility level_mu0;        // mu = 0, b != 0
  Admissibility soliton_b0;       // level_b0 and E < 8 mu^2
  Admissibility soliton_mu0;      // level_mu0 and E > 0
  Admissibility soliton_general;  // b + mu != 0
  Admissibility sn_family;        // b = -2mu, N^2 = (mu^2+1)/(2mu^2), 0 < mu < 1
  std::vector<std::string> warnings;
};

ValidationReport validate_params(const ModelParams& p);

/// Relative/absolute closeness used for "exact" parameter relations that
/// arrive as floating-point input.
inline constexpr double kParamTolerance = 1e-12;
bool nearly_equal(double a, double b, double tol = kParamTolerance) noexcept;

}  // namespace nlqm

namespace nlohmann {
template <>
struct adl_serializer<nlqm::ModelParams> {
  static void to_json(json& j, const nlqm::ModelParams& p) { j = nlqm::params_to_json(p); }
  static nlqm::ModelParams from_json(const json& j) { return nlqm::params_from_json(j); }
};
}  // namespace nlohmann
