#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlqm/params.hpp"
#include "nlqm/transforms.hpp"

namespace nlqm {

enum class FamilyTag { sn_family, abel_bernoulli, soliton_b0, soliton_mu0, soliton_general };

const char* to_string(FamilyTag tag);

/// A closed-form solution family with parameters that satisfy its validity
/// conditions. Construction is the only validation point; a SolutionFamily
/// that exists is admissible.
///
///   sn-family        b = -2mu, 0 < mu < 1, N^2 = (mu^2 + 1)/(2mu^2)
///   abel-bernoulli   b = -mu/2 or b = mu, mu != 0; B is the free constant
///   soliton-b0       b = 0, mu != 0, E < 8mu^2
///   soliton-mu0      mu = 0, b != 0, E > 0
///   soliton-general  b + mu != 0
class SolutionFamily {
 public:
  /// Validates; throws BranchError naming the violated constraint.
  SolutionFamily(FamilyTag tag, const ModelParams& params, double B = 0.0);

  /// sn-family for modulus mu, with b and N derived from the constraints.
  static SolutionFamily sn(double mu);

  FamilyTag tag() const noexcept { return tag_; }
  const ModelParams& params() const noexcept { return params_; }
  double B() const noexcept { return B_; }
  /// Only for abel-bernoulli.
  BernoulliBranch bernoulli_branch() const;

 private:
  FamilyTag tag_;
  ModelParams params_;
  double B_;
};

struct SnFamilyPoint {
  double y;
  double x;
};

/// y = sn(t, mu), x = (mu^2+1)/(16mu^2) - sn^2/8 - cn dn/(8mu). The modulus of
/// the elliptic functions is mu itself.
SnFamilyPoint eval_sn_family(const SolutionFamily& f, double t);

/// y(xi) = N / (xi + B sqrt|xi^2 - 1|). Finite at the cusps xi = +-1 (value
/// N/xi). Throws PoleError at a vanishing denominator.
double eval_abel_solution(double N, double B, double xi);

/// Real zeros of xi + B sqrt|xi^2 - 1|, ascending.
std::vector<double> abel_poles(double B);

/// x(t) = amplitude * sech^2(rate * t).
struct SechProfile {
  double amplitude;
  double rate;
};

/// Amplitude and rate of a soliton family:
///   soliton-b0       2mu^2 N^2 / (8mu^2 - E),   N mu
///   soliton-mu0      (E + 2b^2 N^2) / (8b^2),   sqrt(E/2 + b^2 N^2)
///   soliton-general  N^2 / 4,                   (mu + b) N
SechProfile soliton_profile(const SolutionFamily& f);

/// x(t) of a soliton family. Even in t; strictly positive while sech^2 does not
/// underflow.
double eval_soliton(const SolutionFamily& f, double t);

/// Value and first two derivatives of a scalar function of time.
struct ProfileSample {
  double value;
  double d1;
  double d2;
};

using Profile = std::function<ProfileSample(double)>;

enum class DerivativeMethod { analytic, central_difference };

const char* to_string(DerivativeMethod m);

/// Residual tolerances: analytic derivatives, and central differences with
/// step 1e-5.
inline constexpr double kAnalyticResidualTol = 1e-8;
inline constexpr double kDifferenceResidualTol = 1e-6;
inline constexpr double kDifferenceStep = 1e-5;

struct ResidualReport {
  std::vector<double> grid;
  double max_abs_residual = 0.0;
  double worst_point = 0.0;
  DerivativeMethod derivative_method = DerivativeMethod::analytic;

  /// Tolerance that applies to the derivative method used.
  double tolerance() const noexcept;
  bool passed() const noexcept { return max_abs_residual <= tolerance(); }
};

/// Residual of a candidate profile in one of the second-order forms, i.e.
/// u'' - rhs(u, u') for lienard_y / levinson_smith_x. Throws
/// SingularityError at grid points where the form is singular.
ResidualReport verify_profile(const ModelParams& p, SystemForm form, const Profile& u,
                              const std::vector<double>& grid, DerivativeMethod method);

/// Residual of the closed form `f` against `form` on `grid`.
///
/// sn and soliton families are checked against all three SystemForms. The
/// closed forms provide analytic derivatives except x'' of the sn-family,
/// which is differenced. For coupled_xy the larger of the two rate
/// residuals is reported.
///
/// abel-bernoulli is not a time solution: the grid holds xi values and the
/// residual is that of the Bernoulli equation dy/dz of its branch (the
/// reduction of the Lienard form, so `form` must be lienard_y). dy/dxi is
/// an eighth-order central difference with step kAbelStepFraction times the
/// distance to the nearest cusp or pole, evaluated in long double because the
/// closed form cancels badly next to a pole.
/// Grid points within kAbelExclusion of a cusp or pole throw
/// SingularityError.
ResidualReport verify_residual(const SolutionFamily& f, SystemForm form,
                               const std::vector<double>& grid);

inline constexpr double kAbelExclusion = 1e-3;
/// Difference step for the Abel check, as a fraction of the distance to the
/// nearest cusp or pole (capped at 1).
inline constexpr double kAbelStepFraction = 0.004;

/// Uniform xi grid on [lo, hi] with points closer than `exclusion` to a cusp
/// (xi = +-1) or pole of the B-solution dropped.
std::vector<double> abel_regular_grid(double B, double lo, double hi, std::size_t n,
                                      double exclusion = kAbelExclusion);

std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// Spread of the first integral along a soliton profile.
struct FirstIntegralDrift {
  double first;
  double min;
  double max;
  double max_abs_deviation;  // max |E(t) - E(t_0)|
  // max |E(t) - E(t_0)| / max(1, largest |term| of E at t). The terms blow up
  // as x -> 0 and cancel, so this is the rounding-aware measure.
  double max_scaled_deviation;

  /// max |E(t) - E(t_0)| / |E(t_0)|, or the absolute deviation when E(t_0) = 0.
  double relative() const noexcept;
};

/// For a family, t_0 is the grid point where the terms of E are smallest.
FirstIntegralDrift first_integral_along(const SolutionFamily& f, const std::vector<double>& grid);

/// Same, along the rows of a coupled_xy or levinson_smith_x trajectory. For
/// coupled_xy, dx/dt is recomputed from the rates. Throws BranchError for
/// b + mu = 0 and DomainError for a lienard_y trajectory.
FirstIntegralDrift first_integral_along(const ModelParams& p, const Trajectory& tr);

nlohmann::json report_to_json(const ResidualReport& r);

}  // namespace nlqm
