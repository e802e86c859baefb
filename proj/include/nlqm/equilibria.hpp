#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "json.hpp"
#include "nlqm/params.hpp"

namespace nlqm {

struct FixedPoint {
  double x;
  double y;
};

enum class StabilityClass {
  stable_node,
  unstable_node,
  saddle,
  stable_spiral,
  unstable_spiral,
  center,
  degenerate
};

const char* to_string(StabilityClass c);

/// Linearisation of the coupled system at a fixed point.
///
/// The Jacobian uses state ordering (y, x), so that
///   J = [[d(dy/dt)/dy, d(dy/dt)/dx], [d(dx/dt)/dy, d(dx/dt)/dx]]
/// and the top-right entry is 4b.
struct EquilibriumReport {
  FixedPoint point;
  Eigen::Matrix2d jacobian;
  double trace;
  double det;
  std::array<std::complex<double>, 2> eigenvalues;
  StabilityClass classification;
};

/// |det| or |discriminant| below this is reported as degenerate.
inline constexpr double kDegenerateThreshold = 1e-9;
/// Largest rate residual accepted by classify().
inline constexpr double kEquilibriumResidual = 1e-9;

/// (0, N), (0, -N), and (-mu N^2 / (4b), 0) when b != 0.
std::vector<FixedPoint> find_equilibria(const ModelParams& p);

/// Analytic Jacobian of the coupled rates at an arbitrary point.
Eigen::Matrix2d coupled_jacobian(const ModelParams& p, const FixedPoint& at);

/// Classifies by the sign pattern of (trace, det, trace^2 - 4 det).
StabilityClass classify_linear(double trace, double det);

/// Throws DomainError (message carries the residual) if `point` does not zero
/// the coupled rates to kEquilibriumResidual.
EquilibriumReport classify(const ModelParams& p, const FixedPoint& point);

nlohmann::json report_to_json(const EquilibriumReport& r);

}  // namespace nlqm
