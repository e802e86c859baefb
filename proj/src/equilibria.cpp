#include "nlqm/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlqm/errors.hpp"

namespace nlqm {

const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::stable_node: return "stable-node";
    case StabilityClass::unstable_node: return "unstable-node";
    case StabilityClass::saddle: return "saddle";
    case StabilityClass::stable_spiral: return "stable-spiral";
    case StabilityClass::unstable_spiral: return "unstable-spiral";
    case StabilityClass::center: return "center";
    case StabilityClass::degenerate: return "degenerate";
  }
  return "?";
}

std::vector<FixedPoint> find_equilibria(const ModelParams& p) {
  std::vector<FixedPoint> points{{0.0, p.N()}, {0.0, -p.N()}};
  if (p.b() != 0.0) {
    points.push_back({-p.mu() * p.N() * p.N() / (4.0 * p.b()), 0.0});
  }
  return points;
}

Eigen::Matrix2d coupled_jacobian(const ModelParams& p, const FixedPoint& at) {
  const double mu = p.mu();
  const double b = p.b();
  Eigen::Matrix2d J;
  J << -2.0 * mu * at.y, 4.0 * b,
       -2.0 * (b + mu) * at.x, -2.0 * (b + mu) * at.y;
  return J;
}

StabilityClass classify_linear(double trace, double det) {
  if (std::abs(det) < kDegenerateThreshold) return StabilityClass::degenerate;
  if (det < 0.0) return StabilityClass::saddle;
  const double disc = trace * trace - 4.0 * det;
  if (std::abs(disc) < kDegenerateThreshold) return StabilityClass::degenerate;
  if (disc > 0.0) {
    return trace < 0.0 ? StabilityClass::stable_node : StabilityClass::unstable_node;
  }
  if (std::abs(trace) < kDegenerateThreshold) return StabilityClass::center;
  return trace < 0.0 ? StabilityClass::stable_spiral : StabilityClass::unstable_spiral;
}

EquilibriumReport classify(const ModelParams& p, const FixedPoint& point) {
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  const double r_y = mu * (N * N - point.y * point.y) + 4.0 * b * point.x;
  const double r_x = -2.0 * (b + mu) * point.y * point.x;
  const double residual = std::max(std::abs(r_y), std::abs(r_x));
  if (!(residual <= kEquilibriumResidual)) {
    std::ostringstream os;
    os << "point (" << point.x << ", " << point.y << ") is not an equilibrium: residual "
       << residual;
    throw DomainError(os.str());
  }

  EquilibriumReport r;
  r.point = point;
  r.jacobian = coupled_jacobian(p, point);
  r.trace = r.jacobian.trace();
  r.det = r.jacobian.determinant();
  const double disc = r.trace * r.trace - 4.0 * r.det;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    r.eigenvalues = {std::complex<double>(0.5 * (r.trace + root), 0.0),
                     std::complex<double>(0.5 * (r.trace - root), 0.0)};
  } else {
    const double root = std::sqrt(-disc);
    r.eigenvalues = {std::complex<double>(0.5 * r.trace, 0.5 * root),
                     std::complex<double>(0.5 * r.trace, -0.5 * root)};
  }
  r.classification = classify_linear(r.trace, r.det);
  return r;
}

nlohmann::json report_to_json(const EquilibriumReport& r) {
  using nlohmann::json;
  json eig = json::array();
  for (const auto& l : r.eigenvalues) eig.push_back({l.real(), l.imag()});
  return {
      {"point", {r.point.x, r.point.y}},
      {"ordering", "(y, x)"},
      {"jacobian",
       {{r.jacobian(0, 0), r.jacobian(0, 1)}, {r.jacobian(1, 0), r.jacobian(1, 1)}}},
      {"trace", r.trace},
      {"det", r.det},
      {"eigenvalues", eig},
      {"class", to_string(r.classification)},
  };
}

}  // namespace nlqm
