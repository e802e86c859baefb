#include "nlqm/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "nlqm/dynamics.hpp"
#include "nlqm/elliptic.hpp"
#include "nlqm/errors.hpp"

namespace nlqm {

const char* to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::sn_family: return "sn";
    case FamilyTag::abel_bernoulli: return "abel";
    case FamilyTag::soliton_b0: return "soliton-b0";
    case FamilyTag::soliton_mu0: return "soliton-mu0";
    case FamilyTag::soliton_general: return "soliton-general";
  }
  return "?";
}

const char* to_string(DerivativeMethod m) {
  return m == DerivativeMethod::analytic ? "analytic" : "central-difference";
}

namespace {

void require(const Admissibility& a, FamilyTag tag) {
  if (!a.ok) {
    throw BranchError(std::string(to_string(tag)) + " family: " + a.reason);
  }
}

}  // namespace

SolutionFamily::SolutionFamily(FamilyTag tag, const ModelParams& params, double B)
    : tag_(tag), params_(params), B_(B) {
  const ValidationReport v = validate_params(params);
  switch (tag) {
    case FamilyTag::sn_family: require(v.sn_family, tag); break;
    case FamilyTag::soliton_b0: require(v.soliton_b0, tag); break;
    case FamilyTag::soliton_mu0: require(v.soliton_mu0, tag); break;
    case FamilyTag::soliton_general: require(v.soliton_general, tag); break;
    case FamilyTag::abel_bernoulli:
      if (nearly_equal(params.mu(), 0.0)) {
        throw BranchError("abel family: mu != 0 required");
      }
      if (!std::isfinite(B)) throw BranchError("abel family: B must be finite");
      bernoulli_branch();
      break;
  }
}

SolutionFamily SolutionFamily::sn(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw BranchError("sn family: 0 < mu < 1 required");
  }
  return {FamilyTag::sn_family,
          ModelParams(mu, -2.0 * mu, std::sqrt((mu * mu + 1.0) / (2.0 * mu * mu)))};
}

BernoulliBranch SolutionFamily::bernoulli_branch() const {
  if (tag_ != FamilyTag::abel_bernoulli) {
    throw BranchError("Bernoulli branch requested for a non-abel family");
  }
  if (nearly_equal(params_.b(), -0.5 * params_.mu())) return BernoulliBranch::b_eq_minus_half_mu;
  if (nearly_equal(params_.b(), params_.mu())) return BernoulliBranch::b_eq_mu;
  throw BranchError("abel family: b = -mu/2 or b = mu required");
}

namespace {

// Largest single term of 1/2 M x'^2 + V(x); sets the rounding floor of E.
double first_integral_term_size(const ModelParams& p, double x, double xdot) {
  const double s = p.mu() + p.b();
  const double kinetic = 0.5 * pdm_mass(p, x) * xdot * xdot;
  const double v1 = 2.0 * s * s * p.N() * p.N() * std::pow(x, -p.mu() / s);
  const double v2 = 8.0 * s * s * std::pow(x, p.b() / s);
  return std::max({std::abs(kinetic), v1, v2});
}

void require_tag(const SolutionFamily& f, bool ok, const char* expected) {
  if (!ok) {
    throw BranchError(std::string("expected ") + expected + " family, got " + to_string(f.tag()));
  }
}

bool is_soliton(FamilyTag tag) {
  return tag == FamilyTag::soliton_b0 || tag == FamilyTag::soliton_mu0 ||
         tag == FamilyTag::soliton_general;
}

// Closed-form sn-family pair with derivatives; x'' is not available.
struct SnFamilyDerivs {
  double y, yp, ypp;
  double x, xp;
};

SnFamilyDerivs sn_family_derivs(const ModelParams& p, double t) {
  const double mu = p.mu();
  const auto [sn, cn, dn] = jacobi_sncndn(t, EllipticModulus(mu));
  const double curv = dn * dn + mu * mu * cn * cn;  // -(d/dt)(cn dn) / sn
  SnFamilyDerivs d{};
  d.y = sn;
  d.yp = cn * dn;
  d.ypp = -sn * curv;
  d.x = (mu * mu + 1.0) / (16.0 * mu * mu) - sn * sn / 8.0 - cn * dn / (8.0 * mu);
  d.xp = -sn * cn * dn / 4.0 + sn * curv / (8.0 * mu);
  return d;
}

double sech2(double u) {
  const double c = std::cosh(std::abs(u));
  return 1.0 / (c * c);
}

// x = A sech^2(ct) and the companion y = c tanh(ct) / (b + mu) of the coupled system.
struct SolitonDerivs {
  double x, xp, xpp;
  double y, yp, ypp;
};

SolitonDerivs soliton_derivs(const SolutionFamily& f, double t) {
  const auto [A, c] = soliton_profile(f);
  const double s = sech2(c * t);
  const double th = std::tanh(c * t);
  const double k = f.params().mu() + f.params().b();
  SolitonDerivs d{};
  d.x = A * s;
  d.xp = -2.0 * A * c * s * th;
  d.xpp = A * c * c * (4.0 * s - 6.0 * s * s);
  d.y = c * th / k;
  d.yp = c * c * s / k;
  d.ypp = -2.0 * c * c * c * s * th / k;
  return d;
}

}  // namespace

SnFamilyPoint eval_sn_family(const SolutionFamily& f, double t) {
  require_tag(f, f.tag() == FamilyTag::sn_family, "sn");
  const auto d = sn_family_derivs(f.params(), t);
  return {d.y, d.x};
}

double eval_abel_solution(double N, double B, double xi) {
  const double root = std::sqrt(std::abs((xi - 1.0) * (xi + 1.0)));
  const double den = xi + B * root;
  const double scale = std::abs(xi) + std::abs(B * root);
  if (std::abs(den) <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
    std::ostringstream os;
    os << "abel solution has a pole at xi = " << xi << " (B = " << B << ")";
    throw PoleError(os.str(), xi);
  }
  return N / den;
}

std::vector<double> abel_poles(double B) {
  if (B == 0.0) return {0.0};
  const double sign = B > 0.0 ? 1.0 : -1.0;
  const double a = std::abs(B);
  std::vector<double> poles{-sign * a / std::sqrt(1.0 + a * a)};
  if (a > 1.0) poles.push_back(-sign * a / std::sqrt((a - 1.0) * (a + 1.0)));
  std::sort(poles.begin(), poles.end());
  return poles;
}

SechProfile soliton_profile(const SolutionFamily& f) {
  require_tag(f, is_soliton(f.tag()), "soliton");
  const ModelParams& p = f.params();
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  switch (f.tag()) {
    case FamilyTag::soliton_b0: {
      const double E = *p.E();
      return {2.0 * mu * mu * N * N / (8.0 * mu * mu - E), N * mu};
    }
    case FamilyTag::soliton_mu0: {
      const double E = *p.E();
      return {(E + 2.0 * b * b * N * N) / (8.0 * b * b), std::sqrt(0.5 * E + b * b * N * N)};
    }
    default:
      return {0.25 * N * N, (mu + b) * N};
  }
}

double eval_soliton(const SolutionFamily& f, double t) {
  const auto [A, c] = soliton_profile(f);
  return A * sech2(c * t);
}

double ResidualReport::tolerance() const noexcept {
  return derivative_method == DerivativeMethod::analytic ? kAnalyticResidualTol
                                                         : kDifferenceResidualTol;
}

namespace {

void record(ResidualReport& r, double t, double residual) {
  const double a = std::abs(residual);
  if (!(a <= r.max_abs_residual)) {  // NaN propagates as a failure
    r.max_abs_residual = std::isnan(a) ? std::numeric_limits<double>::infinity() : a;
    r.worst_point = t;
  }
}

double second_order_rhs(const ModelParams& p, SystemForm form, double u, double up, double t) {
  if (form == SystemForm::levinson_smith_x && !(u > 0.0)) {
    std::ostringstream os;
    os << "x = " << u << " <= 0 at grid point t = " << t;
    throw SingularityError(os.str(), t);
  }
  return form == SystemForm::lienard_y ? rhs_lienard_y(p, u, up) : rhs_levinson_x(p, u, up);
}

// The closed form loses digits to cancellation in xi + B sqrt|xi^2 - 1| next to
// a pole, so the Abel check runs in extended precision: y, an eighth-order
// central difference for dy/dxi, and the Bernoulli right-hand side.
using Wide = long double;

Wide abel_y_wide(Wide N, Wide B, Wide xi) {
  return N / (xi + B * std::sqrt(std::abs((xi - 1) * (xi + 1))));
}

Wide dy_dxi_wide(Wide N, Wide B, Wide xi, Wide h) {
  constexpr Wide c[4] = {Wide(4) / 5, Wide(-1) / 5, Wide(4) / 105, Wide(-1) / 280};
  Wide sum = 0;
  for (int j = 3; j >= 0; --j) {
    sum += c[j] * (abel_y_wide(N, B, xi + (j + 1) * h) - abel_y_wide(N, B, xi - (j + 1) * h));
  }
  return sum / h;
}

ResidualReport verify_abel(const SolutionFamily& f, const std::vector<double>& grid) {
  const ModelParams& p = f.params();
  const BernoulliBranch branch = f.bernoulli_branch();
  const Wide N = p.N();
  const Wide B = f.B();
  // z = m N xi with m = mu or 2 mu; dy/dz = (y z - m y^2) / (m^2 N^2 - z^2).
  const Wide m = bernoulli_z_of_xi(p, branch, 1.0) / p.N();

  std::vector<double> singular{-1.0, 1.0};
  for (double pole : abel_poles(f.B())) singular.push_back(pole);

  ResidualReport r;
  r.grid = grid;
  r.derivative_method = DerivativeMethod::central_difference;
  for (double xi : grid) {
    double dist = std::numeric_limits<double>::infinity();
    for (double s : singular) dist = std::min(dist, std::abs(xi - s));
    if (dist < kAbelExclusion) {
      std::ostringstream os;
      os << "grid point xi = " << xi << " lies within " << kAbelExclusion
         << " of a cusp or pole";
      throw SingularityError(os.str(), xi);
    }
    const Wide h = kAbelStepFraction * std::min(dist, 1.0);
    const Wide y = abel_y_wide(N, B, xi);
    const Wide z = m * N * xi;
    const Wide rhs = (y * z - m * y * y) / (m * m * N * N - z * z);
    record(r, xi, static_cast<double>(dy_dxi_wide(N, B, xi, h) / (m * N) - rhs));
  }
  return r;
}

}  // namespace

ResidualReport verify_profile(const ModelParams& p, SystemForm form, const Profile& u,
                              const std::vector<double>& grid, DerivativeMethod method) {
  if (form == SystemForm::coupled_xy) {
    throw DomainError("verify_profile: a scalar profile needs a second-order form");
  }
  ResidualReport r;
  r.grid = grid;
  r.derivative_method = method;
  for (double t : grid) {
    const ProfileSample s = u(t);
    record(r, t, s.d2 - second_order_rhs(p, form, s.value, s.d1, t));
  }
  return r;
}

ResidualReport verify_residual(const SolutionFamily& f, SystemForm form,
                               const std::vector<double>& grid) {
  const ModelParams& p = f.params();

  if (f.tag() == FamilyTag::abel_bernoulli) {
    if (form != SystemForm::lienard_y) {
      throw BranchError("abel family is checked against the Bernoulli reduction of lienard-y");
    }
    return verify_abel(f, grid);
  }

  if (form == SystemForm::coupled_xy) {
    ResidualReport r;
    r.grid = grid;
    for (double t : grid) {
      double y, yp, x, xp;
      if (f.tag() == FamilyTag::sn_family) {
        const auto d = sn_family_derivs(p, t);
        y = d.y, yp = d.yp, x = d.x, xp = d.xp;
      } else {
        const auto d = soliton_derivs(f, t);
        y = d.y, yp = d.yp, x = d.x, xp = d.xp;
      }
      const double ry = yp - (p.mu() * (p.N() * p.N() - y * y) + 4.0 * p.b() * x);
      const double rx = xp - (-2.0 * (p.b() + p.mu()) * y * x);
      record(r, t, std::max(std::abs(ry), std::abs(rx)));
    }
    return r;
  }

  if (f.tag() == FamilyTag::sn_family) {
    if (form == SystemForm::lienard_y) {
      return verify_profile(p, form, [&](double t) {
        const auto d = sn_family_derivs(p, t);
        return ProfileSample{d.y, d.yp, d.ypp};
      }, grid, DerivativeMethod::analytic);
    }
    return verify_profile(p, form, [&](double t) {
      const auto d = sn_family_derivs(p, t);
      const double h = kDifferenceStep;
      const double xpp =
          (sn_family_derivs(p, t + h).xp - sn_family_derivs(p, t - h).xp) / (2.0 * h);
      return ProfileSample{d.x, d.xp, xpp};
    }, grid, DerivativeMethod::central_difference);
  }

  return verify_profile(p, form, [&](double t) {
    const auto d = soliton_derivs(f, t);
    return form == SystemForm::lienard_y ? ProfileSample{d.y, d.yp, d.ypp}
                                         : ProfileSample{d.x, d.xp, d.xpp};
  }, grid, DerivativeMethod::analytic);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) return {lo};
  std::vector<double> g(n);
  const double span = hi - lo;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + span * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

std::vector<double> abel_regular_grid(double B, double lo, double hi, std::size_t n,
                                      double exclusion) {
  std::vector<double> singular{-1.0, 1.0};
  for (double pole : abel_poles(B)) singular.push_back(pole);
  std::vector<double> out;
  for (double xi : uniform_grid(lo, hi, n)) {
    const bool near = std::any_of(singular.begin(), singular.end(),
                                  [&](double s) { return std::abs(xi - s) < exclusion; });
    if (!near) out.push_back(xi);
  }
  return out;
}

FirstIntegralDrift first_integral_along(const SolutionFamily& f, const std::vector<double>& grid) {
  require_tag(f, is_soliton(f.tag()), "soliton");
  if (grid.empty()) throw DomainError("first_integral_along: empty grid");
  const ModelParams& p = f.params();
  std::vector<double> value(grid.size()), scale(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto s = soliton_derivs(f, grid[i]);
    value[i] = first_integral(p, s.x, s.xp);
    scale[i] = std::max(1.0, first_integral_term_size(p, s.x, s.xp));
  }
  const auto ref = static_cast<std::size_t>(
      std::min_element(scale.begin(), scale.end()) - scale.begin());
  FirstIntegralDrift d{};
  d.first = d.min = d.max = value[ref];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dev = std::abs(value[i] - d.first);
    d.min = std::min(d.min, value[i]);
    d.max = std::max(d.max, value[i]);
    d.max_abs_deviation = std::max(d.max_abs_deviation, dev);
    d.max_scaled_deviation = std::max(d.max_scaled_deviation, dev / scale[i]);
  }
  return d;
}

double FirstIntegralDrift::relative() const noexcept {
  return first == 0.0 ? max_abs_deviation : max_abs_deviation / std::abs(first);
}

FirstIntegralDrift first_integral_along(const ModelParams& p, const Trajectory& tr) {
  p.lambda_exp();
  if (tr.form() == SystemForm::lienard_y) {
    throw DomainError("first integral needs x; lienard-y trajectories carry y");
  }
  FirstIntegralDrift d{};
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const auto s = tr.state(i);
    const double xdot = tr.form() == SystemForm::levinson_smith_x
                            ? s[1]
                            : -2.0 * (p.b() + p.mu()) * s[1] * s[0];
    const double e = first_integral(p, s[0], xdot);
    if (i == 0) d.first = d.min = d.max = e;
    d.min = std::min(d.min, e);
    d.max = std::max(d.max, e);
    d.max_abs_deviation = std::max(d.max_abs_deviation, std::abs(e - d.first));
    d.max_scaled_deviation =
        std::max(d.max_scaled_deviation,
                 std::abs(e - d.first) / std::max(1.0, first_integral_term_size(p, s[0], xdot)));
  }
  return d;
}

nlohmann::json report_to_json(const ResidualReport& r) {
  nlohmann::json j = {
      {"grid_size", r.grid.size()},
      {"max_abs_residual", r.max_abs_residual},
      {"worst_point", r.worst_point},
      {"derivative_method", to_string(r.derivative_method)},
      {"tolerance", r.tolerance()},
      {"pass", r.passed()},
  };
  if (!r.grid.empty()) {
    j["grid_min"] = r.grid.front();
    j["grid_max"] = r.grid.back();
  }
  return j;
}

}  // namespace nlqm
