#include "nlqm/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlqm/errors.hpp"

namespace nlqm {

bool nearly_equal(double a, double b, double tol) noexcept {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

ModelParams::ModelParams(double mu, double b, double N, std::optional<double> E)
    : mu_(mu), b_(b), N_(N), E_(E) {
  if (!std::isfinite(mu) || !std::isfinite(b) || !std::isfinite(N)) {
    throw DomainError("model parameters must be finite");
  }
  if (!(N > 0.0)) {
    throw DomainError("N must be positive");
  }
  if (E && !std::isfinite(*E)) {
    throw DomainError("E must be finite");
  }
  if (!nearly_equal(b, -mu)) {
    lambda_ = (2.0 * b + 3.0 * mu) / (2.0 * (b + mu));
  }
}

double ModelParams::require_E(const char* what) const {
  if (!E_) {
    throw BranchError(std::string(what) + " requires the level-surface energy E");
  }
  return *E_;
}

double ModelParams::lambda_exp() const {
  if (!lambda_) {
    throw BranchError("Levinson-Smith branch requires b + mu != 0");
  }
  return *lambda_;
}

nlohmann::json params_to_json(const ModelParams& p) {
  nlohmann::json j = {{"mu", p.mu()}, {"b", p.b()}, {"N", p.N()}};
  if (p.E()) j["E"] = *p.E();
  return j;
}

namespace {

double number_at(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw DomainError(std::string("parameter \"") + key + "\" missing or not a number");
  }
  return it->get<double>();
}

}  // namespace

ModelParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("parameters must be a JSON object");
  std::optional<double> E;
  if (j.contains("E") && !j.at("E").is_null()) E = number_at(j, "E");
  return {number_at(j, "mu"), number_at(j, "b"), number_at(j, "N"), E};
}

PhaseState::PhaseState(double t, double x, double y) : t_(t), x_(x), y_(y) {
  if (!std::isfinite(t) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("phase state must be finite");
  }
  if (x < 0.0) {
    throw DomainError("x = |gamma|^2 must be non-negative");
  }
}

bool PhaseState::exceeds_norm(double N) const noexcept { return std::abs(y_) > N; }

const char* to_string(SystemForm form) {
  switch (form) {
    case SystemForm::coupled_xy: return "coupled-xy";
    case SystemForm::lienard_y: return "lienard-y";
    case SystemForm::levinson_smith_x: return "levinson-smith-x";
  }
  return "?";
}

const char* to_string(IntegrationMethod method) {
  switch (method) {
    case IntegrationMethod::rk4_fixed: return "rk4-fixed";
    case IntegrationMethod::adaptive: return "adaptive";
  }
  return "?";
}

Trajectory::Trajectory(SystemForm form, IntegrationMethod method, double t0,
                       const Eigen::Vector2d& s0)
    : form_(form), method_(method), times_{t0}, states_{s0} {}

void Trajectory::append(double t, const Eigen::Vector2d& s) {
  if (!(t > times_.back())) {
    throw DomainError("trajectory times must be strictly increasing");
  }
  times_.push_back(t);
  states_.push_back(s);
}

PhaseState Trajectory::phase_state(std::size_t i) const {
  const auto& s = states_.at(i);
  return {times_.at(i), s[0], s[1]};
}

namespace {

Admissibility admit() { return {true, {}}; }
Admissibility reject(std::string why) { return {false, std::move(why)}; }

}  // namespace

ValidationReport validate_params(const ModelParams& p) {
  const double mu = p.mu();
  const double b = p.b();
  const double N = p.N();
  ValidationReport r;

  r.levinson_smith = p.levinson_admissible() ? admit() : reject("b + mu != 0 required");
  r.soliton_general = r.levinson_smith;

  const bool b_zero = nearly_equal(b, 0.0);
  const bool mu_zero = nearly_equal(mu, 0.0);

  if (!b_zero) {
    r.level_b0 = reject("b = 0 required");
  } else if (mu_zero) {
    r.level_b0 = reject("mu != 0 required");
  } else {
    r.level_b0 = admit();
  }

  if (!mu_zero) {
    r.level_mu0 = reject("mu = 0 required");
  } else if (b_zero) {
    r.level_mu0 = reject("b != 0 required");
  } else {
    r.level_mu0 = admit();
  }

  if (!r.level_b0.ok) {
    r.soliton_b0 = r.level_b0;
  } else if (!p.E()) {
    r.soliton_b0 = reject("E required");
  } else if (!(*p.E() < 8.0 * mu * mu)) {
    r.soliton_b0 = reject("E < 8mu^2 required");
  } else {
    r.soliton_b0 = admit();
  }

  if (!r.level_mu0.ok) {
    r.soliton_mu0 = r.level_mu0;
  } else if (!p.E()) {
    r.soliton_mu0 = reject("E required");
  } else if (!(*p.E() > 0.0)) {
    r.soliton_mu0 = reject("E > 0 required");
  } else {
    r.soliton_mu0 = admit();
  }

  if (!(mu > 0.0 && mu < 1.0)) {
    r.sn_family = reject("0 < mu < 1 required");
  } else if (!nearly_equal(b, -2.0 * mu)) {
    r.sn_family = reject("b = -2mu required");
  } else if (!nearly_equal(N * N, (mu * mu + 1.0) / (2.0 * mu * mu))) {
    r.sn_family = reject("N^2 = (mu^2+1)/(2mu^2) required");
  } else {
    r.sn_family = admit();
  }

  if (p.E() && !(*p.E() > 0.0)) {
    std::ostringstream os;
    os << "level-surface energy E = " << *p.E() << " is not positive";
    r.warnings.push_back(os.str());
  }
  return r;
}

}  // namespace nlqm
