#include "nlqm/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "nlqm/errors.hpp"

namespace nlqm {

namespace {

constexpr int kMaxIterations = 64;
constexpr double kTolerance = 1e-14;

}  // namespace

EllipticModulus::EllipticModulus(double k) : k_(k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw DomainError("elliptic modulus must lie in [0, 1]");
  }
}

double EllipticModulus::complement() const noexcept {
  // (1 - k)(1 + k) keeps digits when k is close to 1.
  return std::sqrt((1.0 - k_) * (1.0 + k_));
}

double complete_K(EllipticModulus modulus) {
  if (modulus.k() == 1.0) {
    throw DomainError("K diverges at k = 1");
  }
  double a = 1.0;
  double g = modulus.complement();
  for (int i = 0; i < kMaxIterations; ++i) {
    if (std::abs(a - g) <= kTolerance * a) {
      return std::numbers::pi / (a + g);
    }
    const double next = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = next;
  }
  throw ConvergenceError("AGM for K(k) did not converge");
}

EllipticTriple jacobi_sncndn(double u, EllipticModulus modulus) {
  if (!std::isfinite(u)) {
    throw DomainError("jacobi_sncndn: argument must be finite");
  }
  const double k = modulus.k();
  if (k == 0.0) {
    return {std::sin(u), std::cos(u), 1.0};
  }
  if (k == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }

  // Descending Landen sequence: a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n),
  // c_{n+1} = (a_n - b_n)/2, starting from (1, k', k).
  std::array<double, kMaxIterations + 1> a{};
  std::array<double, kMaxIterations + 1> c{};
  a[0] = 1.0;
  c[0] = k;
  double g = modulus.complement();
  int n = 0;
  while (std::abs(c[n]) > kTolerance * a[n]) {
    if (n == kMaxIterations) {
      throw ConvergenceError("Landen recursion for sn/cn/dn did not converge");
    }
    a[n + 1] = 0.5 * (a[n] + g);
    c[n + 1] = 0.5 * (a[n] - g);
    g = std::sqrt(a[n] * g);
    ++n;
  }

  // Amplitude recursion back down: phi_{n-1} = (phi_n + asin(c_n/a_n sin phi_n)) / 2.
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) {
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn > 0 for k < 1. The cos(phi_1 - phi_0) ratio is 0/0 at the quarter
  // period, so use the factored identity instead.
  const double dn = std::sqrt((1.0 - k * sn) * (1.0 + k * sn));
  return {sn, cn, dn};
}

}  // namespace nlqm
