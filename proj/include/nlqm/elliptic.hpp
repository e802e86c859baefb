#pragma once

namespace nlqm {

/// Elliptic modulus k in [0, 1].
///
/// The convention is the modulus k, NOT the parameter m = k^2:
///   dn^2 = 1 - k^2 sn^2,   sn'' + (1 + k^2) sn - 2 k^2 sn^3 = 0.
/// Both endpoints are admitted; k = 0 and k = 1 are the trigonometric and
/// hyperbolic degenerations.
class EllipticModulus {
 public:
  explicit EllipticModulus(double k);
  double k() const noexcept { return k_; }
  /// Complementary modulus sqrt(1 - k^2).
  double complement() const noexcept;

 private:
  double k_;
};

struct EllipticTriple {
  double sn;
  double cn;
  double dn;
};

/// Complete elliptic integral of the first kind K(k) by the arithmetic-
/// geometric mean, K = pi / (2 agm(1, sqrt(1 - k^2))). The period of sn is 4K.
/// Throws DomainError for k = 1 (K diverges).
double complete_K(EllipticModulus k);

/// Jacobi sn, cn, dn at real argument u by descending Landen transformation.
/// Throws DomainError for non-finite u.
EllipticTriple jacobi_sncndn(double u, EllipticModulus k);

}  // namespace nlqm
