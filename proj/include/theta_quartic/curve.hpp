#pragma once

#include <array>

#include "theta_quartic/theta.hpp"

namespace tq {

/// A line c1 X1 + c2 X2 + c3 X3 = 0 in P^2, i.e. a nonzero covector up to scale.
class ProjLine {
 public:
  /// Throws DegenerateInputError on the zero covector.
  explicit ProjLine(const Vector3c& covector);
  ProjLine(Complex c1, Complex c2, Complex c3) : ProjLine(Vector3c(c1, c2, c3)) {}

  const Vector3c& covector() const { return c_; }
  /// Same line, scaled so its largest-modulus entry equals 1.
  ProjLine normalized() const;

 private:
  Vector3c c_;
};

/// ||a x b|| / (||a|| ||b||): zero iff the covectors are proportional.
double projective_distance(const Vector3c& a, const Vector3c& b);
inline double projective_distance(const ProjLine& a, const ProjLine& b) {
  return projective_distance(a.covector(), b.covector());
}

/// Degree-4 ternary form sum c_{abc} X1^a X2^b X3^c, coefficients in graded-lex order:
/// X1^4, X1^3X2, X1^3X3, X1^2X2^2, X1^2X2X3, X1^2X3^2, X1X2^3, X1X2^2X3, X1X2X3^2, X1X3^3,
/// X2^4, X2^3X3, X2^2X3^2, X2X3^3, X3^4.
class QuarticCurve {
 public:
  using Exponent = std::array<int, 3>;

  /// Throws DegenerateInputError when every coefficient is zero.
  explicit QuarticCurve(const std::array<Complex, 15>& coeffs);

  static const std::array<Exponent, 15>& monomials();
  /// Position of X1^a X2^b X3^c in the coefficient array.
  static int index_of(const Exponent& exponent);

  const std::array<Complex, 15>& coeffs() const { return coeffs_; }
  Complex coeff(const Exponent& exponent) const { return coeffs_[index_of(exponent)]; }
  Complex evaluate(const Vector3c& x) const;
  /// max |c|
  double max_abs_coeff() const;

 private:
  std::array<Complex, 15> coeffs_;
};

/// The Riemann-model quartic 4 P1 P2 - (P1 + P2 - P3)^2 with P_r = X_r xi_r, kept in
/// factored form. Near degenerate frames the expanded coefficients lose most of their
/// relative accuracy along some bitangents; the factors do not.
struct RiemannModel {
  std::array<ProjLine, 3> xi;  ///< xi_23, xi_13, xi_12
};

}  // namespace tq
