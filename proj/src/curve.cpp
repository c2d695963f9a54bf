#include "theta_quartic/curve.hpp"

#include "theta_quartic/errors.hpp"

namespace tq {

ProjLine::ProjLine(const Vector3c& covector) : c_(covector) {
  if (!c_.allFinite() || c_.cwiseAbs().maxCoeff() == 0.0) throw DegenerateInputError("line covector is zero");
}

ProjLine ProjLine::normalized() const {
  Eigen::Index at = 0;
  c_.cwiseAbs().maxCoeff(&at);
  return ProjLine(c_ / c_(at));
}

double projective_distance(const Vector3c& a, const Vector3c& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DegenerateInputError("projective_distance: zero covector");
  return a.cross(b).norm() / (na * nb);
}

const std::array<QuarticCurve::Exponent, 15>& QuarticCurve::monomials() {
  static const std::array<Exponent, 15> table = [] {
    std::array<Exponent, 15> t{};
    int i = 0;
    for (int a = 4; a >= 0; --a)
      for (int b = 4 - a; b >= 0; --b) t[i++] = {a, b, 4 - a - b};
    return t;
  }();
  return table;
}

int QuarticCurve::index_of(const Exponent& exponent) {
  const int a = exponent[0];
  const int b = exponent[1];
  if (a < 0 || b < 0 || exponent[2] < 0 || a + b + exponent[2] != 4)
    throw InputError("QuarticCurve::index_of: not a degree-4 exponent");
  // Blocks for X1^4, X1^3, ... have sizes 1, 2, 3, 4, 5.
  const int block_start = (4 - a) * (5 - a) / 2;
  return block_start + (4 - a - b);
}

QuarticCurve::QuarticCurve(const std::array<Complex, 15>& coeffs) : coeffs_(coeffs) {
  if (max_abs_coeff() == 0.0) throw DegenerateInputError("quartic is identically zero");
}

Complex QuarticCurve::evaluate(const Vector3c& x) const {
  Complex sum = 0.0;
  const auto& mons = monomials();
  for (int i = 0; i < 15; ++i) {
    Complex m = coeffs_[i];
    for (int v = 0; v < 3; ++v)
      for (int p = 0; p < mons[i][v]; ++p) m *= x(v);
    sum += m;
  }
  return sum;
}

double QuarticCurve::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace tq
