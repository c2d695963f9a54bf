#pragma once

// Riemann theta functions with integer characteristics in genus 3:
//
//   theta_m(tau, z) = sum_{n in Z^3} e[ (n + m'/2) tau (n + m'/2) + 2 (n + m'/2).(z + m''/2) ],
//   e(x) = exp(pi i x),
//
// evaluated by a truncated lattice sum whose radius follows a Gaussian tail bound.

#include <array>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "theta_quartic/char_algebra.hpp"

namespace tq {

using Complex = std::complex<double>;
using Vector3c = Eigen::Vector3cd;
using Matrix3c = Eigen::Matrix3cd;

/// e(x) = exp(pi i x). Every phase in the library goes through this helper or e_int.
inline Complex e(Complex x) { return std::exp(Complex(0.0, std::numbers::pi) * x); }
/// e(n) = (-1)^n for integer n, exactly.
inline int e_int(int n) { return (n % 2 == 0) ? 1 : -1; }
/// i^p for integer p, exactly.
Complex i_pow(int p);

/// A point of the Siegel upper half-space of degree 3.
class PeriodMatrix {
 public:
  /// Absolute tolerance on max |tau - tau^T| relative to max(1, max |tau_ij|).
  static constexpr double kSymmetryTolerance = 1e-9;

  /// Symmetrizes `raw`. Throws InvalidPeriodMatrix if it is asymmetric beyond the
  /// tolerance, has non-finite entries, or Im(tau) is not positive definite.
  explicit PeriodMatrix(const Matrix3c& raw);

  const Matrix3c& tau() const { return tau_; }
  const Eigen::Matrix3d& imag() const { return imag_; }
  const Eigen::Matrix3d& imag_inverse() const { return imag_inverse_; }
  double min_imag_eigenvalue() const { return min_eigenvalue_; }

 private:
  Matrix3c tau_;
  Eigen::Matrix3d imag_;
  Eigen::Matrix3d imag_inverse_;
  double min_eigenvalue_ = 0.0;
};

struct TruncationPolicy {
  int radius = 1;              ///< minimum summation radius (>= 1)
  double target_tail = 1e-15;  ///< Gaussian tail bound relative to the dominant term
  int max_radius = 64;         ///< hard cap; exceeding it is a TruncationError
};

/// Radius N of the cube ||n||_inf <= N summed for the reduced characteristic at z:
/// N = ceil(||c||_inf + sqrt(-ln(tail) / (pi lambda_min))), c the centre of the
/// Gaussian envelope (c = -m'/2 at real z).
int truncation_radius(const Characteristic& reduced, const PeriodMatrix& tau, const Vector3c& z,
                      const TruncationPolicy& policy);

/// theta_m(tau, z); non-reduced m is evaluated through its reduction and sign.
Complex theta(const Characteristic& m, const PeriodMatrix& tau, const Vector3c& z,
              const TruncationPolicy& policy = {});

/// theta_m(tau) = theta_m(tau, 0).
Complex theta_const(const Characteristic& m, const PeriodMatrix& tau, const TruncationPolicy& policy = {});

/// (d theta_m / d z_i)(tau, 0), i = 1..3, from the termwise differentiated series.
using ThetaGradient = Vector3c;
ThetaGradient grad_theta0(const Characteristic& m, const PeriodMatrix& tau, const TruncationPolicy& policy = {});

/// Value and z-gradient of theta_m at an arbitrary z.
struct ThetaJet {
  Complex value;
  Vector3c gradient;
};
ThetaJet theta_jet(const Characteristic& m, const PeriodMatrix& tau, const Vector3c& z,
                   const TruncationPolicy& policy = {});

/// det of the stacked gradients grad theta[q1], grad theta[q2], grad theta[q3] at z = 0.
Complex jacobian_det(const Characteristic& q1, const Characteristic& q2, const Characteristic& q3,
                     const PeriodMatrix& tau, const TruncationPolicy& policy = {});

/// (n1, n2, n3, n4) = 1/2 (m1, m2, m3, m4) H with H the 4x4 Hadamard matrix of the
/// addition formula. Throws InputError when some half-sum is not integral.
std::array<Characteristic, 4> addition_characteristics(const std::array<Characteristic, 4>& m);

/// |LHS - RHS| / scale for
///   theta_m1(u+v) theta_m2(u-v) theta_m3(0) theta_m4(0)
///     = 2^-3 sum_{a in {0,1}^6} e(m1'.a'') theta_{n1+a}(u) theta_{n2+a}(u) theta_{n3+a}(v) theta_{n4+a}(v),
/// scale = max(|LHS|, 2^-3 sum |RHS terms|) so identically vanishing sides still give a
/// meaningful residual.
double addition_formula_residual(const std::array<Characteristic, 4>& m, const Vector3c& u, const Vector3c& v,
                                 const PeriodMatrix& tau, const TruncationPolicy& policy = {});

/// Normalized residual of
///   theta[q](z + h/2 + tau k/2) = e(-1/2 k.(m''+h) - k.z - 1/4 k tau k) theta[q + [k; h]](z)
/// for k, h in {0,1}^3.
double quasi_periodicity_residual(const Characteristic& q, const std::array<int, 3>& k, const std::array<int, 3>& h,
                                  const PeriodMatrix& tau, const Vector3c& z, const TruncationPolicy& policy = {});

/// |theta| below this fraction of the largest even theta constant counts as vanishing.
inline constexpr double kVanishingTolerance = 1e-8;

/// All 64 reduced theta constants and z-gradients at z = 0 for one period matrix.
/// Lookups through any integer lift apply the reduction sign, so values are the same
/// as calling theta_const / grad_theta0 directly.
class ThetaTable {
 public:
  explicit ThetaTable(const PeriodMatrix& tau, const TruncationPolicy& policy = {});

  const PeriodMatrix& period_matrix() const { return tau_; }
  const TruncationPolicy& policy() const { return policy_; }

  Complex constant(const Characteristic& m) const;
  Complex constant(QuadForm q) const { return constants_[q.code()]; }
  ThetaGradient gradient(const Characteristic& m) const;
  const ThetaGradient& gradient(QuadForm q) const { return gradients_[q.code()]; }

  /// det[grad theta[q1]; grad theta[q2]; grad theta[q3]].
  Complex jacobian(QuadForm q1, QuadForm q2, QuadForm q3) const;

  /// max |theta_m(tau)| over the 36 even reduced m.
  double even_scale() const { return even_scale_; }
  bool is_vanishing(const Characteristic& m) const;
  /// Reduced even characteristics whose constant vanishes, ordered by code.
  std::vector<Characteristic> vanishing_even() const;

 private:
  PeriodMatrix tau_;
  TruncationPolicy policy_;
  std::array<Complex, 64> constants_;
  std::array<ThetaGradient, 64> gradients_;
  double even_scale_ = 0.0;
};

}  // namespace tq
