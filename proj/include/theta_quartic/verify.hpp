#pragma once

// Input validation, special-locus detection and the bitangency check.

#include <array>
#include <cstdint>
#include <vector>

#include "theta_quartic/curve.hpp"
#include "theta_quartic/theta.hpp"

namespace tq {

/// Symmetry, finiteness and Im(tau) > 0. Throws InvalidPeriodMatrix.
PeriodMatrix validate_tau(const Matrix3c& raw);

/// Reduced even characteristics with vanishing theta constant at tau.
std::vector<Characteristic> special_locus_scan(const PeriodMatrix& tau, const TruncationPolicy& policy = {});
std::vector<Characteristic> special_locus_scan(const ThetaTable& table);

/// F restricted to the line, F(s p + t q) = sum_k coeffs[k] s^(4-k) t^k, where (p, q)
/// is an orthonormal basis of the line's points.
struct BinaryQuartic {
  std::array<Complex, 5> coeffs;
  Vector3c p;
  Vector3c q;
};

/// Throws DegenerateInputError when the curve contains the line.
BinaryQuartic restrict_to_line(const QuarticCurve& curve, const ProjLine& line);
/// Restricts the linear factors first, then multiplies.
BinaryQuartic restrict_to_line(const RiemannModel& model, const ProjLine& line);

inline constexpr double kDefaultBitangencyTolerance = 1e-6;

struct BitangencyReport {
  ProjLine line;
  bool is_bitangent = false;
  /// The two contact points are close enough that the line may be a flex tangent.
  bool near_flex = false;
  std::vector<Vector3c> contact_points;  ///< unit vectors on the curve, one per root pair
  /// ||b - c g^2||_B / ||b||_B with b the restricted quartic, g the quadratic with the
  /// paired root centres and || ||_B the Bombieri norm.
  double residual = 0.0;
  double cluster_radius = 0.0;  ///< largest chordal distance inside a root pair
  double separation = 0.0;      ///< chordal distance between the two pair centres
};

/// A line is bitangent when its restriction is (numerically) a perfect square.
BitangencyReport bitangency_check(const QuarticCurve& curve, const ProjLine& line,
                                  double tol = kDefaultBitangencyTolerance);
BitangencyReport bitangency_check(const RiemannModel& model, const ProjLine& line,
                                  double tol = kDefaultBitangencyTolerance);

struct RandomTau {
  PeriodMatrix tau;
  int attempts = 1;
};

/// tau = A + i (M M^T + I/2), A symmetric with entries uniform on [-1/2, 1/2], M
/// standard normal, drawn from mt19937_64(seed). Draws on the special locus, or whose
/// Weber frame for the example system is numerically singular, are rejected; throws
/// SpecialLocusError after max_tries rejections.
RandomTau random_admissible_tau(std::uint64_t seed, const TruncationPolicy& policy = {}, int max_tries = 100);

}  // namespace tq
