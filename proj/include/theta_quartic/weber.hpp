#pragma once

// Bitangents of a smooth plane quartic from its period matrix.
//
// Given an ordered Aronhold system q_1..q_7, choose coordinates X in which
//
//   beta_1: X1 = 0,  beta_2: X2 = 0,  beta_3: X3 = 0,  beta_4: X1 + X2 + X3 = 0,
//   beta_{4+i}: a_i1 X1 + a_i2 X2 + a_i3 X3 = 0   (i = 1, 2, 3).
//
// Weber's formula gives a_ij as a ratio of four theta constants times an explicit
// fourth root of unity. The a_ij determine the Riemann model of the quartic, and
// the frame matrix A_phi carries the theta-gradient bitangents into the X frame.
//
// Row/column indices in this API are 0-based: a(i, j) is a_{i+1, j+1}.

#include <array>
#include <string>
#include <vector>

#include "theta_quartic/char_algebra.hpp"
#include "theta_quartic/curve.hpp"
#include "theta_quartic/theta.hpp"

namespace tq {

/// epsilon_1..epsilon_3, each +1 or -1.
using EpsilonSigns = std::array<int, 3>;

/// Throws SpecialLocusError listing the vanishing even characteristics, if any.
void require_generic(const ThetaTable& table);

struct JacobiRatio {
  Complex lhs;  ///< D[q4, q2, q3] / D[q1, q2, q3]
  Complex rhs;  ///< closed form in theta constants
  double relative_error() const { return std::abs(lhs - rhs) / std::abs(lhs); }
};

/// Both sides of
///   D[q4,q2,q3] / D[q1,q2,q3]
///     = -e((q5+q6+q7)'.(q1+q4)'') theta(q5+q6+q1) theta(q5+q7+q1) theta(q6+q7+q1)
///                                / theta(q5+q6+q4) theta(q5+q7+q4) theta(q6+q7+q4)
/// with non-reduced characteristic sums. Throws SpecialLocusError if a denominator
/// vanishes.
JacobiRatio jacobi_ratio(const std::array<QuadForm, 4>& quad, const std::array<QuadForm, 3>& completion,
                         const ThetaTable& table);

/// Rows (a_i1 : a_i2 : a_i3) from determinant ratios
///   a_i1 = D[q_{4+i},q2,q3]/D[q4,q2,q3], a_i2 = D[q1,q_{4+i},q3]/D[q1,q4,q3], a_i3 = D[q1,q2,q_{4+i}]/D[q1,q2,q4],
/// each row defined up to its own scale.
Matrix3c aronhold_coeffs_dets(const AronholdSystem& system, const ThetaTable& table);

/// Exact content of one Weber coefficient before any series is summed:
///   a_ij = eps_i * i^quarter_turns * theta[num0] theta[num1] / (theta[den0] theta[den1])
/// with reduced characteristics. quarter_turns already includes the reduction sign rho.
struct WeberTerm {
  int quarter_turns = 0;                         ///< in {0, 1, 2, 3}
  int rho = 1;                                   ///< product of the four reduction signs
  std::array<Characteristic, 2> numerator;       ///< reduced (q4+q_r+q_j), (q4+q_s+q_j)
  std::array<Characteristic, 2> denominator;     ///< reduced (q_{4+i}+q_r+q_j), (q_{4+i}+q_s+q_j)
  std::array<Characteristic, 2> numerator_lift;  ///< the same sums over Z
  std::array<Characteristic, 2> denominator_lift;

  /// eps * i^quarter_turns
  Complex phase(int eps) const;
};

/// i, j in {0, 1, 2}. The pair (r, s) completing 4+i in {5, 6, 7} is taken with r < s.
WeberTerm weber_symbolic(const AronholdSystem& system, int i, int j);

/// eta_i = eps_i exp(pi i/2 (q4+q_{4+i})'.(q4+q5+q6+q7)'') with non-reduced sums.
Complex weber_eta(const AronholdSystem& system, int i, int eps);

/// The 3x3 matrix a_ij from Weber's formula.
Matrix3c weber_matrix(const AronholdSystem& system, const ThetaTable& table, const EpsilonSigns& eps = {1, 1, 1});

/// Solves sum_i lambda_i / a_ir = -1 for r = 1, 2, 3. Throws SingularSystemError.
Vector3c solve_lambda(const Matrix3c& a);

/// Solves sum_i lambda_i a_ij k_i = -1 for j = 1, 2, 3. Throws SingularSystemError.
Vector3c solve_k(const Matrix3c& a, const Vector3c& lambda);

/// The linear forms xi_23, xi_13, xi_12 solving
///   xi_23 + xi_13 + xi_12 + X1 + X2 + X3 = 0,
///   xi_23/a_i1 + xi_13/a_i2 + xi_12/a_i3 + k_i (a_i1 X1 + a_i2 X2 + a_i3 X3) = 0,
/// by least squares over the 12 scalar equations, gated on a consistency residual
/// of 1e-8. Throws SpecialLocusError when the system is degenerate or inconsistent.
std::array<ProjLine, 3> xi_forms(const Matrix3c& a, const Vector3c& k);

/// Relative consistency residual of xi against the system above.
double xi_residual(const Matrix3c& a, const Vector3c& k, const std::array<ProjLine, 3>& xi);

/// 4 X1 xi_23 X2 xi_13 - (X1 xi_23 + X2 xi_13 - X3 xi_12)^2, scaled so the
/// largest-modulus coefficient is exactly 1. Throws DegenerateInputError on zero.
QuarticCurve riemann_quartic(const std::array<ProjLine, 3>& xi);

/// Columns D[q4,q2,q3] grad theta[q1], D[q1,q4,q3] grad theta[q2], D[q1,q2,q4] grad theta[q3].
/// A line with X-frame covector c has theta-frame covector A_phi c.
/// Throws SpecialLocusError when the condition number exceeds 1e10.
Matrix3c frame_matrix(const AronholdSystem& system, const ThetaTable& table);

/// Aronhold-frame data for one period matrix.
struct AronholdFrame {
  AronholdSystem system;
  EpsilonSigns eps;
  Matrix3c a;
  Vector3c eta;
  Vector3c k;
  Vector3c lambda;
  std::array<ProjLine, 3> xi;  ///< xi_23, xi_13, xi_12
  Matrix3c phi;                ///< A_phi
};

/// Weber matrix plus lambda, k, xi and A_phi. Throws SpecialLocusError off the generic
/// locus and SingularSystemError on singular linear systems.
AronholdFrame weber_coefficients(const AronholdSystem& system, const ThetaTable& table,
                                 const EpsilonSigns& eps = {1, 1, 1});

struct LabelledLine {
  QuadForm form;
  std::string label;  ///< "q1".."q7", "q12".."q67"
  ProjLine line;      ///< X-frame covector, largest entry scaled to 1
};

/// All 28 bitangents in the X frame: q_1..q_7 then q_ij (i < j), each the theta
/// gradient of its odd form carried through A_phi^{-1}.
std::vector<LabelledLine> all_bitangents(const AronholdSystem& system, const ThetaTable& table);
std::vector<LabelledLine> all_bitangents(const AronholdSystem& system, const ThetaTable& table,
                                         const Matrix3c& phi);

}  // namespace tq
