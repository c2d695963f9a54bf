#include "theta_quartic/weber.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "theta_quartic/errors.hpp"

namespace tq {
namespace {

constexpr double kSingularCondition = 1e12;
constexpr double kFrameCondition = 1e10;
constexpr double kXiResidualGate = 1e-8;

double condition_number(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

// Row and column scalings r, c with diag(r) m diag(c) having unit max-abs rows and
// columns (a few alternating sweeps). Singularity is judged on the equilibrated
// matrix so that entries of very different size do not count as degeneracy.
struct Equilibrated {
  Eigen::MatrixXcd m;
  Eigen::VectorXd row, col;
};

Equilibrated equilibrate(const Eigen::MatrixXcd& m) {
  Equilibrated e{m, Eigen::VectorXd::Ones(m.rows()), Eigen::VectorXd::Ones(m.cols())};
  for (int sweep = 0; sweep < 4; ++sweep) {
    for (Eigen::Index i = 0; i < e.m.rows(); ++i) {
      const double s = e.m.row(i).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        e.m.row(i) /= s;
        e.row(i) /= s;
      }
    }
    for (Eigen::Index j = 0; j < e.m.cols(); ++j) {
      const double s = e.m.col(j).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        e.m.col(j) /= s;
        e.col(j) /= s;
      }
    }
  }
  return e;
}

double balanced_condition(const Eigen::MatrixXcd& m) { return condition_number(equilibrate(m).m); }

Vector3c solve_checked(const Matrix3c& m, const Vector3c& rhs, const char* what) {
  if (!m.allFinite() || !rhs.allFinite()) throw SingularSystemError(std::string(what) + ": system has non-finite entries");
  const Equilibrated e = equilibrate(m);
  const double cond = condition_number(e.m);
  if (!(cond < kSingularCondition)) {
    std::ostringstream os;
    os << what << ": matrix is numerically singular (condition number " << cond << ")";
    throw SingularSystemError(os.str());
  }
  const Eigen::VectorXcd y = e.m.fullPivLu().solve((e.row.cast<Complex>().asDiagonal() * rhs).eval());
  return e.col.cast<Complex>().asDiagonal() * y;
}

// Dense ternary form of a given degree; X1^a X2^b X3^c sits at (d-a)(d-a+1)/2 + (d-a-b),
// which for d = 4 is QuarticCurve's graded-lex order.
struct TernaryForm {
  int degree = 0;
  std::vector<Complex> coeffs;

  static int index(int d, int a, int b) { return (d - a) * (d - a + 1) / 2 + (d - a - b); }

  static TernaryForm linear(const Vector3c& c) { return {1, {c(0), c(1), c(2)}}; }

  friend TernaryForm operator*(const TernaryForm& f, const TernaryForm& g) {
    const int d = f.degree + g.degree;
    TernaryForm out{d, std::vector<Complex>((d + 1) * (d + 2) / 2, 0.0)};
    for (int a1 = 0; a1 <= f.degree; ++a1)
      for (int b1 = 0; a1 + b1 <= f.degree; ++b1)
        for (int a2 = 0; a2 <= g.degree; ++a2)
          for (int b2 = 0; a2 + b2 <= g.degree; ++b2)
            out.coeffs[index(d, a1 + a2, b1 + b2)] +=
                f.coeffs[index(f.degree, a1, b1)] * g.coeffs[index(g.degree, a2, b2)];
    return out;
  }

  friend TernaryForm operator+(TernaryForm f, const TernaryForm& g) {
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] += g.coeffs[i];
    return f;
  }

  friend TernaryForm operator*(Complex s, TernaryForm f) {
    for (auto& c : f.coeffs) c *= s;
    return f;
  }
};

// Determinant with a Hadamard-bound scale, for vanishing tests.
struct ScaledDet {
  Complex value;
  double bound;
};

ScaledDet scaled_jacobian(const ThetaTable& table, QuadForm q1, QuadForm q2, QuadForm q3) {
  return {table.jacobian(q1, q2, q3), table.gradient(q1).norm() * table.gradient(q2).norm() * table.gradient(q3).norm()};
}

Complex checked_ratio(const ScaledDet& num, const ScaledDet& den, const char* what) {
  if (!(std::abs(den.value) > kVanishingTolerance * den.bound))
    throw SpecialLocusError(std::string(what) + ": vanishing Jacobian determinant in a denominator");
  return num.value / den.value;
}

void check_eps(const EpsilonSigns& eps) {
  for (int s : eps)
    if (s != 1 && s != -1) throw InputError("epsilon signs must be +1 or -1");
}

}  // namespace

void require_generic(const ThetaTable& table) {
  const std::vector<Characteristic> vanishing = table.vanishing_even();
  if (vanishing.empty()) return;
  std::vector<std::string> names;
  std::ostringstream os;
  os << "period matrix lies on the special locus: " << vanishing.size() << " even theta constant(s) vanish (";
  for (std::size_t i = 0; i < vanishing.size(); ++i) {
    names.push_back(vanishing[i].to_string());
    os << (i ? " " : "") << names.back();
  }
  os << ")";
  throw SpecialLocusError(os.str(), std::move(names));
}

JacobiRatio jacobi_ratio(const std::array<QuadForm, 4>& quad, const std::array<QuadForm, 3>& completion,
                         const ThetaTable& table) {
  const auto [q1, q2, q3, q4] = quad;
  const auto [q5, q6, q7] = completion;

  const Characteristic den[3] = {lift_sum({q5, q6, q4}), lift_sum({q5, q7, q4}), lift_sum({q6, q7, q4})};
  for (const Characteristic& d : den)
    if (table.is_vanishing(d))
      throw SpecialLocusError("jacobi_ratio: vanishing theta constant " + reduce_characteristic(d).reduced.to_string(),
                              {reduce_characteristic(d).reduced.to_string()});

  const ScaledDet d_num = scaled_jacobian(table, q4, q2, q3);
  const ScaledDet d_den = scaled_jacobian(table, q1, q2, q3);
  if (d_den.value == 0.0) throw SpecialLocusError("jacobi_ratio: D[q1,q2,q3] = 0");

  const int sign = e_int(dot(lift_sum({q5, q6, q7}).mp(), lift_sum({q1, q4}).mpp()));
  const Complex num = table.constant(lift_sum({q5, q6, q1})) * table.constant(lift_sum({q5, q7, q1})) *
                      table.constant(lift_sum({q6, q7, q1}));
  const Complex dd = table.constant(den[0]) * table.constant(den[1]) * table.constant(den[2]);
  return {d_num.value / d_den.value, -static_cast<double>(sign) * num / dd};
}

Matrix3c aronhold_coeffs_dets(const AronholdSystem& system, const ThetaTable& table) {
  require_generic(table);
  const QuadForm q1 = system[0], q2 = system[1], q3 = system[2], q4 = system[3];
  const ScaledDet den1 = scaled_jacobian(table, q4, q2, q3);
  const ScaledDet den2 = scaled_jacobian(table, q1, q4, q3);
  const ScaledDet den3 = scaled_jacobian(table, q1, q2, q4);
  Matrix3c a;
  for (int i = 0; i < 3; ++i) {
    const QuadForm qi = system[4 + i];
    a(i, 0) = checked_ratio(scaled_jacobian(table, qi, q2, q3), den1, "aronhold_coeffs_dets");
    a(i, 1) = checked_ratio(scaled_jacobian(table, q1, qi, q3), den2, "aronhold_coeffs_dets");
    a(i, 2) = checked_ratio(scaled_jacobian(table, q1, q2, qi), den3, "aronhold_coeffs_dets");
  }
  return a;
}

Complex WeberTerm::phase(int eps) const { return static_cast<double>(eps) * i_pow(quarter_turns); }

WeberTerm weber_symbolic(const AronholdSystem& system, int i, int j) {
  if (i < 0 || i > 2 || j < 0 || j > 2) throw InputError("weber_symbolic: indices must lie in {0,1,2}");
  const QuadForm q4 = system[3];
  const QuadForm qi = system[4 + i];
  const QuadForm qj = system[j];
  // {4+i, r, s} = {5, 6, 7}; 0-based positions 4..6.
  int rs[2];
  for (int p = 4, n = 0; p <= 6; ++p)
    if (p != 4 + i) rs[n++] = p;
  const QuadForm qr = system[rs[0]];
  const QuadForm qs = system[rs[1]];

  WeberTerm t;
  t.numerator_lift = {lift_sum({q4, qr, qj}), lift_sum({q4, qs, qj})};
  t.denominator_lift = {lift_sum({qi, qr, qj}), lift_sum({qi, qs, qj})};
  t.rho = 1;
  for (int p = 0; p < 2; ++p) {
    const Reduction n = reduce_characteristic(t.numerator_lift[p]);
    const Reduction d = reduce_characteristic(t.denominator_lift[p]);
    t.numerator[p] = n.reduced;
    t.denominator[p] = d.reduced;
    t.rho *= n.sign * d.sign;
  }

  // eta_i contributes i^{(q4+q_{4+i})'.(q4+q5+q6+q7)''}, e(q_j'.(q4+q_{4+i})'') contributes
  // i^{2 q_j'.(q4+q_{4+i})''}, and rho = -1 contributes i^2.
  const Characteristic d4i = lift_sum({q4, qi});
  const Characteristic s4567 = lift_sum({q4, system[4], system[5], system[6]});
  const int eta_turns = dot(d4i.mp(), s4567.mpp());
  const int e_turns = 2 * dot(Characteristic(qj).mp(), d4i.mpp());
  const int rho_turns = t.rho < 0 ? 2 : 0;
  t.quarter_turns = (((eta_turns + e_turns + rho_turns) % 4) + 4) % 4;
  return t;
}

Complex weber_eta(const AronholdSystem& system, int i, int eps) {
  if (i < 0 || i > 2) throw InputError("weber_eta: index must lie in {0,1,2}");
  const Characteristic d4i = lift_sum({system[3], system[4 + i]});
  const Characteristic s4567 = lift_sum({system[3], system[4], system[5], system[6]});
  return static_cast<double>(eps) * i_pow(dot(d4i.mp(), s4567.mpp()));
}

Matrix3c weber_matrix(const AronholdSystem& system, const ThetaTable& table, const EpsilonSigns& eps) {
  check_eps(eps);
  require_generic(table);
  Matrix3c a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const WeberTerm t = weber_symbolic(system, i, j);
      a(i, j) = t.phase(eps[i]) * table.constant(t.numerator[0]) * table.constant(t.numerator[1]) /
                (table.constant(t.denominator[0]) * table.constant(t.denominator[1]));
    }
  }
  return a;
}

Vector3c solve_lambda(const Matrix3c& a) {
  Matrix3c reciprocal;
  for (int r = 0; r < 3; ++r)
    for (int i = 0; i < 3; ++i) {
      if (a(i, r) == 0.0) throw SingularSystemError("solve_lambda: zero coefficient a_ij");
      reciprocal(r, i) = 1.0 / a(i, r);
    }
  return solve_checked(reciprocal, Vector3c::Constant(-1.0), "solve_lambda");
}

Vector3c solve_k(const Matrix3c& a, const Vector3c& lambda) {
  Matrix3c m;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) m(j, i) = lambda(i) * a(i, j);
  return solve_checked(m, Vector3c::Constant(-1.0), "solve_k");
}

namespace {

// Rows: equation index (sum, then i = 1..3); columns: xi_23, xi_13, xi_12.
void xi_system(const Matrix3c& a, const Vector3c& k, Eigen::Matrix<Complex, 4, 3>& w,
               Eigen::Matrix<Complex, 4, 3>& rhs) {
  w.row(0).setOnes();
  rhs.row(0).setConstant(-1.0);
  for (int i = 0; i < 3; ++i) {
    for (int r = 0; r < 3; ++r) {
      if (a(i, r) == 0.0) throw SpecialLocusError("xi_forms: zero coefficient a_ij");
      w(i + 1, r) = 1.0 / a(i, r);
    }
    rhs.row(i + 1) = -k(i) * a.row(i);
  }
}

}  // namespace

double xi_residual(const Matrix3c& a, const Vector3c& k, const std::array<ProjLine, 3>& xi) {
  Eigen::Matrix<Complex, 4, 3> w, rhs;
  xi_system(a, k, w, rhs);
  Matrix3c x;
  for (int r = 0; r < 3; ++r) x.row(r) = xi[r].covector().transpose();
  return (w * x - rhs).norm() / rhs.norm();
}

std::array<ProjLine, 3> xi_forms(const Matrix3c& a, const Vector3c& k) {
  Eigen::Matrix<Complex, 4, 3> w, rhs;
  xi_system(a, k, w, rhs);
  if (!w.allFinite() || !rhs.allFinite()) throw SpecialLocusError("xi_forms: non-finite system");
  if (!(balanced_condition(w) < kSingularCondition)) throw SpecialLocusError("xi_forms: degenerate coefficient matrix");
  const Matrix3c x = w.colPivHouseholderQr().solve(rhs);
  const double residual = (w * x - rhs).norm() / rhs.norm();
  if (!(residual < kXiResidualGate)) {
    std::ostringstream os;
    os << "xi_forms: inconsistent system (relative residual " << residual << ")";
    throw SpecialLocusError(os.str());
  }
  return {ProjLine(x.row(0).transpose()), ProjLine(x.row(1).transpose()), ProjLine(x.row(2).transpose())};
}

QuarticCurve riemann_quartic(const std::array<ProjLine, 3>& xi) {
  const TernaryForm x1 = TernaryForm::linear(Vector3c(1, 0, 0));
  const TernaryForm x2 = TernaryForm::linear(Vector3c(0, 1, 0));
  const TernaryForm x3 = TernaryForm::linear(Vector3c(0, 0, 1));
  const TernaryForm p1 = x1 * TernaryForm::linear(xi[0].covector());
  const TernaryForm p2 = x2 * TernaryForm::linear(xi[1].covector());
  const TernaryForm p3 = x3 * TernaryForm::linear(xi[2].covector());
  // sqrt(P1) + sqrt(P2) + sqrt(P3) = 0 rationalizes to 4 P1 P2 = (P1 + P2 - P3)^2.
  const TernaryForm s = p1 + p2 + Complex(-1.0) * p3;
  const TernaryForm f = Complex(4.0) * (p1 * p2) + Complex(-1.0) * (s * s);

  std::size_t at = 0;
  for (std::size_t i = 1; i < f.coeffs.size(); ++i)
    if (std::abs(f.coeffs[i]) > std::abs(f.coeffs[at])) at = i;
  if (std::abs(f.coeffs[at]) == 0.0) throw DegenerateInputError("riemann_quartic: quartic vanishes identically");
  const Complex pivot = f.coeffs[at];
  std::array<Complex, 15> coeffs;
  for (std::size_t i = 0; i < 15; ++i) coeffs[i] = f.coeffs[i] / pivot;
  coeffs[at] = 1.0;
  return QuarticCurve(coeffs);
}

Matrix3c frame_matrix(const AronholdSystem& system, const ThetaTable& table) {
  require_generic(table);
  const QuadForm q1 = system[0], q2 = system[1], q3 = system[2], q4 = system[3];
  Matrix3c phi;
  phi.col(0) = table.jacobian(q4, q2, q3) * table.gradient(q1);
  phi.col(1) = table.jacobian(q1, q4, q3) * table.gradient(q2);
  phi.col(2) = table.jacobian(q1, q2, q4) * table.gradient(q3);
  const double cond = balanced_condition(phi);
  if (!(cond < kFrameCondition)) {
    std::ostringstream os;
    os << "frame_matrix: A_phi is near-singular (condition number " << cond << ")";
    throw SpecialLocusError(os.str());
  }
  return phi;
}

AronholdFrame weber_coefficients(const AronholdSystem& system, const ThetaTable& table, const EpsilonSigns& eps) {
  const Matrix3c a = weber_matrix(system, table, eps);
  Vector3c eta;
  for (int i = 0; i < 3; ++i) eta(i) = weber_eta(system, i, eps[i]);
  const Vector3c lambda = solve_lambda(a);
  const Vector3c k = solve_k(a, lambda);
  const std::array<ProjLine, 3> xi = xi_forms(a, k);
  const Matrix3c phi = frame_matrix(system, table);
  return AronholdFrame{system, eps, a, eta, k, lambda, xi, phi};
}

std::vector<LabelledLine> all_bitangents(const AronholdSystem& system, const ThetaTable& table) {
  return all_bitangents(system, table, frame_matrix(system, table));
}

std::vector<LabelledLine> all_bitangents(const AronholdSystem& system, const ThetaTable& table,
                                         const Matrix3c& phi) {
  const Eigen::PartialPivLU<Matrix3c> lu(phi);
  const DerivedForms derived = derived_forms(system);
  std::vector<LabelledLine> out;
  out.reserve(28);
  auto push = [&](QuadForm q, std::string label) {
    const Vector3c weber_frame = lu.solve(table.gradient(q));
    out.push_back({q, std::move(label), ProjLine(weber_frame).normalized()});
  };
  for (int i = 0; i < 7; ++i) push(system[i], "q" + std::to_string(i + 1));
  for (int i = 0, p = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j, ++p) push(derived.pairs[p], "q" + std::to_string(i + 1) + std::to_string(j + 1));
  return out;
}

}  // namespace tq
