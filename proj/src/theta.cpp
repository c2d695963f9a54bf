#include "theta_quartic/theta.hpp"

#include <cmath>
#include <sstream>

#include "theta_quartic/errors.hpp"
#include "theta_quartic/parallel.hpp"

namespace tq {
namespace {

void check_policy(const TruncationPolicy& policy) {
  if (policy.radius < 1) throw InputError("truncation radius must be >= 1");
  if (!(policy.target_tail > 0.0 && policy.target_tail < 1.0)) throw InputError("truncation tail must lie in (0, 1)");
  if (policy.max_radius < policy.radius) throw InputError("truncation radius cap below the minimum radius");
}

// Lattice sum for a reduced characteristic. The gradient is accumulated only when asked.
ThetaJet reduced_series(const Characteristic& r, const PeriodMatrix& pm, const Vector3c& z,
                        const TruncationPolicy& policy, bool with_gradient) {
  const int radius = truncation_radius(r, pm, z, policy);
  const Matrix3c& tau = pm.tau();
  const std::array<double, 3> shift{0.5 * r.mp()[0], 0.5 * r.mp()[1], 0.5 * r.mp()[2]};
  const std::array<Complex, 3> zb{z(0) + 0.5 * r.mpp()[0], z(1) + 0.5 * r.mpp()[1], z(2) + 0.5 * r.mpp()[2]};
  const Complex pi_i(0.0, std::numbers::pi);

  Complex value = 0.0;
  Complex g0 = 0.0, g1 = 0.0, g2 = 0.0;
  for (int n0 = -radius; n0 <= radius; ++n0) {
    const double k0 = n0 + shift[0];
    for (int n1 = -radius; n1 <= radius; ++n1) {
      const double k1 = n1 + shift[1];
      // Partial quadratic form in (k0, k1), reused across n2.
      const Complex q01 = tau(0, 0) * (k0 * k0) + tau(1, 1) * (k1 * k1) + 2.0 * tau(0, 1) * (k0 * k1) +
                          2.0 * (k0 * zb[0] + k1 * zb[1]);
      const Complex cross2 = 2.0 * (tau(0, 2) * k0 + tau(1, 2) * k1);
      for (int n2 = -radius; n2 <= radius; ++n2) {
        const double k2 = n2 + shift[2];
        const Complex exponent = q01 + k2 * (cross2 + tau(2, 2) * k2) + 2.0 * k2 * zb[2];
        const Complex term = std::exp(pi_i * exponent);
        value += term;
        if (with_gradient) {
          g0 += k0 * term;
          g1 += k1 * term;
          g2 += k2 * term;
        }
      }
    }
  }
  ThetaJet out{value, Vector3c::Zero()};
  if (with_gradient) {
    const Complex two_pi_i = 2.0 * pi_i;
    out.gradient = Vector3c(two_pi_i * g0, two_pi_i * g1, two_pi_i * g2);
  }
  return out;
}

}  // namespace

Complex i_pow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PeriodMatrix::PeriodMatrix(const Matrix3c& raw) {
  if (!raw.allFinite())
    throw InvalidPeriodMatrix(InvalidPeriodMatrix::Reason::kNotFinite, "period matrix has non-finite entries");
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    std::ostringstream os;
    os << "period matrix is not symmetric (max |tau - tau^T| = " << asym << ")";
    throw InvalidPeriodMatrix(InvalidPeriodMatrix::Reason::kAsymmetric, os.str());
  }
  tau_ = 0.5 * (raw + raw.transpose());
  imag_ = tau_.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(imag_, Eigen::EigenvaluesOnly);
  min_eigenvalue_ = eig.eigenvalues().minCoeff();
  if (!(min_eigenvalue_ > 0.0)) {
    std::ostringstream os;
    os << "imaginary part of the period matrix is not positive definite (smallest eigenvalue " << min_eigenvalue_
       << ")";
    throw InvalidPeriodMatrix(InvalidPeriodMatrix::Reason::kNotPositiveDefinite, os.str());
  }
  imag_inverse_ = imag_.inverse();
}

int truncation_radius(const Characteristic& reduced, const PeriodMatrix& tau, const Vector3c& z,
                      const TruncationPolicy& policy) {
  check_policy(policy);
  // Each term has modulus exp(-pi (k - c) Y (k - c)) times a constant, k = n + m'/2,
  // c = -Y^{-1} Im z; in n-coordinates the centre sits at c - m'/2.
  const Eigen::Vector3d centre = -tau.imag_inverse() * z.imag();
  double offset = 0.0;
  for (int i = 0; i < 3; ++i) offset = std::max(offset, std::abs(centre(i) - 0.5 * reduced.mp()[i]));
  const double spread = std::sqrt(-std::log(policy.target_tail) / (std::numbers::pi * tau.min_imag_eigenvalue()));
  const double wanted = std::ceil(offset + spread);
  if (!(wanted <= policy.max_radius)) {
    std::ostringstream os;
    os << "theta series needs radius " << wanted << " > cap " << policy.max_radius
       << " (smallest eigenvalue of Im tau = " << tau.min_imag_eigenvalue() << ")";
    throw TruncationError(os.str());
  }
  return std::max(policy.radius, static_cast<int>(wanted));
}

ThetaJet theta_jet(const Characteristic& m, const PeriodMatrix& tau, const Vector3c& z,
                   const TruncationPolicy& policy) {
  const Reduction red = reduce_characteristic(m);
  ThetaJet jet = reduced_series(red.reduced, tau, z, policy, true);
  if (red.sign < 0) {
    jet.value = -jet.value;
    jet.gradient = -jet.gradient;
  }
  return jet;
}

Complex theta(const Characteristic& m, const PeriodMatrix& tau, const Vector3c& z, const TruncationPolicy& policy) {
  const Reduction red = reduce_characteristic(m);
  const Complex v = reduced_series(red.reduced, tau, z, policy, false).value;
  return red.sign < 0 ? -v : v;
}

Complex theta_const(const Characteristic& m, const PeriodMatrix& tau, const TruncationPolicy& policy) {
  return theta(m, tau, Vector3c::Zero(), policy);
}

ThetaGradient grad_theta0(const Characteristic& m, const PeriodMatrix& tau, const TruncationPolicy& policy) {
  return theta_jet(m, tau, Vector3c::Zero(), policy).gradient;
}

Complex jacobian_det(const Characteristic& q1, const Characteristic& q2, const Characteristic& q3,
                     const PeriodMatrix& tau, const TruncationPolicy& policy) {
  Matrix3c rows;
  rows.row(0) = grad_theta0(q1, tau, policy).transpose();
  rows.row(1) = grad_theta0(q2, tau, policy).transpose();
  rows.row(2) = grad_theta0(q3, tau, policy).transpose();
  return rows.determinant();
}

std::array<Characteristic, 4> addition_characteristics(const std::array<Characteristic, 4>& m) {
  static constexpr int kHadamard[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  std::array<Characteristic, 4> n;
  for (int j = 0; j < 4; ++j) {
    Characteristic twice;
    for (int i = 0; i < 4; ++i) twice = twice + kHadamard[i][j] * m[i];
    Characteristic::Half p{}, pp{};
    for (int c = 0; c < 3; ++c) {
      if (twice.mp()[c] % 2 != 0 || twice.mpp()[c] % 2 != 0)
        throw InputError("addition formula: half-sum characteristic n" + std::to_string(j + 1) + " is not integral");
      p[c] = twice.mp()[c] / 2;
      pp[c] = twice.mpp()[c] / 2;
    }
    n[j] = Characteristic(p, pp);
  }
  return n;
}

double addition_formula_residual(const std::array<Characteristic, 4>& m, const Vector3c& u, const Vector3c& v,
                                 const PeriodMatrix& tau, const TruncationPolicy& policy) {
  const std::array<Characteristic, 4> n = addition_characteristics(m);
  const Vector3c zero = Vector3c::Zero();
  const Complex lhs = theta(m[0], tau, u + v, policy) * theta(m[1], tau, u - v, policy) *
                      theta(m[2], tau, zero, policy) * theta(m[3], tau, zero, policy);

  Complex rhs = 0.0;
  double magnitude = 0.0;
  for (unsigned code = 0; code < 64; ++code) {
    const Characteristic a(QuadForm::from_code(code));
    const int phase = e_int(dot(m[0].mp(), a.mpp()));
    const Complex term = static_cast<double>(phase) * theta(n[0] + a, tau, u, policy) *
                         theta(n[1] + a, tau, u, policy) * theta(n[2] + a, tau, v, policy) *
                         theta(n[3] + a, tau, v, policy);
    rhs += term;
    magnitude += std::abs(term);
  }
  rhs /= 8.0;
  magnitude /= 8.0;
  const double scale = std::max(std::abs(lhs), magnitude);
  if (scale == 0.0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

double quasi_periodicity_residual(const Characteristic& q, const std::array<int, 3>& k, const std::array<int, 3>& h,
                                  const PeriodMatrix& tau, const Vector3c& z, const TruncationPolicy& policy) {
  for (int i = 0; i < 3; ++i)
    if ((k[i] != 0 && k[i] != 1) || (h[i] != 0 && h[i] != 1))
      throw InputError("quasi-periodicity shift must have entries in {0,1}");
  const Eigen::Vector3d kv(k[0], k[1], k[2]);
  const Eigen::Vector3d hv(h[0], h[1], h[2]);
  const Vector3c kc = kv.cast<Complex>();
  const Vector3c shifted = z + 0.5 * hv.cast<Complex>() + 0.5 * (tau.tau() * kc);

  Complex exponent = 0.0;
  for (int i = 0; i < 3; ++i) exponent -= 0.5 * k[i] * static_cast<double>(q.mpp()[i] + h[i]);
  exponent -= kc.dot(z);  // Eigen's dot conjugates the first argument; kc is real
  exponent -= 0.25 * (kc.transpose() * tau.tau() * kc).value();

  const Characteristic moved = q + Characteristic(k, h);
  const Complex lhs = theta(q, tau, shifted, policy);
  const Complex rhs = e(exponent) * theta(moved, tau, z, policy);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale == 0.0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

ThetaTable::ThetaTable(const PeriodMatrix& tau, const TruncationPolicy& policy) : tau_(tau), policy_(policy) {
  check_policy(policy);
  parallel_for(64, [&](std::size_t code) {
    const Characteristic m(QuadForm::from_code(static_cast<unsigned>(code)));
    const ThetaJet jet = reduced_series(m, tau_, Vector3c::Zero(), policy_, true);
    constants_[code] = jet.value;
    gradients_[code] = jet.gradient;
  });
  for (unsigned code = 0; code < 64; ++code)
    if (is_even(QuadForm::from_code(code))) even_scale_ = std::max(even_scale_, std::abs(constants_[code]));
}

Complex ThetaTable::constant(const Characteristic& m) const {
  const Reduction red = reduce_characteristic(m);
  const Complex v = constants_[red.reduced.to_form().code()];
  return red.sign < 0 ? -v : v;
}

ThetaGradient ThetaTable::gradient(const Characteristic& m) const {
  const Reduction red = reduce_characteristic(m);
  const ThetaGradient& g = gradients_[red.reduced.to_form().code()];
  return red.sign < 0 ? ThetaGradient(-g) : g;
}

Complex ThetaTable::jacobian(QuadForm q1, QuadForm q2, QuadForm q3) const {
  Matrix3c rows;
  rows.row(0) = gradient(q1).transpose();
  rows.row(1) = gradient(q2).transpose();
  rows.row(2) = gradient(q3).transpose();
  return rows.determinant();
}

bool ThetaTable::is_vanishing(const Characteristic& m) const {
  return std::abs(constant(m)) < kVanishingTolerance * even_scale_;
}

std::vector<Characteristic> ThetaTable::vanishing_even() const {
  std::vector<Characteristic> out;
  for (QuadForm q : even_forms()) {
    const Characteristic m(q);
    if (is_vanishing(m)) out.push_back(m);
  }
  return out;
}

}  // namespace tq
