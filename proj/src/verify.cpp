#include "theta_quartic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "theta_quartic/errors.hpp"
#include "theta_quartic/weber.hpp"

namespace tq {

PeriodMatrix validate_tau(const Matrix3c& raw) { return PeriodMatrix(raw); }

std::vector<Characteristic> special_locus_scan(const ThetaTable& table) { return table.vanishing_even(); }

std::vector<Characteristic> special_locus_scan(const PeriodMatrix& tau, const TruncationPolicy& policy) {
  return special_locus_scan(ThetaTable(tau, policy));
}

namespace {

using Binary = std::vector<Complex>;  // coefficient of s^(d-k) t^k at k

Binary multiply(const Binary& f, const Binary& g) {
  Binary out(f.size() + g.size() - 1, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  return out;
}

constexpr double kBinomial4[5] = {1, 4, 6, 4, 1};

Complex bombieri_inner(const std::array<Complex, 5>& f, const std::array<Complex, 5>& g) {
  Complex sum = 0.0;
  for (int k = 0; k < 5; ++k) sum += f[k] * std::conj(g[k]) / kBinomial4[k];
  return sum;
}

double bombieri_norm(const std::array<Complex, 5>& f) { return std::sqrt(std::abs(bombieri_inner(f, f))); }

using Point1 = Eigen::Vector2cd;  // (s, t), unit norm

double chordal(const Point1& a, const Point1& b) { return std::abs(a(0) * b(1) - a(1) * b(0)); }

Point1 unit(Complex s, Complex t) {
  Point1 p(s, t);
  return p / p.norm();
}

// Roots of sum_k b_k s^(4-k) t^k as points of P^1, with multiplicity.
std::vector<Point1> binary_roots(const std::array<Complex, 5>& b) {
  double scale = 0.0;
  for (const Complex& c : b) scale = std::max(scale, std::abs(c));
  // Chart u = t/s has leading coefficient b4; chart v = s/t has leading coefficient b0.
  const bool t_chart = std::abs(b[4]) >= std::abs(b[0]);
  std::vector<Complex> poly(5);  // poly[k] multiplies x^k in the chosen chart
  for (int k = 0; k < 5; ++k) poly[k] = t_chart ? b[k] : b[4 - k];

  std::vector<Point1> roots;
  const Point1 at_infinity = t_chart ? Point1(0.0, 1.0) : Point1(1.0, 0.0);
  int degree = 4;
  while (degree > 0 && std::abs(poly[degree]) <= 64 * std::numeric_limits<double>::epsilon() * scale) {
    roots.push_back(at_infinity);
    --degree;
  }
  if (degree > 0) {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -poly[i] / poly[degree];
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw DegenerateInputError("bitangency_check: root finding failed");
    for (int i = 0; i < degree; ++i) {
      const Complex x = solver.eigenvalues()(i);
      roots.push_back(t_chart ? unit(1.0, x) : unit(x, 1.0));
    }
  }
  return roots;
}

// Midpoint of two nearby points of P^1 after aligning their phases.
Point1 centre(const Point1& a, const Point1& b) {
  const Complex inner = b.dot(a);  // conj(b) . a
  const Complex phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : Complex(1.0);
  const Point1 m = a + phase * b;
  return m.norm() > 0.0 ? Point1(m / m.norm()) : a;
}

// Orthonormal points p, q spanning the line, built from the ratios c_i / c_k with
// |c_k| largest so that they depend on the line only and not on its scale.
std::pair<Vector3c, Vector3c> line_basis(const ProjLine& line) {
  const Vector3c& c = line.covector();
  int k = 0;
  for (int v = 1; v < 3; ++v)
    if (std::abs(c(v)) > std::abs(c(k))) k = v;
  const int i = (k + 1) % 3, j = (k + 2) % 3;
  Vector3c u = Vector3c::Zero(), w = Vector3c::Zero();
  u(i) = 1.0;
  u(k) = -c(i) / c(k);
  w(j) = 1.0;
  w(k) = -c(j) / c(k);
  const Vector3c p = u.normalized();
  return {p, (w - p.dot(w) * p).normalized()};
}

Binary restrict_linear(const Vector3c& form, const Vector3c& p, const Vector3c& q) {
  return {form.cwiseProduct(p).sum(), form.cwiseProduct(q).sum()};
}

void require_nondegenerate(const BinaryQuartic& r, double scale) {
  double largest = 0.0;
  for (const Complex& c : r.coeffs) largest = std::max(largest, std::abs(c));
  if (!(largest > 1e-14 * scale)) throw DegenerateInputError("restrict_to_line: the quartic vanishes on the line");
}

BitangencyReport check_restricted(const BinaryQuartic& restricted, const ProjLine& line, double tol) {
  const auto& b = restricted.coeffs;
  const double norm_b = bombieri_norm(b);

  const std::vector<Point1> roots = binary_roots(b);

  // The pairing of four roots into two clusters with the tightest worst cluster.
  static constexpr int kPairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  int best = 0;
  double best_radius = std::numeric_limits<double>::infinity();
  for (int p = 0; p < 3; ++p) {
    const auto& ix = kPairings[p];
    const double r = std::max(chordal(roots[ix[0]], roots[ix[1]]), chordal(roots[ix[2]], roots[ix[3]]));
    if (r < best_radius) {
      best_radius = r;
      best = p;
    }
  }
  const auto& ix = kPairings[best];
  const Point1 c1 = centre(roots[ix[0]], roots[ix[1]]);
  const Point1 c2 = centre(roots[ix[2]], roots[ix[3]]);

  // g = l1 l2 with l(s, t) = t0 s - s0 t vanishing at (s0, t0); G = g^2.
  const Binary g = multiply({c1(1), -c1(0)}, {c2(1), -c2(0)});
  const Binary g2 = multiply(g, g);
  std::array<Complex, 5> big_g;
  std::copy(g2.begin(), g2.end(), big_g.begin());
  const double norm_g = bombieri_norm(big_g);
  const Complex scale = norm_g > 0.0 ? bombieri_inner(b, big_g) / (norm_g * norm_g) : Complex(0.0);
  std::array<Complex, 5> diff;
  for (int k = 0; k < 5; ++k) diff[k] = b[k] - scale * big_g[k];

  BitangencyReport report{line, false, false, {}};
  report.residual = bombieri_norm(diff) / norm_b;
  report.cluster_radius = best_radius;
  report.separation = chordal(c1, c2);
  report.is_bitangent = report.residual <= tol;
  report.near_flex = report.separation <= 10.0 * report.cluster_radius;
  for (const Point1& c : {c1, c2}) {
    const Vector3c x = c(0) * restricted.p + c(1) * restricted.q;
    report.contact_points.push_back(x / x.norm());
  }
  return report;
}

}  // namespace

BinaryQuartic restrict_to_line(const QuarticCurve& curve, const ProjLine& line) {
  BinaryQuartic out;
  std::tie(out.p, out.q) = line_basis(line);
  out.coeffs.fill(0.0);
  std::array<Binary, 3> linear;
  for (int v = 0; v < 3; ++v) linear[v] = {out.p(v), out.q(v)};
  const auto& mons = QuarticCurve::monomials();
  for (int i = 0; i < 15; ++i) {
    Binary term = {curve.coeffs()[i]};
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < mons[i][v]; ++e) term = multiply(term, linear[v]);
    for (int k = 0; k < 5; ++k) out.coeffs[k] += term[k];
  }
  require_nondegenerate(out, curve.max_abs_coeff());
  return out;
}

BinaryQuartic restrict_to_line(const RiemannModel& model, const ProjLine& line) {
  BinaryQuartic out;
  std::tie(out.p, out.q) = line_basis(line);
  std::array<Binary, 3> factors;
  for (int r = 0; r < 3; ++r)
    factors[r] = multiply(restrict_linear(Vector3c::Unit(r), out.p, out.q),
                          restrict_linear(model.xi[r].covector(), out.p, out.q));
  Binary s(3);
  for (int k = 0; k < 3; ++k) s[k] = factors[0][k] + factors[1][k] - factors[2][k];
  const Binary prod = multiply(factors[0], factors[1]);
  const Binary square = multiply(s, s);
  // Rounding is relative to the terms before they cancel.
  double scale = 0.0;
  for (int k = 0; k < 5; ++k) {
    out.coeffs[k] = 4.0 * prod[k] - square[k];
    scale = std::max({scale, 4.0 * std::abs(prod[k]), std::abs(square[k])});
  }
  require_nondegenerate(out, scale);
  return out;
}

BitangencyReport bitangency_check(const QuarticCurve& curve, const ProjLine& line, double tol) {
  return check_restricted(restrict_to_line(curve, line), line, tol);
}

BitangencyReport bitangency_check(const RiemannModel& model, const ProjLine& line, double tol) {
  return check_restricted(restrict_to_line(model, line), line, tol);
}

RandomTau random_admissible_tau(std::uint64_t seed, const TruncationPolicy& policy, int max_tries) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    Eigen::Matrix3d re, m;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) re(i, j) = re(j, i) = uniform(rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = normal(rng);
    const Eigen::Matrix3d im = m * m.transpose() + 0.5 * Eigen::Matrix3d::Identity();
    Matrix3c raw;
    raw.real() = re;
    raw.imag() = im;
    PeriodMatrix tau(raw);
    const ThetaTable table(tau, policy);
    if (!special_locus_scan(table).empty()) continue;
    // Draws close to the boundary (one large eigenvalue of Im tau) leave the Weber
    // systems too ill-conditioned to solve in double precision.
    try {
      weber_coefficients(weber_example_system(), table);
    } catch (const SingularSystemError&) {
      continue;
    } catch (const SpecialLocusError&) {
      continue;
    }
    return {tau, attempt};
  }
  throw SpecialLocusError("random_admissible_tau: no admissible draw in " + std::to_string(max_tries) +
                          " tries for seed " + std::to_string(seed));
}

}  // namespace tq
