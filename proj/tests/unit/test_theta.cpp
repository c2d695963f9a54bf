#include <doctest.h>

#include <cstdlib>
#include <random>

#include "theta_quartic/errors.hpp"
#include "theta_quartic/theta.hpp"

using namespace tq;

namespace {

Matrix3c random_tau_raw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::normal_distribution<double> g;
  Eigen::Matrix3d a, m;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = u(rng);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
  Matrix3c t;
  t.real() = a;
  t.imag() = m * m.transpose() + 0.5 * Eigen::Matrix3d::Identity();
  return t;
}

Vector3c random_z(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Vector3c z;
  for (int i = 0; i < 3; ++i) z(i) = Complex(u(rng), u(rng));
  return z;
}

// Genus-1 series with characteristic [a|b], summed far past double precision.
Complex theta1(int a, int b, Complex t, Complex z) {
  Complex sum = 0.0;
  for (int n = -40; n <= 40; ++n) {
    const double k = n + a / 2.0;
    sum += std::exp(Complex(0, std::numbers::pi) * (k * k * t + 2.0 * k * (z + b / 2.0)));
  }
  return sum;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("period matrix validation") {
  const Matrix3c i3 = Complex(0, 1) * Matrix3c::Identity();
  CHECK_NOTHROW(PeriodMatrix{i3});

  Matrix3c bad = i3;
  bad(2, 2) = Complex(0, -1);
  try {
    PeriodMatrix{bad};
    FAIL("expected InvalidPeriodMatrix");
  } catch (const InvalidPeriodMatrix& e) {
    CHECK(e.reason() == InvalidPeriodMatrix::Reason::kNotPositiveDefinite);
  }

  Matrix3c asym = i3;
  asym(0, 1) = 1e-3;
  try {
    PeriodMatrix{asym};
    FAIL("expected InvalidPeriodMatrix");
  } catch (const InvalidPeriodMatrix& e) {
    CHECK(e.reason() == InvalidPeriodMatrix::Reason::kAsymmetric);
  }

  Matrix3c slight = i3;
  slight(0, 1) = 1e-13;
  const PeriodMatrix sym(slight);
  CHECK(sym.tau()(0, 1) == sym.tau()(1, 0));

  Matrix3c nan = i3;
  nan(1, 1) = Complex(std::nan(""), 1.0);
  CHECK_THROWS_AS(PeriodMatrix{nan}, InvalidPeriodMatrix);
}

TEST_CASE("diagonal tau factorizes into genus-1 series") {
  std::mt19937_64 rng(7);
  const Complex t[3] = {Complex(0.13, 0.9), Complex(-0.31, 1.4), Complex(0.42, 0.7)};
  Matrix3c tau = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i) tau(i, i) = t[i];
  const PeriodMatrix pm(tau);
  const Vector3c z = random_z(rng);
  for (QuadForm q : all_forms()) {
    const Characteristic m(q);
    Complex want = 1.0;
    for (int i = 0; i < 3; ++i) want *= theta1(m.mp()[i], m.mpp()[i], t[i], z(i));
    CHECK(rel(theta(m, pm, z), want) < 1e-10);
  }
}

TEST_CASE("tau = i I3 has the decomposable-locus zero") {
  const PeriodMatrix pm(Complex(0, 1) * Matrix3c::Identity());
  const Characteristic m({1, 1, 0}, {1, 1, 0});
  CHECK(m.parity() == 0);
  const ThetaTable table(pm);
  CHECK(std::abs(theta_const(m, pm)) < 1e-12 * table.even_scale());
  const auto vanishing = table.vanishing_even();
  CHECK(std::find(vanishing.begin(), vanishing.end(), m) != vanishing.end());
}

TEST_CASE("parity, reduction sign and vanishing at random tau") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int sample = 0; sample < 5; ++sample) {
    const PeriodMatrix pm(random_tau_raw(rng));
    const Vector3c z = random_z(rng);
    const ThetaTable table(pm);
    for (QuadForm q : all_forms()) {
      const Characteristic m(q);
      const Complex v = theta(m, pm, z);
      const int parity_sign = m.parity() ? -1 : 1;
      CHECK(rel(theta(m, pm, Vector3c(-z)), double(parity_sign) * v) < 1e-10);

      const Characteristic n({small(rng), small(rng), small(rng)}, {small(rng), small(rng), small(rng)});
      const int sign = e_int(dot(m.mp(), n.mpp()));
      CHECK(rel(theta(m + 2 * n, pm, z), double(sign) * v) < 1e-12);
      const ThetaGradient g = grad_theta0(m, pm);
      CHECK((grad_theta0(m + 2 * n, pm) - double(sign) * g).norm() <= 1e-12 * std::max(g.norm(), table.even_scale()));

      // Table lookups through integer lifts match direct evaluation.
      CHECK(std::abs(table.constant(m + 2 * n) - double(sign) * theta_const(m, pm)) <= 1e-12 * table.even_scale());
      if (is_odd(q)) {
        CHECK(std::abs(table.constant(q)) < 1e-10 * table.even_scale());
        CHECK(g.norm() > 1e-6 * table.even_scale());
      } else {
        CHECK(g.norm() < 1e-9 * table.even_scale());
        CHECK(std::abs(table.constant(q)) > 1e-8 * table.even_scale());
      }
    }
  }
}

TEST_CASE("gradient matches central finite differences") {
  std::mt19937_64 rng(23);
  const double h = 1e-5;
  for (int sample = 0; sample < 3; ++sample) {
    const PeriodMatrix pm(random_tau_raw(rng));
    for (QuadForm q : odd_forms()) {
      const Characteristic m(q);
      const ThetaGradient g = grad_theta0(m, pm);
      Vector3c fd;
      for (int i = 0; i < 3; ++i) {
        Vector3c e = Vector3c::Zero();
        e(i) = h;
        fd(i) = (theta(m, pm, e) - theta(m, pm, Vector3c(-e))) / (2 * h);
      }
      CHECK((fd - g).norm() / g.norm() < 1e-7);
    }
  }
}

TEST_CASE("theta_jet gradient matches finite differences away from zero") {
  std::mt19937_64 rng(29);
  const PeriodMatrix pm(random_tau_raw(rng));
  const Vector3c z = random_z(rng);
  const double h = 1e-5;
  for (QuadForm q : {QuadForm::from_code(0), QuadForm::from_code(63), QuadForm::from_code(21)}) {
    const Characteristic m(q);
    const ThetaJet jet = theta_jet(m, pm, z);
    CHECK(rel(jet.value, theta(m, pm, z)) < 1e-13);
    for (int i = 0; i < 3; ++i) {
      Vector3c e = Vector3c::Zero();
      e(i) = h;
      const Complex fd = (theta(m, pm, Vector3c(z + e)) - theta(m, pm, Vector3c(z - e))) / (2 * h);
      CHECK(std::abs(fd - jet.gradient(i)) / jet.gradient.norm() < 1e-7);
    }
  }
}

TEST_CASE("jacobian determinant is alternating") {
  std::mt19937_64 rng(31);
  const PeriodMatrix pm(random_tau_raw(rng));
  const auto odd = odd_forms();
  const Characteristic a(odd[0]), b(odd[5]), c(odd[11]);
  const Complex d = jacobian_det(a, b, c, pm);
  CHECK(rel(jacobian_det(b, a, c, pm), -d) < 1e-12);
  CHECK(rel(jacobian_det(a, c, b, pm), -d) < 1e-12);
  CHECK(rel(jacobian_det(c, a, b, pm), d) < 1e-12);
  CHECK(std::abs(jacobian_det(a, a, c, pm)) <= 1e-12 * std::abs(d));
  const ThetaTable table(pm);
  CHECK(rel(table.jacobian(odd[0], odd[5], odd[11]), d) < 1e-12);
}

TEST_CASE("addition formula") {
  std::mt19937_64 rng(37);
  const AronholdSystem sys = weber_example_system();
  const Characteristic c5(sys[4]), c6(sys[5]), c7(sys[6]);
  const std::array<Characteristic, 4> proof{c5 + c6 + c7, c5, c6, -c7};
  const auto n = addition_characteristics(proof);
  CHECK(n[0] == c5 + c6);
  CHECK(n[1] == c5 + c7);
  CHECK(n[2] == c6 + c7);
  CHECK(n[3] == Characteristic());

  std::uniform_int_distribution<int> small(-1, 2);
  for (int sample = 0; sample < 5; ++sample) {
    const PeriodMatrix pm(random_tau_raw(rng));
    const Vector3c z = random_z(rng);
    CHECK(addition_formula_residual(proof, Vector3c::Zero(), z, pm) < 1e-9);

    for (int trial = 0; trial < 2; ++trial) {
      std::array<Characteristic, 4> m;
      Characteristic sum;
      for (int i = 0; i < 3; ++i) {
        m[i] = Characteristic({small(rng), small(rng), small(rng)}, {small(rng), small(rng), small(rng)});
        sum = sum + m[i];
      }
      // Fourth entry fixes the parity of the total so every half-sum is integral.
      const Reduction r = reduce_characteristic(sum);
      m[3] = r.reduced + 2 * Characteristic({small(rng), small(rng), small(rng)}, {small(rng), small(rng), small(rng)});
      CHECK(addition_formula_residual(m, random_z(rng), random_z(rng), pm) < 1e-9);
    }

    std::array<Characteristic, 4> evens;
    const auto even = even_forms();
    for (int i = 0; i < 3; ++i) evens[i] = Characteristic(even[rng() % even.size()]);
    evens[3] = reduce_characteristic(evens[0] + evens[1] + evens[2]).reduced;
    if (evens[3].parity() == 0)
      CHECK(addition_formula_residual(evens, Vector3c::Zero(), Vector3c::Zero(), pm) < 1e-9);
  }

  const std::array<Characteristic, 4> odd_total{Characteristic({1, 0, 0}, {0, 0, 0}), Characteristic(), Characteristic(),
                                                Characteristic()};
  CHECK_THROWS_AS(addition_characteristics(odd_total), InputError);
}

TEST_CASE("transformation law") {
  std::mt19937_64 rng(41);
  const PeriodMatrix pm(random_tau_raw(rng));
  const Vector3c z = random_z(rng);
  CHECK(quasi_periodicity_residual(Characteristic(QuadForm::from_code(45)), {0, 0, 0}, {0, 0, 0}, pm, z) == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Characteristic q(QuadForm::from_code(static_cast<unsigned>(rng() % 64)));
    const std::array<int, 3> k{int(rng() % 2), int(rng() % 2), int(rng() % 2)};
    const std::array<int, 3> h{int(rng() % 2), int(rng() % 2), int(rng() % 2)};
    CHECK(quasi_periodicity_residual(q, k, h, pm, random_z(rng)) < 1e-9);
  }

  // A full period shift tau k composes two half shifts:
  // theta_m(z + tau k) = e(-k tau k - 2 k.z - k.m'') theta_m(z).
  for (int trial = 0; trial < 10; ++trial) {
    const Characteristic m(QuadForm::from_code(static_cast<unsigned>(rng() % 64)));
    const Eigen::Vector3d kd(double(rng() % 2), double(rng() % 2), double(rng() % 2 + (trial == 0)));
    const Vector3c k = kd.cast<Complex>();
    const Complex ktk = (k.transpose() * pm.tau() * k).value();
    const Complex kz = (k.transpose() * z).value();
    const Complex kb = kd.dot(Eigen::Vector3d(m.mpp()[0], m.mpp()[1], m.mpp()[2]));
    const Complex want = e(-ktk - 2.0 * kz - kb) * theta(m, pm, z);
    CHECK(rel(theta(m, pm, Vector3c(z + pm.tau() * k)), want) < 1e-8);
  }
}

TEST_CASE("truncation radius") {
  std::mt19937_64 rng(43);
  for (int sample = 0; sample < 3; ++sample) {
    const PeriodMatrix pm(random_tau_raw(rng));
    REQUIRE(pm.min_imag_eigenvalue() >= 0.3);
    const Vector3c z = random_z(rng);
    for (QuadForm q : {QuadForm::from_code(0), QuadForm::from_code(63), QuadForm::from_code(38)}) {
      const Characteristic m(q);
      TruncationPolicy wide;
      wide.radius = 2 * truncation_radius(m, pm, z, TruncationPolicy{});
      CHECK(rel(theta(m, pm, z, wide), theta(m, pm, z)) < 1e-12);
      const ThetaGradient g = grad_theta0(m, pm);
      CHECK((grad_theta0(m, pm, wide) - g).norm() <= 1e-12 * std::max(1.0, g.norm()));
    }
  }

  Matrix3c thin = Complex(0, 1) * Matrix3c::Identity();
  thin(2, 2) = Complex(0, 1e-6);
  const PeriodMatrix pm(thin);
  CHECK_THROWS_AS(theta_const(Characteristic(), pm), TruncationError);
}

TEST_CASE("theta table is independent of the thread count") {
  std::mt19937_64 rng(47);
  const PeriodMatrix pm(random_tau_raw(rng));
  ::setenv("THETA_QUARTIC_THREADS", "1", 1);
  const ThetaTable serial(pm);
  ::setenv("THETA_QUARTIC_THREADS", "4", 1);
  const ThetaTable threaded(pm);
  ::unsetenv("THETA_QUARTIC_THREADS");
  for (QuadForm q : all_forms()) {
    CHECK(serial.constant(q) == threaded.constant(q));
    CHECK(serial.gradient(q) == threaded.gradient(q));
  }
}
