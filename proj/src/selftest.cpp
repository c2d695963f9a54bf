#include "theta_quartic/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "theta_quartic/pipeline.hpp"

namespace tq {
namespace {

SelfTestCheck exact(std::string name, long got, long want) {
  std::ostringstream os;
  os << "got " << got << ", expected " << want;
  return {std::move(name), got == want, static_cast<double>(got), 0.0, os.str()};
}

SelfTestCheck bounded(std::string name, double worst, double tol) {
  std::ostringstream os;
  os << "max residual " << worst << " (tolerance " << tol << ")";
  return {std::move(name), worst < tol, worst, tol, os.str()};
}

Characteristic parse(const char* s) {
  // "abc|def"
  return Characteristic({s[0] - '0', s[1] - '0', s[2] - '0'}, {s[4] - '0', s[5] - '0', s[6] - '0'});
}

Vector3c random_z(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Vector3c z;
  for (int i = 0; i < 3; ++i) z(i) = Complex(u(rng), u(rng));
  return z;
}

}  // namespace

std::vector<SelfTestCheck> run_selftest(const SelfTestConfig& config) {
  std::vector<SelfTestCheck> checks;

  // Exact combinatorics.
  const std::array<QuadForm, 64> forms = all_forms();
  checks.push_back(exact("even_forms_count", std::count_if(forms.begin(), forms.end(), is_even), 36));
  checks.push_back(exact("odd_forms_count", std::count_if(forms.begin(), forms.end(), is_odd), 28));
  const std::vector<AronholdSystem> systems = enumerate_aronhold();
  checks.push_back(exact("aronhold_count", static_cast<long>(systems.size()), 288));
  long even_sums = 0;
  for (const AronholdSystem& s : systems) even_sums += is_even(s.sum());
  checks.push_back(exact("aronhold_sum_even", even_sums, 288));

  const AronholdSystem example = weber_example_system();
  {
    // rho_23 = rho_33 = -1, all other entries +1 (1-based).
    long mismatches = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int want = (j == 2 && i >= 1) ? -1 : 1;
        mismatches += weber_symbolic(example, i, j).rho != want;
      }
    checks.push_back(exact("example_rho_table", mismatches, 0));

    const WeberTerm a11 = weber_symbolic(example, 0, 0);
    const WeberTerm a22 = weber_symbolic(example, 1, 1);
    const WeberTerm a31 = weber_symbolic(example, 2, 0);
    const bool chars_ok = a11.numerator[0] == parse("100|001") && a11.numerator[1] == parse("000|101") &&
                          a11.denominator[0] == parse("101|000") && a11.denominator[1] == parse("001|100") &&
                          a22.numerator[0] == parse("000|010") && a22.numerator[1] == parse("110|001") &&
                          a22.denominator[0] == parse("011|100") && a22.denominator[1] == parse("101|111");
    checks.push_back(exact("example_characteristics", chars_ok ? 1 : 0, 1));
    checks.push_back(exact("example_phase_a11", a11.quarter_turns, 1));
    // The printed third row carries the opposite eps_3; compare the relative phase.
    const WeberTerm a32 = weber_symbolic(example, 2, 1);
    checks.push_back(exact("example_phase_a31", a31.quarter_turns % 2, 0));
    checks.push_back(exact("example_phase_a32_over_a31", (a32.quarter_turns - a31.quarter_turns + 4) % 4, 2));
  }

  // Numeric identity suite.
  double reduction = 0.0, odd_vanish = 0.0, even_grad = 0.0, addition = 0.0, jacobi = 0.0, k_norm = 0.0,
         cross = 0.0, bitangent = 0.0;
  long bitangent_pass = 0;
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> small(-2, 2);

  for (int s = 0; s < config.samples; ++s) {
    const PeriodMatrix tau = random_admissible_tau(config.seed + static_cast<std::uint64_t>(s), config.policy).tau;
    const ThetaTable table(tau, config.policy);
    const Vector3c z = random_z(rng);

    for (int trial = 0; trial < 8; ++trial) {
      const Characteristic m(QuadForm::from_code(static_cast<int>(rng() % 64)));
      const Characteristic n({small(rng), small(rng), small(rng)}, {small(rng), small(rng), small(rng)});
      const Characteristic shifted = m + 2 * n;
      const int sign = e_int(dot(m.mp(), n.mpp()));
      const Complex base = theta(m, tau, z, config.policy);
      reduction = std::max(reduction, std::abs(theta(shifted, tau, z, config.policy) - double(sign) * base) /
                                          std::max(std::abs(base), 1e-300));
    }

    for (QuadForm q : all_forms()) {
      if (is_odd(q))
        odd_vanish = std::max(odd_vanish, std::abs(table.constant(q)) / table.even_scale());
      else
        even_grad = std::max(even_grad, table.gradient(q).norm() / table.even_scale());
    }

    const AronholdSystem& sys = systems[rng() % systems.size()];
    const auto [q1, q2, q3, q4, q5, q6, q7] = sys.forms();
    const Characteristic c5(q5), c6(q6), c7(q7);
    addition = std::max(addition, addition_formula_residual({c5 + c6 + c7, c5, c6, -c7}, Vector3c::Zero(), z, tau,
                                                            config.policy));

    const std::array<QuadForm, 4> quad{q1, q2, q3, q4};
    for (const auto& completion : complete_4tuple(quad))
      jacobi = std::max(jacobi, jacobi_ratio(quad, completion, table).relative_error());

    // Frame-level checks use the pipeline's default system; other frames can be too
    // ill-conditioned for double precision when Im tau has a large eigenvalue.
    const PipelineResult run = run_pipeline(table, PipelineConfig{{}, {1, 1, 1}, config.policy, config.bitangency_tol});
    k_norm = std::max(k_norm, (run.frame.k - Vector3c::Ones()).cwiseAbs().maxCoeff());
    const Matrix3c dets = aronhold_coeffs_dets(run.frame.system, table);
    for (int i = 0; i < 3; ++i)
      cross = std::max(cross, projective_distance(Vector3c(run.frame.a.row(i).transpose()),
                                                  Vector3c(dets.row(i).transpose())));
    bitangent = std::max(bitangent, run.max_residual);
    bitangent_pass += run.pass;
  }

  checks.push_back(bounded("reduction_sign", reduction, 1e-10));
  checks.push_back(bounded("odd_constants_vanish", odd_vanish, 1e-10));
  checks.push_back(bounded("even_gradients_vanish", even_grad, 1e-9));
  checks.push_back(bounded("addition_formula", addition, 1e-9));
  checks.push_back(bounded("jacobi_ratio", jacobi, 1e-8));
  checks.push_back(bounded("k_normalization", k_norm, 1e-8));
  checks.push_back(bounded("determinant_rows", cross, 1e-8));
  checks.push_back(bounded("bitangency_residual", bitangent, config.bitangency_tol));
  checks.push_back(exact("bitangents_passing", bitangent_pass, 28L * config.samples));
  return checks;
}

}  // namespace tq
