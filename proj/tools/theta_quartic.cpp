// theta_quartic: bitangents of a genus-3 quartic from its period matrix.
//
// Machine output (JSON) goes to stdout; human-readable tables go to stderr unless
// --json is given. Exit codes: 0 ok, 1 input error, 2 special locus, 3 invariant failure.

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "theta_quartic/errors.hpp"
#include "theta_quartic/json_io.hpp"
#include "theta_quartic/pipeline.hpp"
#include "theta_quartic/selftest.hpp"

namespace {

using namespace tq;
using json_io::json;

enum ExitCode { kOk = 0, kInputError = 1, kSpecialLocus = 2, kInvariantFailure = 3 };

struct RunConfig {
  std::string tau_path;
  double tail = 1e-15;
  double tol = kDefaultBitangencyTolerance;
  std::uint64_t seed = 1;
  std::string eps = "+1,+1,+1";
  std::optional<int> system_index;
  bool json_only = false;
  int samples = 5;
};

EpsilonSigns parse_eps(const std::string& text) {
  EpsilonSigns eps{};
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 3) throw InputError("--eps takes exactly three signs");
    if (item == "+1" || item == "1" || item == "+")
      eps[n++] = 1;
    else if (item == "-1" || item == "-")
      eps[n++] = -1;
    else
      throw InputError("--eps entries must be +1 or -1, got '" + item + "'");
  }
  if (n != 3) throw InputError("--eps takes exactly three signs");
  return eps;
}

TruncationPolicy policy_of(const RunConfig& cfg) {
  if (!(cfg.tail > 0.0 && cfg.tail <= 1e-6)) throw InputError("--tail must lie in (0, 1e-6]");
  TruncationPolicy p;
  p.target_tail = cfg.tail;
  return p;
}

AronholdSystem system_of(const RunConfig& cfg) {
  if (!cfg.system_index) return weber_example_system();
  const std::vector<AronholdSystem> all = enumerate_aronhold();
  const int i = *cfg.system_index;
  if (i < 0 || i >= static_cast<int>(all.size())) throw InputError("--system-index must lie in [0, 288)");
  return all[i];
}

PeriodMatrix tau_of(const RunConfig& cfg) {
  if (!cfg.tau_path.empty()) {
    if (cfg.tau_path == "-") return validate_tau(json_io::read_tau(std::cin));
    return validate_tau(json_io::read_tau_file(cfg.tau_path));
  }
  return random_admissible_tau(cfg.seed, policy_of(cfg)).tau;
}

PipelineConfig pipeline_config(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw InputError("--tol must be positive");
  return PipelineConfig{system_of(cfg), parse_eps(cfg.eps), policy_of(cfg), cfg.tol};
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string fmt(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.6e%+.6ei", z.real(), z.imag());
  return buf;
}

int cmd_classify(const RunConfig& cfg) {
  json forms = json::array();
  int even = 0, odd = 0;
  if (!cfg.json_only) std::cerr << "code  characteristic  arf  parity\n";
  for (QuadForm q : all_forms()) {
    const int a = arf(q);
    (a ? odd : even) += 1;
    const Characteristic m(q);
    forms.push_back({{"q", json_io::to_json(m)}, {"code", q.code()}, {"arf", a}, {"parity", a ? "odd" : "even"}});
    if (!cfg.json_only)
      std::cerr << std::setw(4) << q.code() << "  " << m.to_string() << "       " << a << "    " << (a ? "odd" : "even")
                << '\n';
  }
  if (!cfg.json_only) std::cerr << "even: " << even << "  odd: " << odd << '\n';
  emit({{"forms", forms}, {"even", even}, {"odd", odd}});
  return kOk;
}

json system_json(const AronholdSystem& s) {
  json out = json::array();
  for (QuadForm q : s.forms()) out.push_back(json_io::to_json(Characteristic(q)));
  return out;
}

int cmd_aronhold(const RunConfig& cfg) {
  if (cfg.system_index) {
    const AronholdSystem s = system_of(cfg);
    const DerivedForms d = derived_forms(s);
    json pairs = json::array(), triples = json::array();
    for (QuadForm q : d.pairs) pairs.push_back(json_io::to_json(Characteristic(q)));
    for (QuadForm q : d.triples) triples.push_back(json_io::to_json(Characteristic(q)));
    if (!cfg.json_only) {
      std::cerr << "system " << *cfg.system_index << ":";
      for (QuadForm q : s.forms()) std::cerr << ' ' << q.to_string();
      std::cerr << "\nq_S = " << d.sum.to_string() << '\n';
    }
    emit({{"index", *cfg.system_index},
          {"system", system_json(s)},
          {"sum", json_io::to_json(Characteristic(d.sum))},
          {"pairs", pairs},
          {"triples", triples}});
    return kOk;
  }
  const std::vector<AronholdSystem> all = enumerate_aronhold();
  json systems = json::array();
  for (std::size_t i = 0; i < all.size(); ++i) {
    systems.push_back(system_json(all[i]));
    if (!cfg.json_only) {
      std::cerr << std::setw(3) << i << ':';
      for (QuadForm q : all[i].forms()) std::cerr << ' ' << q.to_string();
      std::cerr << '\n';
    }
  }
  if (!cfg.json_only) std::cerr << all.size() << " Aronhold systems\n";
  emit({{"count", all.size()}, {"systems", systems}});
  return kOk;
}

void print_lines(const PipelineResult& r) {
  std::cerr << "label  form       is_bitangent  residual      line (normalized)\n";
  for (std::size_t i = 0; i < r.bitangents.size(); ++i) {
    const LabelledLine& l = r.bitangents[i];
    const BitangencyReport& rep = r.reports[i];
    const Vector3c& c = l.line.covector();
    std::cerr << std::left << std::setw(6) << l.label << ' ' << l.form.to_string() << "  " << std::setw(12)
              << (rep.is_bitangent ? "yes" : "NO") << std::right << "  " << std::scientific << std::setprecision(2)
              << rep.residual << "  (" << fmt(c(0)) << ", " << fmt(c(1)) << ", " << fmt(c(2)) << ")"
              << (rep.near_flex ? "  near-flex" : "") << '\n';
  }
  std::cerr << "pass " << r.pass << "/" << r.bitangents.size() << ", max residual " << r.max_residual << '\n';
}

int cmd_bitangents(const RunConfig& cfg) {
  const PipelineConfig pc = pipeline_config(cfg);
  const PipelineResult r = run_pipeline(tau_of(cfg), pc);
  json out = json_io::frame_to_json(r);
  out["verify"] = json_io::report_to_json(r);
  if (!cfg.json_only) print_lines(r);
  emit(out);
  return r.fail == 0 ? kOk : kInvariantFailure;
}

int cmd_quartic(const RunConfig& cfg) {
  const PipelineConfig pc = pipeline_config(cfg);
  const PeriodMatrix tau = tau_of(cfg);
  const ThetaTable table(tau, pc.policy);
  const AronholdFrame frame = weber_coefficients(*pc.system, table, pc.eps);
  const QuarticCurve f = riemann_quartic(frame.xi);
  json xi = json::array();
  for (const ProjLine& l : frame.xi) xi.push_back(json_io::to_json(l.covector()));
  if (!cfg.json_only) {
    std::cerr << "monomial    coefficient\n";
    for (int i = 0; i < 15; ++i) {
      const auto& e = QuarticCurve::monomials()[i];
      std::cerr << "X1^" << e[0] << " X2^" << e[1] << " X3^" << e[2] << "  " << fmt(f.coeffs()[i]) << '\n';
    }
  }
  emit({{"quartic", json_io::to_json(f)}, {"xi", xi}, {"a", json_io::to_json(frame.a)}, {"k", json_io::to_json(frame.k)}});
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const PipelineResult r = run_pipeline(tau_of(cfg), pipeline_config(cfg));
  if (!cfg.json_only) print_lines(r);
  emit(json_io::report_to_json(r));
  return r.fail == 0 ? kOk : kInvariantFailure;
}

int cmd_selftest(const RunConfig& cfg) {
  if (cfg.samples < 1) throw InputError("--samples must be at least 1");
  SelfTestConfig sc;
  sc.samples = cfg.samples;
  sc.seed = cfg.seed;
  sc.policy = policy_of(cfg);
  sc.bitangency_tol = cfg.tol;
  const std::vector<SelfTestCheck> checks = run_selftest(sc);
  json out = json::array();
  bool all = true;
  for (const SelfTestCheck& c : checks) {
    all = all && c.passed;
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}});
    if (!cfg.json_only)
      std::cerr << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(24) << c.name << std::right << c.detail
                << '\n';
  }
  emit({{"checks", out}, {"passed", all}});
  return all ? kOk : kInvariantFailure;
}

int cmd_random_tau(const RunConfig& cfg) {
  const RandomTau r = random_admissible_tau(cfg.seed, policy_of(cfg));
  json out = json_io::to_json(r.tau);
  out["seed"] = cfg.seed;
  out["attempts"] = r.attempts;
  if (!cfg.json_only) std::cerr << "tau (seed " << cfg.seed << ", " << r.attempts << " draw(s)):\n" << r.tau.tau() << '\n';
  emit(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bitangents of a genus-3 plane quartic from its period matrix via Weber's formula"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::optional<int> index;
  app.add_option("--tau", cfg.tau_path, "period matrix JSON file ('-' for stdin); random if omitted");
  app.add_option("--tail", cfg.tail, "truncation tail bound, in (0, 1e-6]");
  app.add_option("--tol", cfg.tol, "bitangency residual tolerance");
  app.add_option("--seed", cfg.seed, "seed for random period matrices");
  app.add_option("--eps", cfg.eps, "epsilon signs, e.g. +1,+1,-1");
  app.add_option("--system-index", index, "index into the 288 Aronhold systems (default: Weber's example)");
  app.add_flag("--json", cfg.json_only, "JSON on stdout only, no table on stderr");

  int (*handler)(const RunConfig&) = nullptr;
  auto sub = [&](const char* name, const char* help, int (*fn)(const RunConfig&)) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&handler, fn] { handler = fn; });
    return s;
  };
  sub("classify", "list the 64 quadratic forms with parity", cmd_classify);
  sub("aronhold", "enumerate Aronhold systems, or show one with --system-index", cmd_aronhold);
  sub("bitangents", "Weber coefficients, quartic, 28 bitangents and their verification", cmd_bitangents);
  sub("quartic", "Riemann-model quartic for the period matrix", cmd_quartic);
  sub("verify", "bitangency report for the 28 lines", cmd_verify);
  sub("selftest", "exact and numeric invariant suite", cmd_selftest)
      ->add_option("--samples", cfg.samples, "number of random period matrices");
  sub("random-tau", "random admissible period matrix", cmd_random_tau);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  cfg.system_index = index;

  try {
    return handler(cfg);
  } catch (const SpecialLocusError& e) {
    json err = {{"error", "special_locus"}, {"message", e.what()}, {"vanishing", e.vanishing()}};
    emit(err);
    std::cerr << "special locus: " << e.what() << '\n';
    return kSpecialLocus;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const TruncationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  }
}
