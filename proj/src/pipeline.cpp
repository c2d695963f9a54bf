#include "theta_quartic/pipeline.hpp"

#include <algorithm>

namespace tq {

PipelineResult run_pipeline(const PeriodMatrix& tau, const PipelineConfig& config) {
  return run_pipeline(ThetaTable(tau, config.policy), config);
}

PipelineResult run_pipeline(const ThetaTable& table, const PipelineConfig& config) {
  const AronholdSystem system = config.system.value_or(weber_example_system());
  AronholdFrame frame = weber_coefficients(system, table, config.eps);
  QuarticCurve quartic = riemann_quartic(frame.xi);
  std::vector<LabelledLine> lines = all_bitangents(system, table, frame.phi);

  PipelineResult result{std::move(frame), std::move(quartic), std::move(lines), {}};
  result.reports.reserve(result.bitangents.size());
  for (const LabelledLine& l : result.bitangents) {
    BitangencyReport r = bitangency_check(RiemannModel{result.frame.xi}, l.line, config.tol);
    (r.is_bitangent ? result.pass : result.fail) += 1;
    result.max_residual = std::max(result.max_residual, r.residual);
    result.reports.push_back(std::move(r));
  }
  return result;
}

}  // namespace tq
