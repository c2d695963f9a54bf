#pragma once

#include <optional>
#include <vector>

#include "theta_quartic/verify.hpp"
#include "theta_quartic/weber.hpp"

namespace tq {

struct PipelineConfig {
  /// Defaults to weber_example_system().
  std::optional<AronholdSystem> system;
  EpsilonSigns eps{1, 1, 1};
  TruncationPolicy policy;
  double tol = kDefaultBitangencyTolerance;
};

struct PipelineResult {
  AronholdFrame frame;
  QuarticCurve quartic;
  std::vector<LabelledLine> bitangents;  ///< 28, in all_bitangents order
  std::vector<BitangencyReport> reports;  ///< one per bitangent
  int pass = 0;
  int fail = 0;
  double max_residual = 0.0;
};

/// tau -> theta table -> Weber coefficients -> Riemann quartic -> 28 lines, each checked.
PipelineResult run_pipeline(const PeriodMatrix& tau, const PipelineConfig& config = {});
PipelineResult run_pipeline(const ThetaTable& table, const PipelineConfig& config = {});

}  // namespace tq
